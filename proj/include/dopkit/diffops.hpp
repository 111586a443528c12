// Differential operators D^n(M, N) between graded modules, computed as
// graded Hom out of the order-n principal parts of M.  Also: windowed
// operator actions with commutator-based order certification, residue
// (dual) operator tables, the D-simplicity probe, and operators linear
// over the subring of p^e-th powers.
#ifndef DOPKIT_DIFFOPS_HPP
#define DOPKIT_DIFFOPS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dopkit/homology.hpp"
#include "dopkit/pool.hpp"
#include "dopkit/pparts.hpp"

namespace dopkit {

// ---------------------------------------------------------------------
// Graded Hom cells
// ---------------------------------------------------------------------

// Basis of Hom_A(M, N)_k.  Coordinates: one block per generator of M,
// block j listing N's monomial basis at degree k + gen_deg(j).
template <class F>
struct HomCell {
  int k = 0;
  std::vector<int> src_degs;
  std::vector<int> block_off;  // size ngens+1, offsets into the coordinate rows
  Mat<F> basis;                // columns = a basis of the cell

  int dim() const { return basis.nc; }
};

template <class F>
HomCell<F> hom_cell(const Presentation<F>& M, const Presentation<F>& N, int k) {
  const auto& K = N.alg().field();
  HomCell<F> out;
  out.k = k;
  out.src_degs = M.gen_degs();
  out.block_off.assign(M.ngens() + 1, 0);
  for (int j = 0; j < M.ngens(); ++j)
    out.block_off[j + 1] = out.block_off[j] + N.hilbert(k + M.gen_deg(j));

  // constraints: phi kills the module relations (ideal rows act by zero
  // on N automatically)
  std::vector<ModVec<F>> rels;
  std::vector<int> rel_degs;
  for (const auto& r : M.rels()) {
    if (r.is_zero()) continue;
    rels.push_back(r);
    rel_degs.push_back(*M.ctx().homogeneous_degree(r));
  }
  Mat<F> C = hom_precompose_matrix(N, k, rel_degs, M.gen_degs(), rels);
  out.basis = kernel_basis(K, C);
  return out;
}

// phi(e_j) for the idx-th basis column, as elements of N.
template <class F>
std::vector<ModVec<F>> hom_values(const HomCell<F>& cell, const Presentation<F>& N, int idx) {
  std::vector<ModVec<F>> vals;
  auto col = cell.basis.col(idx);
  for (size_t j = 0; j < cell.src_degs.size(); ++j) {
    std::vector<typename F::Elem> blk(col.begin() + cell.block_off[j],
                                      col.begin() + cell.block_off[j + 1]);
    vals.push_back(N.from_coords(blk, cell.k + cell.src_degs[j]));
  }
  return vals;
}

// ---------------------------------------------------------------------
// Operator tables D^0 ⊆ D^1 ⊆ ... ⊆ D^order over a degree window
// ---------------------------------------------------------------------

template <class F>
class DiffOps {
 public:
  DiffOps(const Presentation<F>& M, Presentation<F> N, int order, int lo, int hi)
      : order_(order), lo_(lo), hi_(hi), M_(M), N_(std::move(N)) {
    if (order < 0 || lo > hi) throw std::invalid_argument("diff ops: bad order or window");
    // Cell computations are independent; results land in index-owned slots
    // so the table is identical for every worker count.
    pp_ = parallel_map<PrincipalParts<F>>(order + 1, [&](int n) { return principal_parts(M, n); });
    int w = hi - lo + 1;
    auto flat = parallel_map<HomCell<F>>((order + 1) * w, [&](int j) {
      return hom_cell(pp_[static_cast<size_t>(j / w)].mod, N_, lo + j % w);
    });
    for (int n = 0; n <= order; ++n)
      cells_.emplace_back(flat.begin() + static_cast<long>(n) * w,
                          flat.begin() + static_cast<long>(n + 1) * w);
  }

  int order() const { return order_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  const Presentation<F>& source() const { return M_; }
  const Presentation<F>& target() const { return N_; }
  const PrincipalParts<F>& parts(int n) const { return pp_[n]; }
  const HomCell<F>& cell(int n, int k) const { return cells_[n][k - lo_]; }
  int dim(int n, int k) const { return cell(n, k).dim(); }

  // values phi(e_{alpha,t}) of one basis operator
  std::vector<ModVec<F>> op_values(int n, int k, int idx) const {
    return hom_values(cell(n, k), N_, idx);
  }

  // delta(v) for v in M
  ModVec<F> apply_values(const std::vector<ModVec<F>>& vals, int n, const ModVec<F>& v) const {
    ModVec<F> img = pp_[n].universal(v);
    ModVec<F> out = N_.ctx().zero();
    for (const auto& t : img.t) out = N_.ctx().add(out, N_.ctx().mul_term(vals[t.comp], t.m, t.c));
    return N_.nf(out);
  }

  // The inclusion D^n ⊆ D^{n+1} given by precomposition with the
  // truncation: matrix from cell (n,k) coordinates to cell (n+1,k)
  // ambient coordinates.
  Mat<F> inclusion_matrix(int n, int k) const {
    GradedMap<F> tr = pp_[n + 1].truncation_to(pp_[n]);
    return hom_precompose_matrix(N_, k, pp_[n + 1].mod.gen_degs(), pp_[n].mod.gen_degs(),
                                 tr.cols());
  }

 private:
  int order_, lo_, hi_;
  Presentation<F> M_, N_;
  std::vector<PrincipalParts<F>> pp_;
  std::vector<std::vector<HomCell<F>>> cells_;
};

// ---------------------------------------------------------------------
// Windowed K-linear actions and commutator order certificates
// ---------------------------------------------------------------------

struct WindowTooNarrow : std::runtime_error {
  explicit WindowTooNarrow(const std::string& what) : std::runtime_error(what) {}
};

// A degree-homogeneous K-linear map M -> M recorded degree by degree:
// mats[d - lo] sends coordinates of M_d to coordinates of M_{d+deg}.
template <class F>
struct WindowedAction {
  int deg = 0, lo = 0, hi = -1;
  std::vector<Mat<F>> mats;

  bool empty_domain() const { return lo > hi; }
  const Mat<F>& at(int d) const { return mats[d - lo]; }

  bool is_zero(const F& K) const {
    for (const auto& m : mats)
      for (const auto& e : m.a)
        if (!K.is_zero(e)) return false;
    return true;
  }
};

// Build the windowed matrices of any graded-linear rule on M.
template <class F>
WindowedAction<F> windowed_action(const Presentation<F>& M, int deg, int lo, int hi,
                                  const std::function<ModVec<F>(const ModVec<F>&)>& f) {
  WindowedAction<F> out{deg, lo, hi, {}};
  const auto& K = M.alg().field();
  for (int d = lo; d <= hi; ++d) {
    auto bas = M.basis(d);
    Mat<F> m(M.hilbert(d + deg), static_cast<int>(bas.size()), K);
    for (size_t j = 0; j < bas.size(); ++j) {
      ModVec<F> img = f(M.ctx().term(bas[j].first, bas[j].second, K.one()));
      m.set_col(static_cast<int>(j), M.coords(M.nf(img), d + deg));
    }
    out.mats.push_back(std::move(m));
  }
  return out;
}

// Multiplication by the i-th variable.
template <class F>
WindowedAction<F> multiplication_action(const Presentation<F>& M, int i, int lo, int hi) {
  const auto& R = M.ring();
  return windowed_action<F>(M, R.weights()[i], lo, hi, [&](const ModVec<F>& v) {
    return M.ctx().mul_term(v, Monomial::var(i, 1), M.alg().field().one());
  });
}

template <class F>
WindowedAction<F> compose_actions(const F& K, const WindowedAction<F>& a,
                                  const WindowedAction<F>& b) {
  WindowedAction<F> out{a.deg + b.deg, std::max(b.lo, a.lo - b.deg),
                        std::min(b.hi, a.hi - b.deg), {}};
  for (int d = out.lo; d <= out.hi; ++d) out.mats.push_back(mat_mul(K, a.at(d + b.deg), b.at(d)));
  return out;
}

template <class F>
WindowedAction<F> subtract_actions(const F& K, const WindowedAction<F>& a,
                                   const WindowedAction<F>& b) {
  if (a.deg != b.deg) throw std::invalid_argument("windowed subtraction: degree mismatch");
  WindowedAction<F> out{a.deg, std::max(a.lo, b.lo), std::min(a.hi, b.hi), {}};
  for (int d = out.lo; d <= out.hi; ++d) {
    Mat<F> m = a.at(d);
    const Mat<F>& n = b.at(d);
    for (size_t t = 0; t < m.a.size(); ++t) m.a[t] = K.sub(m.a[t], n.a[t]);
    out.mats.push_back(std::move(m));
  }
  return out;
}

template <class F>
WindowedAction<F> commutator(const F& K, const WindowedAction<F>& a, const WindowedAction<F>& b) {
  return subtract_actions(K, compose_actions(K, a, b), compose_actions(K, b, a));
}

// True when every (n+1)-fold nested commutator of `op` with variable
// multiplications vanishes on the window — the defining filtration
// condition for order <= n.  Nested brackets shrink the usable window;
// if it closes before the check finishes, the window was too narrow.
template <class F>
bool bracket_order_check(const Presentation<F>& M, const WindowedAction<F>& op, int n) {
  const auto& K = M.alg().field();
  int nv = M.ring().nvars();
  struct Rec {
    const F* K;
    const Presentation<F>* M;
    int nv;
    bool ok = true;
    std::vector<WindowedAction<F>> mults;  // cache per variable over a wide window

    void go(const WindowedAction<F>& cur, int left, int minvar) {
      if (!ok) return;
      if (cur.empty_domain())
        throw WindowTooNarrow("bracket check: nested window closed; widen the degree window");
      if (cur.is_zero(*K)) return;  // all deeper brackets vanish on their windows
      if (left == 0) {
        ok = false;
        return;
      }
      for (int i = minvar; i < nv; ++i) {
        WindowedAction<F> mult = multiplication_action(*M, i, cur.lo, cur.hi + cur.deg);
        go(commutator(*K, cur, mult), left - 1, i);
        if (!ok) return;
      }
    }
  } rec{&K, &M, nv, true, {}};
  rec.go(op, n + 1, 0);
  return rec.ok;
}

// Smallest n <= cap with all (n+1)-fold brackets zero, or nullopt.
template <class F>
std::optional<int> certified_order(const Presentation<F>& M, const WindowedAction<F>& op,
                                   int cap) {
  for (int n = 0; n <= cap; ++n)
    if (bracket_order_check(M, op, n)) return n;
  return std::nullopt;
}

// Windowed matrices of one basis operator acting on its source module
// (requires the table's source and target to be the same presentation).
template <class F>
WindowedAction<F> operator_action(const DiffOps<F>& ops, int n, int k, int idx, int alo,
                                  int ahi) {
  auto vals = ops.op_values(n, k, idx);
  const Presentation<F>& M = ops.source();
  return windowed_action<F>(M, k, alo, ahi, [&ops, vals, n](const ModVec<F>& v) {
    return ops.apply_values(vals, n, v);
  });
}

// ---------------------------------------------------------------------
// Residue operators D^n(M, K) and the D-simplicity probe
// ---------------------------------------------------------------------

// The residue field K = A/A_+ as a cyclic module.
template <class F>
Presentation<F> residue_field(std::shared_ptr<const Algebra<F>> alg) {
  std::vector<Poly<F>> vars;
  for (int i = 0; i < alg->ring().nvars(); ++i) vars.push_back(alg->ring().var(i));
  return cyclic_quotient(std::move(alg), vars);
}

// dims of D^n(M, K) per degree; duality pairs these with the minimal
// generators of P^n(M) in the opposite degree.
template <class F>
std::vector<int> residue_operator_dims(const PrincipalParts<F>& pp, const Presentation<F>& K,
                                       int lo, int hi) {
  std::vector<int> dims;
  for (int k = lo; k <= hi; ++k) dims.push_back(hom_cell(pp.mod, K, k).dim());
  return dims;
}

template <class F>
struct SimplicityCell {
  int k = 0;
  int dim_ops = 0;      // D^n(R, R)_k
  int dim_residue = 0;  // D^n(R, K)_k
  int image_rank = 0;   // rank of post-composition with R -> K
  bool surjective() const { return image_rank == dim_residue; }
};

template <class F>
struct SimplicityReport {
  int order = 0, depth = 0;  // probe parameters (n, D)
  std::vector<SimplicityCell<F>> cells;
  bool simple_up_to_bound = true;
  int obstruction_degree = 0, obstruction_dim = 0;  // first failure if any
};

// Surjectivity of post-composition D^n(R,R) -> D^n(R,K) in degrees
// -D..0.  Surjectivity everywhere is the order-n, depth-D simplicity
// certificate; a failing cell is an obstruction.
template <class F>
SimplicityReport<F> d_simplicity_probe(std::shared_ptr<const Algebra<F>> alg, int n, int D) {
  const auto& K = alg->field();
  Presentation<F> R(alg, {0}, {});
  Presentation<F> res_field = residue_field(alg);
  PrincipalParts<F> pp = principal_parts(R, n);

  SimplicityReport<F> out;
  out.order = n;
  out.depth = D;
  for (int k = -D; k <= 0; ++k) {
    HomCell<F> ops = hom_cell(pp.mod, R, k);
    HomCell<F> res = hom_cell(pp.mod, res_field, k);
    RankTracker<F> tracker(K);
    int rank = 0;
    for (int idx = 0; idx < ops.dim(); ++idx) {
      auto vals = hom_values(ops, R, idx);
      // coordinates of (project to K) o phi in the residue cell layout
      std::vector<typename F::Elem> w;
      for (size_t j = 0; j < vals.size(); ++j) {
        auto cs = res_field.coords(res_field.nf(vals[j]), k + ops.src_degs[j]);
        w.insert(w.end(), cs.begin(), cs.end());
      }
      if (tracker.add(std::move(w))) ++rank;
    }
    SimplicityCell<F> cell{k, ops.dim(), res.dim(), rank};
    if (!cell.surjective() && out.simple_up_to_bound) {
      out.simple_up_to_bound = false;
      out.obstruction_degree = k;
      out.obstruction_dim = cell.dim_residue - cell.image_rank;
    }
    out.cells.push_back(cell);
  }
  return out;
}

// ---------------------------------------------------------------------
// Left and right module structures on operator cells
// ---------------------------------------------------------------------

// Left action of x_i: phi -> x_i . phi, block-diagonal multiplication on
// the target.  Maps ambient coordinates at k to ambient coordinates at
// k + weight(x_i).
template <class F>
Mat<F> left_action_matrix(const Presentation<F>& N, const std::vector<int>& src_degs, int k,
                          int i) {
  const auto& K = N.alg().field();
  int w = N.ring().weights()[i];
  std::vector<int> roff{0}, coff{0};
  for (int dj : src_degs) {
    coff.push_back(coff.back() + N.hilbert(k + dj));
    roff.push_back(roff.back() + N.hilbert(k + w + dj));
  }
  Mat<F> out(roff.back(), coff.back(), K);
  for (size_t j = 0; j < src_degs.size(); ++j) {
    auto bas = N.basis(k + src_degs[j]);
    for (size_t b = 0; b < bas.size(); ++b) {
      ModVec<F> v = N.ctx().term(bas[b].first, bas[b].second, K.one());
      v = N.nf(N.ctx().mul_term(v, Monomial::var(i, 1), K.one()));
      auto cs = N.coords(v, k + w + src_degs[j]);
      for (size_t r = 0; r < cs.size(); ++r)
        out.at(roff[j] + static_cast<int>(r), coff[j] + static_cast<int>(b)) = cs[r];
    }
  }
  return out;
}

// Right action of x_i: phi -> phi . x_i = phi o (right multiplication on
// the principal parts).  Same coordinate conventions as the left action.
template <class F>
Mat<F> right_action_matrix(const Presentation<F>& N, const PrincipalParts<F>& pp, int k, int i) {
  int w = pp.alg->ring().weights()[i];
  GradedMap<F> rm = pp.right_multiplication(i);
  std::vector<int> shifted = pp.mod.gen_degs();
  for (int& d : shifted) d += w;
  return hom_precompose_matrix(N, k, shifted, pp.mod.gen_degs(), rm.cols());
}

struct LeftRightRow {
  int k = 0;
  int dim = 0;
  int left_min = 0;
  int right_min = 0;
};

// Minimal generator counts per degree for the left and right structures
// of Hom(P^n(M), N) over a window.  Nakayama count: generators needed at
// degree k = dim_k minus the rank of the images of all variable actions
// from lower cells.  Valid when the window covers the support (cells
// below `lo` are treated as zero).
template <class F>
std::vector<LeftRightRow> left_right_structure(const Presentation<F>& N,
                                               const PrincipalParts<F>& pp, int lo, int hi) {
  const auto& K = N.alg().field();
  const auto& wts = N.ring().weights();
  std::vector<HomCell<F>> cells;
  for (int k = lo; k <= hi; ++k) cells.push_back(hom_cell(pp.mod, N, k));

  std::vector<LeftRightRow> rows;
  for (int k = lo; k <= hi; ++k) {
    const auto& cell = cells[k - lo];
    LeftRightRow row;
    row.k = k;
    row.dim = cell.dim();
    RankTracker<F> lt(K), rt(K);
    for (size_t i = 0; i < wts.size(); ++i) {
      int src = k - wts[i];
      if (src < lo || src > hi) continue;
      const auto& below = cells[src - lo];
      if (below.dim() == 0) continue;
      Mat<F> L = left_action_matrix(N, pp.mod.gen_degs(), src, static_cast<int>(i));
      Mat<F> Rm = right_action_matrix(N, pp, src, static_cast<int>(i));
      Mat<F> li = mat_mul(K, L, below.basis);
      Mat<F> ri = mat_mul(K, Rm, below.basis);
      for (int c = 0; c < li.nc; ++c) lt.add(li.col(c));
      for (int c = 0; c < ri.nc; ++c) rt.add(ri.col(c));
    }
    row.left_min = row.dim - lt.rank();
    row.right_min = row.dim - rt.rank();
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------
// Stabilization of the order filtration
// ---------------------------------------------------------------------

struct StabilizedTable {
  int lo = 0, hi = -1;
  std::vector<std::vector<int>> dims_by_order;  // [n][k - lo]
  bool stabilized = false;
  int stable_order = -1;  // first order of the triple plateau
};

// Cell dimensions of Hom(P^n(M), N) per order until three consecutive
// orders agree on the whole window (the inclusions D^n ⊆ D^{n+1} are
// injective, so equal dimensions mean equal spaces).
template <class F>
StabilizedTable stabilized_dims(const Presentation<F>& M, const Presentation<F>& N, int lo,
                                int hi, int nmax) {
  StabilizedTable out;
  out.lo = lo;
  out.hi = hi;
  for (int n = 0; n <= nmax; ++n) {
    PrincipalParts<F> pp = principal_parts(M, n);
    std::vector<int> dims;
    for (int k = lo; k <= hi; ++k) dims.push_back(hom_cell(pp.mod, N, k).dim());
    out.dims_by_order.push_back(std::move(dims));
    size_t s = out.dims_by_order.size();
    if (s >= 3 && out.dims_by_order[s - 1] == out.dims_by_order[s - 2] &&
        out.dims_by_order[s - 2] == out.dims_by_order[s - 3]) {
      out.stabilized = true;
      out.stable_order = static_cast<int>(s) - 3;
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Operators linear over the subring of p^e-th powers
// ---------------------------------------------------------------------

// Writes h = sum_s h_s(x^q) x^s with digits s < q componentwise;
// returns the list of (s, h_s) with h_s expressed in the plain variables
// (substitute x -> x^q afterwards via power_substitute).
template <class F>
std::vector<std::pair<Monomial, Poly<F>>> digit_decompose(const PolyRing<F>& R,
                                                          const Poly<F>& h, int q) {
  std::map<Monomial, Poly<F>> acc;
  for (const auto& [m, c] : h.t) {
    Monomial s = Monomial::unit(), d = Monomial::unit();
    for (int i = 0; i < R.nvars(); ++i) {
      s.e[i] = static_cast<std::uint8_t>(m.e[i] % q);
      d.e[i] = static_cast<std::uint8_t>(m.e[i] / q);
    }
    auto [it, _] = acc.try_emplace(s, R.zero());
    it->second = R.add(it->second, R.term(d, c));
  }
  std::vector<std::pair<Monomial, Poly<F>>> out;
  for (auto& [s, p] : acc)
    if (!p.is_zero()) out.push_back({s, std::move(p)});
  return out;
}

// p(x) -> p(x^q)
template <class F>
Poly<F> power_substitute(const PolyRing<F>& R, const Poly<F>& p, int q) {
  Poly<F> out = R.zero();
  for (const auto& [m, c] : p.t) {
    Monomial mq = Monomial::unit();
    for (int i = 0; i < R.nvars(); ++i) {
      int e = m.e[i] * q;
      if (e > 255) throw std::invalid_argument("power substitution overflows the exponent range");
      mq.e[i] = static_cast<std::uint8_t>(e);
    }
    out = R.add(out, R.term(mq, c));
  }
  return out;
}

// One degree-k cell of End_{R^q}(R): a basis of the maps determined by
// their values on the digit monomials x^s (s < q componentwise).
template <class F>
struct FrobeniusCell {
  int k = 0;
  std::vector<Monomial> digits;
  std::vector<int> digit_degs;
  std::vector<int> block_off;
  Mat<F> basis;

  int dim() const { return basis.nc; }
};

namespace detail {
inline void enumerate_digits(int nvars, int q, int pos, Monomial acc,
                             std::vector<Monomial>& out) {
  if (pos == nvars) {
    out.push_back(acc);
    return;
  }
  for (int e = 0; e < q; ++e) {
    acc.e[pos] = static_cast<std::uint8_t>(e);
    enumerate_digits(nvars, q, pos + 1, acc, out);
  }
}
}  // namespace detail

template <class F>
FrobeniusCell<F> frobenius_cell(const Algebra<F>& alg, int q, int k) {
  const auto& R = alg.ring();
  const auto& K = alg.field();
  FrobeniusCell<F> out;
  out.k = k;

  detail::enumerate_digits(R.nvars(), q, 0, Monomial::unit(), out.digits);
  std::sort(out.digits.begin(), out.digits.end(),
            [&](const Monomial& a, const Monomial& b) { return R.cmp_mono(a, b) < 0; });

  out.block_off.assign(out.digits.size() + 1, 0);
  for (size_t s = 0; s < out.digits.size(); ++s) {
    out.digit_degs.push_back(R.weight(out.digits[s]));
    out.block_off[s + 1] = out.block_off[s] + alg.hilbert(out.digit_degs[s] + k);
  }

  std::map<Monomial, int> digit_pos;
  for (size_t s = 0; s < out.digits.size(); ++s) digit_pos[out.digits[s]] = static_cast<int>(s);

  // constraints: for every defining relation g and digit x^r, the
  // decomposition x^r g = sum_s c_s(x^q) x^s forces
  // sum_s c_s(x^q) phi(x^s) = 0 in R.
  std::vector<Mat<F>> blocks;
  int total_rows = 0;
  for (const auto& g : alg.ideal()) {
    for (const auto& r : out.digits) {
      Poly<F> rg = R.mul_term(g, r, K.one());
      int cdeg = R.weight(rg.t.front().first) + k;
      if (alg.hilbert(cdeg) == 0) continue;  // constraint lands in a zero piece
      auto cb = alg.monomial_basis(cdeg);
      Mat<F> rowmat(static_cast<int>(cb.size()), out.block_off.back(), K);
      for (const auto& [s, hs] : digit_decompose(R, rg, q)) {
        auto it = digit_pos.find(s);
        if (it == digit_pos.end()) throw std::logic_error("digit outside the expected range");
        int sp = it->second;
        Poly<F> cq = power_substitute(R, hs, q);
        auto vb = alg.monomial_basis(out.digit_degs[sp] + k);
        for (size_t b = 0; b < vb.size(); ++b) {
          Poly<F> prod = alg.nf(R.mul_term(cq, vb[b], K.one()));
          int col = out.block_off[sp] + static_cast<int>(b);
          size_t bi = 0;  // prod terms and cb are both sorted descending
          for (const auto& te : prod.t) {
            while (bi < cb.size() && !(cb[bi] == te.first)) ++bi;
            if (bi == cb.size()) throw std::logic_error("frobenius constraint outside basis");
            int ri = static_cast<int>(bi);
            rowmat.at(ri, col) = K.add(rowmat.at(ri, col), te.second);
          }
        }
      }
      total_rows += rowmat.nr;
      blocks.push_back(std::move(rowmat));
    }
  }

  Mat<F> C(total_rows, out.block_off.back(), K);
  int at = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.nr; ++i)
      for (int j = 0; j < b.nc; ++j) C.at(at + i, j) = b.at(i, j);
    at += b.nr;
  }
  out.basis = kernel_basis(K, C);
  return out;
}

// phi(x^s) values of one basis column.
template <class F>
std::vector<Poly<F>> frobenius_values(const FrobeniusCell<F>& cell, const Algebra<F>& alg,
                                      int idx) {
  const auto& R = alg.ring();
  std::vector<Poly<F>> vals;
  auto col = cell.basis.col(idx);
  for (size_t s = 0; s < cell.digits.size(); ++s) {
    auto bas = alg.monomial_basis(cell.digit_degs[s] + cell.k);
    Poly<F> v = R.zero();
    for (size_t b = 0; b < bas.size(); ++b)
      v = R.add(v, R.term(bas[b], col[cell.block_off[s] + static_cast<int>(b)]));
    vals.push_back(v);
  }
  return vals;
}

// Evaluate phi on an arbitrary element via digit decomposition.
template <class F>
Poly<F> frobenius_apply(const FrobeniusCell<F>& cell, const Algebra<F>& alg,
                        const std::vector<Poly<F>>& vals, int q, const Poly<F>& v) {
  const auto& R = alg.ring();
  std::map<Monomial, int> digit_pos;
  for (size_t s = 0; s < cell.digits.size(); ++s) digit_pos[cell.digits[s]] = static_cast<int>(s);
  Poly<F> out = R.zero();
  for (const auto& [s, hs] : digit_decompose(R, alg.nf(v), q)) {
    auto it = digit_pos.find(s);
    if (it == digit_pos.end()) throw std::logic_error("digit outside the expected range");
    out = R.add(out, R.mul(power_substitute(R, hs, q), vals[it->second]));
  }
  return alg.nf(out);
}

}  // namespace dopkit

#endif
