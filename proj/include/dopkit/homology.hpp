#ifndef DOPKIT_HOMOLOGY_HPP
#define DOPKIT_HOMOLOGY_HPP

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dopkit/linalg.hpp"
#include "dopkit/presentation.hpp"

namespace dopkit {

// Indices of a minimal generating subset of the submodule spanned by
// `gens` inside the module `amb`, by graded Nakayama: working degree by
// degree upward, a generator is kept exactly when its class in K/mK is
// new.  Deterministic (stable in the original order within each degree).
template <class F>
std::vector<int> minimal_generator_subset(const Presentation<F>& amb,
                                          const std::vector<ModVec<F>>& gens) {
  const auto& K = amb.alg().field();
  const auto& R = amb.ring();
  struct Item {
    int deg, idx;
  };
  std::vector<Item> items;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    auto d = amb.ctx().homogeneous_degree(gens[i]);
    if (!d) throw std::invalid_argument("minimal_generator_subset: inhomogeneous generator");
    items.push_back({*d, static_cast<int>(i)});
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.deg < b.deg; });

  std::vector<int> kept;
  size_t pos = 0;
  while (pos < items.size()) {
    int d = items[pos].deg;
    RankTracker<F> tracker(K);
    // span of (m*K)_d: positive-weight monomial multiples of lower-degree gens
    for (const auto& it : items) {
      if (it.deg >= d) break;
      for (const auto& m : R.monomials_of_weight(d - it.deg))
        tracker.add(amb.coords(amb.ctx().mul_term(gens[it.idx], m, K.one()), d));
    }
    for (; pos < items.size() && items[pos].deg == d; ++pos)
      if (tracker.add(amb.coords(gens[items[pos].idx], d)))
        kept.push_back(items[pos].idx);
  }
  return kept;
}

// Free resolution ... -> F_2 -> F_1 -> F_0 of a module over the algebra.
// maps[i] holds the columns of F_{i+1} -> F_i, written in F_i's
// coordinates with entries reduced mod the defining ideal.  Generator
// choices are minimal at every stage past F_0.
template <class F>
struct Resolution {
  std::shared_ptr<const Algebra<F>> alg;
  std::vector<std::vector<int>> degs;        // degs[i]: generator degrees of F_i
  std::vector<std::vector<ModVec<F>>> maps;  // maps[i]: columns of d_{i+1}
  bool complete = true;                      // every syzygy stage ran to completion
  int bound = 0;

  int nmaps() const { return static_cast<int>(maps.size()); }
  FreeCtx<F> ctx_at(int i) const { return FreeCtx<F>(&alg->ring(), degs[i]); }
  Presentation<F> free_at(int i) const {
    return Presentation<F>::free_module(alg, degs[i]);
  }
};

// Computes d_1 .. d_{nmaps}.  Needs an exact presentation; a truncated
// one cannot certify even its first syzygy stage.
template <class F>
Resolution<F> resolution(const Presentation<F>& M, int nmaps, int bound) {
  if (!M.is_exact())
    throw std::invalid_argument("resolution requires an exact presentation");
  Resolution<F> out;
  out.alg = M.alg_ptr();
  out.bound = bound;
  out.degs.push_back(M.gen_degs());

  for (int s = 0; s < nmaps; ++s) {
    Presentation<F> amb = out.free_at(s);
    std::vector<ModVec<F>> cand;
    if (s == 0) {
      for (const auto& r : M.rels()) {
        ModVec<F> v = amb.nf(r);
        if (!v.is_zero()) cand.push_back(std::move(v));
      }
    } else if (!out.maps[s - 1].empty()) {
      FreeCtx<F> prev = out.ctx_at(s - 1);
      std::vector<ModVec<F>> in = out.maps[s - 1];
      for (const auto& g : out.alg->ideal())
        for (int j = 0; j < prev.rank(); ++j) in.push_back(prev.from_poly(g, j));
      SyzygyResult<F> syz = syzygies(prev, in, bound);
      if (!syz.complete) out.complete = false;
      int ncols = static_cast<int>(out.maps[s - 1].size());
      for (const auto& row : syz.rows) {
        ModVec<F> v = amb.ctx().zero();
        for (int j = 0; j < ncols; ++j)
          v = amb.ctx().add(v, amb.ctx().from_poly(row[j], j));
        v = amb.nf(v);
        if (!v.is_zero()) cand.push_back(std::move(v));
      }
    }

    std::vector<int> keep = minimal_generator_subset(amb, cand);
    std::vector<ModVec<F>> cols;
    std::vector<int> cdegs;
    for (int idx : keep) {
      cols.push_back(cand[idx]);
      cdegs.push_back(*amb.ctx().homogeneous_degree(cand[idx]));
    }
    out.maps.push_back(std::move(cols));
    out.degs.push_back(std::move(cdegs));
  }
  return out;
}

// Substitute e_j -> cols[j]; v lives in a free module with rank(cols)
// components, the result in tgt's.
template <class F>
ModVec<F> substitute(const FreeCtx<F>& tgt, const std::vector<ModVec<F>>& cols,
                     const ModVec<F>& v) {
  ModVec<F> out = tgt.zero();
  for (const auto& t : v.t) out = tgt.add(out, tgt.mul_term(cols[t.comp], t.m, t.c));
  return out;
}

// Membership and expression in the R-submodule of a free module generated
// by `cols` (the defining ideal is factored in automatically).
template <class F>
class SubmoduleSolver {
 public:
  SubmoduleSolver(const Algebra<F>& alg, const FreeCtx<F>& ctx,
                  const std::vector<ModVec<F>>& cols, int bound)
      : ncols_(static_cast<int>(cols.size())), ctx_(ctx), gb_(build(alg, ctx, cols, bound)) {}

  // Coefficients on the original columns, or nullopt when v is outside.
  std::optional<std::vector<Poly<F>>> express(const ModVec<F>& v) const {
    if (!v.is_zero()) {
      int d = ctx_.term_degree(v.lt().m, v.lt().comp);
      if (d > gb_.certified && !gb_.complete) throw DegreeBoundTooSmall(d);
    }
    auto e = gb_.express_over_inputs(v);
    if (!e) return std::nullopt;
    e->resize(ncols_);
    return e;
  }

  bool contains(const ModVec<F>& v) const { return express(v).has_value(); }

 private:
  static GB<F> build(const Algebra<F>& alg, const FreeCtx<F>& ctx,
                     std::vector<ModVec<F>> cols, int bound) {
    for (const auto& g : alg.ideal())
      for (int j = 0; j < ctx.rank(); ++j) cols.push_back(ctx.from_poly(g, j));
    return buchberger(ctx, cols, bound, true);
  }

  int ncols_;
  FreeCtx<F> ctx_;
  GB<F> gb_;
};

// Chain lift of a module map through two resolutions: f0 gives the map
// F_0(A) -> F_0(B) on generators; returns stages 0..nstages with
// f_i d^A_{i+1} = d^B_{i+1} f_{i+1}.
template <class F>
std::vector<std::vector<ModVec<F>>> lift_through(const Resolution<F>& RA,
                                                 const Resolution<F>& RB,
                                                 std::vector<ModVec<F>> f0, int nstages,
                                                 int bound) {
  if (RA.nmaps() < nstages || RB.nmaps() < nstages)
    throw std::invalid_argument("lift_through: resolutions too short");
  std::vector<std::vector<ModVec<F>>> fs;
  fs.push_back(std::move(f0));
  for (int i = 0; i < nstages; ++i) {
    FreeCtx<F> ctxB = RB.ctx_at(i);
    FreeCtx<F> ctxB1 = RB.ctx_at(i + 1);
    int need = bound;
    std::vector<ModVec<F>> imgs;
    for (const auto& colA : RA.maps[i]) {
      ModVec<F> w = substitute(ctxB, fs[i], colA);
      if (!w.is_zero())
        need = std::max(need, ctxB.term_degree(w.lt().m, w.lt().comp));
      imgs.push_back(std::move(w));
    }
    SubmoduleSolver<F> solver(*RA.alg, ctxB, RB.maps[i], need);
    std::vector<ModVec<F>> next;
    for (const auto& w : imgs) {
      auto c = solver.express(w);
      if (!c) throw std::logic_error("lift_through: image misses the next stage");
      ModVec<F> col = ctxB1.zero();
      for (size_t j = 0; j < c->size(); ++j)
        col = ctxB1.add(col, ctxB1.from_poly((*c)[j], static_cast<int>(j)));
      next.push_back(std::move(col));
    }
    fs.push_back(std::move(next));
  }
  return fs;
}

// Matrix of Hom(G, N)_k -> Hom(Fsrc, N)_k, phi -> phi o u, where
// u: Fsrc -> G has the given columns.  Row blocks run over Fsrc
// generators (N-basis at k + src_degs[l]); column blocks over G
// generators (N-basis at k + tgt_degs[j]).
template <class F>
Mat<F> hom_precompose_matrix(const Presentation<F>& N, int k,
                             const std::vector<int>& src_degs,
                             const std::vector<int>& tgt_degs,
                             const std::vector<ModVec<F>>& ucols) {
  const auto& K = N.alg().field();
  std::vector<int> row_off(src_degs.size() + 1, 0);
  for (size_t l = 0; l < src_degs.size(); ++l)
    row_off[l + 1] = row_off[l] + N.hilbert(k + src_degs[l]);
  int ncols = 0;
  for (int dj : tgt_degs) ncols += N.hilbert(k + dj);

  Mat<F> out(row_off.back(), ncols, K);
  int c = 0;
  for (size_t j = 0; j < tgt_degs.size(); ++j) {
    for (const auto& beta : N.basis(k + tgt_degs[j])) {
      for (size_t l = 0; l < ucols.size(); ++l) {
        ModVec<F> v = N.ctx().zero();
        for (const auto& t : ucols[l].t) {
          if (t.comp != static_cast<int>(j)) continue;
          v = N.ctx().add(v, N.ctx().term(mul(t.m, beta.first), beta.second, t.c));
        }
        if (v.is_zero()) continue;
        auto coords = N.coords(v, k + src_degs[l]);
        for (size_t r = 0; r < coords.size(); ++r)
          out.at(row_off[l] + static_cast<int>(r), c) = coords[r];
      }
      ++c;
    }
  }
  return out;
}

// Sparse column generator for the same map as hom_precompose_matrix, with
// the basis bookkeeping hoisted out of the per-column path.  Column c is
// the image of the basis homomorphism indexed by (block j over tgt_degs,
// then N-basis position), in the dense version's row layout.
template <class F>
class HomPrecomposeCols {
 public:
  using Elem = typename F::Elem;

  HomPrecomposeCols(const Presentation<F>& N, int k, const std::vector<int>& src_degs,
                    const std::vector<int>& tgt_degs, const std::vector<ModVec<F>>& ucols)
      : N_(&N), ucols_(&ucols) {
    for (int d : src_degs) {
      src_deg_.push_back(k + d);
      row_off_.push_back(nrows_);
      src_idx_.emplace_back(N, k + d);
      nrows_ += src_idx_.back().dim();
    }
    for (int d : tgt_degs) {
      tgt_basis_.push_back(N.basis(k + d));
      col_off_.push_back(ncols_);
      ncols_ += static_cast<int>(tgt_basis_.back().size());
    }
  }

  int nrows() const { return nrows_; }
  int ncols() const { return ncols_; }

  SparseVec<F> col(int c) const {
    size_t j = 0;
    while (j + 1 < col_off_.size() && col_off_[j + 1] <= c) ++j;
    const auto& beta = tgt_basis_[j][static_cast<size_t>(c - col_off_[j])];
    SparseVec<F> out;
    for (size_t l = 0; l < ucols_->size() && l < src_idx_.size(); ++l) {
      ModVec<F> v = N_->ctx().zero();
      for (const auto& t : (*ucols_)[l].t) {
        if (t.comp != static_cast<int>(j)) continue;
        v = N_->ctx().add(v, N_->ctx().term(mul(t.m, beta.first), beta.second, t.c));
      }
      if (!v.is_zero()) src_idx_[l].append_coords(v, row_off_[l], out);
    }
    return out;
  }

 private:
  // Lookup table from basis elements of N at one degree to their position.
  class BasisIndex {
   public:
    BasisIndex(const Presentation<F>& N, int d) : N_(&N) {
      auto bas = N.basis(d);
      for (size_t i = 0; i < bas.size(); ++i) idx_.emplace(bas[i], static_cast<int>(i));
    }
    int dim() const { return static_cast<int>(idx_.size()); }
    // Appends the nonzero coordinates of nf(v), shifted by off.  Terms of a
    // normal form are sorted descending in the module order, the same order
    // basis() uses, so appended indices come out ascending.
    void append_coords(const ModVec<F>& v, int off, SparseVec<F>& out) const {
      ModVec<F> r = N_->nf(v);
      for (const auto& t : r.t) {
        auto it = idx_.find({t.m, t.comp});
        if (it == idx_.end())
          throw std::logic_error("append_coords: normal form term outside standard basis");
        out.push_back({off + it->second, t.c});
      }
    }

   private:
    const Presentation<F>* N_;
    std::map<std::pair<Monomial, int>, int> idx_;
  };

  const Presentation<F>* N_;
  const std::vector<ModVec<F>>* ucols_;
  int nrows_ = 0, ncols_ = 0;
  std::vector<int> src_deg_, row_off_, col_off_;
  std::vector<BasisIndex> src_idx_;
  std::vector<std::vector<std::pair<Monomial, int>>> tgt_basis_;
};

// Column-wise sparse elimination that keeps, for every fed column, its
// expression over the original columns; a column that dies hands over a
// sparse kernel vector.  Feed order fixes everything, so the output is
// deterministic.
template <class F>
class KernelCollector {
 public:
  using Elem = typename F::Elem;

  explicit KernelCollector(const F& K) : K_(&K) {}

  void add(SparseVec<F> col) {
    SparseVec<F> expr{{fed_, K_->one()}};
    size_t s = 0;
    while (s < col.size()) {
      auto it = rows_.find(col[s].first);
      if (it == rows_.end()) {
        ++s;
        continue;
      }
      Elem c = col[s].second;
      col = sparse_axpy(*K_, std::move(col), c, it->second.first);
      expr = sparse_axpy(*K_, std::move(expr), c, it->second.second);
    }
    if (col.empty()) {
      kers_.push_back(std::move(expr));
    } else {
      Elem inv = K_->inv(col.front().second);
      for (auto& [i, e] : col) e = K_->mul(e, inv);
      for (auto& [i, e] : expr) e = K_->mul(e, inv);
      int piv = col.front().first;
      rows_.emplace(piv, std::make_pair(std::move(col), std::move(expr)));
    }
    ++fed_;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  std::vector<SparseVec<F>>& kernels() { return kers_; }

 private:
  const F* K_;
  int fed_ = 0;
  std::map<int, std::pair<SparseVec<F>, SparseVec<F>>> rows_;  // pivot -> (col, expr)
  std::vector<SparseVec<F>> kers_;
};

// One graded piece of Ext^i(M, N): cocycles modulo coboundaries inside
// Hom(F_i, N)_k, held as sparse echelons.  Valid while the field object
// (owned by N's algebra) is alive.
template <class F>
struct ExtPiece {
  int amb = 0;                         // dim Hom(F_i, N)_k
  SparseEchelon<F> bnd;                // row space of the coboundaries
  SparseSolver<F> reps;                // span of the chosen representatives
  std::vector<SparseVec<F>> rep_vecs;  // ambient coords of the basis classes

  explicit ExtPiece(const F& K) : bnd(K), reps(K) {}
  int dim() const { return static_cast<int>(rep_vecs.size()); }

  // Coordinates of the class of w in the representative basis; w must be
  // a cocycle (its class must lie in the span of the basis).
  std::vector<typename F::Elem> express(const F& K, SparseVec<F> w) const {
    auto r = bnd.reduce(std::move(w));
    auto [res, coeff] = reps.reduce_express(std::move(r));
    if (!res.empty()) throw std::logic_error("vector is not a cocycle class in the piece");
    (void)K;
    return coeff;
  }
};

// Graded pieces of Ext^i(M, N) over a window of internal degrees, kept as
// subquotients of Hom(F_i, N)_k so induced maps can be pushed through.
template <class F>
struct ExtSheet {
  int i = 0, lo = 0, hi = -1;
  std::vector<int> dims;
  std::vector<ExtPiece<F>> sq;

  int dim_at(int k) const { return dims[k - lo]; }
  const ExtPiece<F>& sq_at(int k) const { return sq[k - lo]; }
};

template <class F>
ExtSheet<F> ext_sheet(const Resolution<F>& R, const Presentation<F>& N, int i, int lo,
                      int hi) {
  if (R.nmaps() < i + 1)
    throw std::invalid_argument("ext_sheet: resolution too short");
  if (!R.complete) throw DegreeBoundTooSmall(R.bound + 1);
  const auto& K = N.alg().field();
  ExtSheet<F> out;
  out.i = i;
  out.lo = lo;
  out.hi = hi;
  for (int k = lo; k <= hi; ++k) {
    // kernel of (d_{i+1})^* : Hom(F_i, N)_k -> Hom(F_{i+1}, N)_k
    HomPrecomposeCols<F> up(N, k, R.degs[i + 1], R.degs[i], R.maps[i]);
    KernelCollector<F> kc(K);
    for (int c = 0; c < up.ncols(); ++c) kc.add(up.col(c));

    ExtPiece<F> piece(K);
    piece.amb = up.ncols();
    if (i > 0) {
      HomPrecomposeCols<F> bn(N, k, R.degs[i], R.degs[i - 1], R.maps[i - 1]);
      for (int c = 0; c < bn.ncols(); ++c) piece.bnd.add(bn.col(c));
    }
    for (auto& kf : kc.kernels()) {
      SparseVec<F> r = piece.bnd.reduce(kf);
      if (!r.empty() && piece.reps.add(std::move(r))) piece.rep_vecs.push_back(std::move(kf));
    }
    out.dims.push_back(piece.dim());
    out.sq.push_back(std::move(piece));
  }
  return out;
}

// Map Ext^i(B, N)_k -> Ext^i(A, N)_k induced by a chain lift g_i of a
// module map A -> B.  src/tgt degrees are the F_i generator degrees on
// the A and B sides respectively.
template <class F>
Mat<F> ext_induced_matrix(const ExtSheet<F>& from, const ExtSheet<F>& to,
                          const std::vector<int>& src_degs,
                          const std::vector<int>& tgt_degs,
                          const std::vector<ModVec<F>>& gi, const Presentation<F>& N,
                          int k) {
  const auto& K = N.alg().field();
  const auto& sf = from.sq_at(k);
  const auto& st = to.sq_at(k);
  Mat<F> out(st.dim(), sf.dim(), K);
  if (sf.dim() == 0 || st.dim() == 0) return out;
  // Columns of the precompose map, generated on demand: the image of each
  // representative only touches the columns in its support.
  HomPrecomposeCols<F> U(N, k, src_degs, tgt_degs, gi);
  std::map<int, SparseVec<F>> ucols;
  for (int t = 0; t < sf.dim(); ++t) {
    std::map<int, typename F::Elem> acc;
    for (const auto& [j, c] : sf.rep_vecs[t]) {
      auto it = ucols.find(j);
      if (it == ucols.end()) it = ucols.emplace(j, U.col(j)).first;
      for (const auto& [r, v] : it->second) {
        auto [a, fresh] = acc.emplace(r, K.mul(c, v));
        if (!fresh) a->second = K.add(a->second, K.mul(c, v));
      }
    }
    SparseVec<F> img;
    for (auto& [r, v] : acc)
      if (!K.is_zero(v)) img.push_back({r, std::move(v)});
    out.set_col(t, st.express(K, std::move(img)));
  }
  return out;
}

// Presentation of ker(phi) for a graded map between exactly presented
// modules, along with the inclusion of its generators into the source.
template <class F>
struct KernelData {
  Presentation<F> ker;
  std::vector<ModVec<F>> incl;  // generator j of ker as an element of src
  bool gens_complete = false;   // inclusion generates the whole kernel
};

template <class F>
KernelData<F> kernel_presentation(const GradedMap<F>& phi, int bound) {
  const Presentation<F>& M = phi.src();
  const Presentation<F>& N = phi.tgt();
  if (!M.is_exact() || !N.is_exact())
    throw std::invalid_argument("kernel_presentation requires exact presentations");

  // syzygies of [phi columns | relations of N], projected to the first block
  std::vector<ModVec<F>> in = phi.cols();
  for (const auto& r : N.full_rels()) in.push_back(r);
  SyzygyResult<F> syz = syzygies(N.ctx(), in, bound);

  int gM = M.ngens();
  std::vector<ModVec<F>> cand;
  for (const auto& row : syz.rows) {
    ModVec<F> v = M.ctx().zero();
    for (int j = 0; j < gM; ++j) v = M.ctx().add(v, M.ctx().from_poly(row[j], j));
    v = M.nf(v);
    if (!v.is_zero()) cand.push_back(std::move(v));
  }
  std::vector<int> keep = minimal_generator_subset(M, cand);
  std::vector<ModVec<F>> incl;
  std::vector<int> kdegs;
  for (int idx : keep) {
    incl.push_back(cand[idx]);
    kdegs.push_back(*M.ctx().homogeneous_degree(cand[idx]));
  }

  // relations among the kernel generators, modulo the source module
  std::vector<ModVec<F>> in2 = incl;
  for (const auto& r : M.full_rels()) in2.push_back(r);
  SyzygyResult<F> syz2 = syzygies(M.ctx(), in2, bound);
  FreeCtx<F> kctx(&M.ring(), kdegs);
  std::vector<ModVec<F>> rels;
  for (const auto& row : syz2.rows) {
    ModVec<F> v = kctx.zero();
    for (size_t j = 0; j < incl.size(); ++j)
      v = kctx.add(v, kctx.from_poly(row[j], static_cast<int>(j)));
    if (!v.is_zero()) rels.push_back(std::move(v));
  }

  KernelData<F> out{
      Presentation<F>(M.alg_ptr(), kdegs, std::move(rels),
                      syz2.complete ? kInfDeg : syz2.complete_through),
      std::move(incl), syz.complete && syz2.complete};
  return out;
}

}  // namespace dopkit

#endif
