// Dense exact linear algebra over a coefficient field: rref, rank,
// kernels, solving, and bases of subquotients (cycles mod boundaries).
#ifndef DOPKIT_LINALG_HPP
#define DOPKIT_LINALG_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dopkit/field.hpp"

namespace dopkit {

template <class F>
struct Mat {
  using Elem = typename F::Elem;
  int nr = 0, nc = 0;
  std::vector<Elem> a;

  Mat() = default;
  Mat(int r, int c, const F& K) : nr(r), nc(c), a(static_cast<size_t>(r) * c, K.zero()) {}

  Elem& at(int i, int j) { return a[static_cast<size_t>(i) * nc + j]; }
  const Elem& at(int i, int j) const { return a[static_cast<size_t>(i) * nc + j]; }

  std::vector<Elem> col(int j) const {
    std::vector<Elem> v;
    v.reserve(nr);
    for (int i = 0; i < nr; ++i) v.push_back(at(i, j));
    return v;
  }
  void set_col(int j, const std::vector<Elem>& v) {
    for (int i = 0; i < nr; ++i) at(i, j) = v[i];
  }
};

template <class F>
Mat<F> identity(int n, const F& K) {
  Mat<F> m(n, n, K);
  for (int i = 0; i < n; ++i) m.at(i, i) = K.one();
  return m;
}

template <class F>
Mat<F> mat_mul(const F& K, const Mat<F>& A, const Mat<F>& B) {
  if (A.nc != B.nr) throw std::invalid_argument("mat_mul shape mismatch");
  Mat<F> C(A.nr, B.nc, K);
  for (int i = 0; i < A.nr; ++i)
    for (int k = 0; k < A.nc; ++k) {
      if (K.is_zero(A.at(i, k))) continue;
      for (int j = 0; j < B.nc; ++j)
        C.at(i, j) = K.add(C.at(i, j), K.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

// In-place reduced row echelon form; returns the pivot column of each
// pivot row in order.  Deterministic: scans columns left to right and
// rows top to bottom.
template <class F>
std::vector<int> rref(const F& K, Mat<F>& M) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < M.nc && row < M.nr; ++col) {
    int sel = -1;
    for (int i = row; i < M.nr; ++i)
      if (!K.is_zero(M.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != row)
      for (int j = 0; j < M.nc; ++j) std::swap(M.at(sel, j), M.at(row, j));
    typename F::Elem inv = K.inv(M.at(row, col));
    for (int j = col; j < M.nc; ++j) M.at(row, j) = K.mul(M.at(row, j), inv);
    for (int i = 0; i < M.nr; ++i) {
      if (i == row || K.is_zero(M.at(i, col))) continue;
      typename F::Elem f = M.at(i, col);
      for (int j = col; j < M.nc; ++j)
        M.at(i, j) = K.sub(M.at(i, j), K.mul(f, M.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
int rank(const F& K, Mat<F> M) {
  return static_cast<int>(rref(K, M).size());
}

// Columns of the returned matrix form a basis of ker(A), in the standard
// back-substitution parametrization (one column per free variable).
template <class F>
Mat<F> kernel_basis(const F& K, Mat<F> A) {
  std::vector<int> piv = rref(K, A);
  std::vector<bool> is_piv(A.nc, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < A.nc; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  Mat<F> Kb(A.nc, static_cast<int>(free_cols.size()), K);
  for (size_t f = 0; f < free_cols.size(); ++f) {
    int fc = free_cols[f];
    Kb.at(fc, static_cast<int>(f)) = K.one();
    for (size_t r = 0; r < piv.size(); ++r)
      Kb.at(piv[r], static_cast<int>(f)) = K.neg(A.at(static_cast<int>(r), fc));
  }
  return Kb;
}

// One solution of A x = b, or nullopt when inconsistent.
template <class F>
std::optional<std::vector<typename F::Elem>> solve(const F& K, const Mat<F>& A,
                                                   const std::vector<typename F::Elem>& b) {
  Mat<F> aug(A.nr, A.nc + 1, K);
  for (int i = 0; i < A.nr; ++i) {
    for (int j = 0; j < A.nc; ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.nc) = b[i];
  }
  std::vector<int> piv = rref(K, aug);
  for (int c : piv)
    if (c == A.nc) return std::nullopt;
  std::vector<typename F::Elem> x(A.nc, K.zero());
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(static_cast<int>(r), A.nc);
  return x;
}

// Basis of span(Z columns) modulo span(B columns); B is assumed to lie in
// the span of Z.  Representatives are picked greedily from Z's columns.
template <class F>
struct Subquotient {
  Mat<F> express;              // [B | chosen Z reps], used to express vectors
  int nb = 0;                  // columns of B inside `express`
  std::vector<int> rep_cols;   // indices into Z of the chosen representatives
  int dim() const { return static_cast<int>(rep_cols.size()); }
};

template <class F>
Subquotient<F> make_subquotient(const F& K, const Mat<F>& Z, const Mat<F>& B) {
  int N = Z.nr;
  Mat<F> comb(N, B.nc + Z.nc, K);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < B.nc; ++j) comb.at(i, j) = B.at(i, j);
    for (int j = 0; j < Z.nc; ++j) comb.at(i, B.nc + j) = Z.at(i, j);
  }
  Mat<F> work = comb;
  std::vector<int> piv = rref(K, work);
  Subquotient<F> q;
  q.nb = B.nc;
  for (int c : piv)
    if (c >= B.nc) q.rep_cols.push_back(c - B.nc);
  q.express = Mat<F>(N, B.nc + q.dim(), K);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < B.nc; ++j) q.express.at(i, j) = B.at(i, j);
    for (int j = 0; j < q.dim(); ++j) q.express.at(i, B.nc + j) = Z.at(i, q.rep_cols[j]);
  }
  return q;
}

// Coordinates of w in the subquotient's representative basis; w must lie
// in span(Z).  The boundary part of the solution is discarded.
template <class F>
std::vector<typename F::Elem> express_in_subquotient(const F& K, const Subquotient<F>& q,
                                                     const std::vector<typename F::Elem>& w) {
  auto sol = solve(K, q.express, w);
  if (!sol) throw std::logic_error("vector not in the subquotient's ambient span");
  return std::vector<typename F::Elem>(sol->begin() + q.nb, sol->end());
}

// ---------------------------------------------------------------------
// Sparse exact elimination.  Vectors are sorted (index, value) pairs with
// no explicit zeros.  Row-echelon accumulators keep memory proportional
// to the nonzeros actually produced, which is what makes the sheaf-sized
// Hom spaces tractable.
// ---------------------------------------------------------------------

template <class F>
using SparseVec = std::vector<std::pair<int, typename F::Elem>>;

// v -= c * w, both sorted sparse; result stays sorted and zero-free.
template <class F>
SparseVec<F> sparse_axpy(const F& K, SparseVec<F> v, const typename F::Elem& c,
                         const SparseVec<F>& w) {
  SparseVec<F> out;
  out.reserve(v.size() + w.size());
  size_t a = 0, b = 0;
  while (a < v.size() || b < w.size()) {
    if (b == w.size() || (a < v.size() && v[a].first < w[b].first)) {
      out.push_back(std::move(v[a++]));
    } else if (a == v.size() || w[b].first < v[a].first) {
      out.push_back({w[b].first, K.neg(K.mul(c, w[b].second))});
      ++b;
    } else {
      typename F::Elem e = K.sub(v[a].second, K.mul(c, w[b].second));
      if (!K.is_zero(e)) out.push_back({v[a].first, std::move(e)});
      ++a;
      ++b;
    }
  }
  return out;
}

// Row echelon built one vector at a time.  Each stored row is normalized
// to a unit leading (pivot) entry; insertion order is the only source of
// row choice, so results are deterministic for a fixed feed order.
template <class F>
class SparseEchelon {
 public:
  using Elem = typename F::Elem;

  explicit SparseEchelon(const F& K) : K_(&K) {}

  // Eliminate every position of v that has a pivot row; the residual is
  // zero exactly when v lies in the span.  Entries before the scan point
  // are never touched because each row starts at its own pivot.
  SparseVec<F> reduce(SparseVec<F> v) const {
    size_t s = 0;
    while (s < v.size()) {
      auto it = rows_.find(v[s].first);
      if (it == rows_.end()) {
        ++s;
        continue;
      }
      Elem c = v[s].second;
      v = sparse_axpy(*K_, std::move(v), c, it->second);
    }
    return v;
  }

  // Returns true when v enlarged the span.
  bool add(SparseVec<F> v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    Elem inv = K_->inv(v.front().second);
    for (auto& [i, e] : v) e = K_->mul(e, inv);
    int piv = v.front().first;
    rows_.emplace(piv, std::move(v));
    return true;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  bool has_pivot(int i) const { return rows_.count(i) != 0; }
  const std::map<int, SparseVec<F>>& rows() const { return rows_; }

 private:
  const F* K_;
  std::map<int, SparseVec<F>> rows_;  // pivot index -> normalized row
};

// Echelon that also remembers how each row was formed from the vectors
// fed to `add`, so later vectors can be expressed in terms of the added
// ones.  Meant for small spans (expressions are dense in the number of
// added vectors).
template <class F>
class SparseSolver {
 public:
  using Elem = typename F::Elem;

  explicit SparseSolver(const F& K) : K_(&K) {}

  // Residual of v and coefficients c with  v = residual + sum c_j * u_j
  // over the vectors u_j added so far.
  std::pair<SparseVec<F>, std::vector<Elem>> reduce_express(SparseVec<F> v) const {
    std::vector<Elem> removed(n_, K_->zero());
    size_t s = 0;
    while (s < v.size()) {
      auto it = rows_.find(v[s].first);
      if (it == rows_.end()) {
        ++s;
        continue;
      }
      Elem c = v[s].second;
      for (int j = 0; j < n_; ++j)
        if (!K_->is_zero(it->second.second[j]))
          removed[j] = K_->add(removed[j], K_->mul(c, it->second.second[j]));
      v = sparse_axpy(*K_, std::move(v), c, it->second.first);
    }
    return {std::move(v), std::move(removed)};
  }

  // Returns true when v was independent of the vectors added so far.
  bool add(SparseVec<F> v) {
    auto [r, removed] = reduce_express(std::move(v));
    if (r.empty()) return false;
    // r = v - sum removed_j u_j; normalized row = inv*r, so its expression
    // over the inputs (v becoming u_n) is  inv*e_n - inv*removed.
    Elem inv = K_->inv(r.front().second);
    for (auto& [i, e] : r) e = K_->mul(e, inv);
    for (auto& [piv, row] : rows_) row.second.push_back(K_->zero());
    std::vector<Elem> expr(static_cast<size_t>(n_) + 1, K_->zero());
    for (int j = 0; j < n_; ++j) expr[j] = K_->neg(K_->mul(inv, removed[j]));
    expr[n_] = inv;
    int piv = r.front().first;
    rows_.emplace(piv, std::make_pair(std::move(r), std::move(expr)));
    ++n_;
    return true;
  }

  int size() const { return n_; }

 private:
  const F* K_;
  int n_ = 0;
  // pivot -> (normalized row, expression of that row over added vectors)
  std::map<int, std::pair<SparseVec<F>, std::vector<Elem>>> rows_;
};

// Online Gaussian elimination: feed vectors one at a time, learn whether
// each one enlarges the span so far.
template <class F>
class RankTracker {
 public:
  using Elem = typename F::Elem;

  explicit RankTracker(const F& K) : K_(&K) {}

  // Returns true when v is independent of everything added before.
  bool add(std::vector<Elem> v) {
    for (;;) {
      int p = -1;
      for (size_t i = 0; i < v.size(); ++i)
        if (!K_->is_zero(v[i])) { p = static_cast<int>(i); break; }
      if (p < 0) return false;
      auto it = rows_.find(p);
      if (it == rows_.end()) {
        Elem inv = K_->inv(v[p]);
        for (auto& x : v) x = K_->mul(x, inv);
        rows_.emplace(p, std::move(v));
        return true;
      }
      Elem f = v[p];
      const auto& r = it->second;
      for (size_t i = p; i < v.size(); ++i) v[i] = K_->sub(v[i], K_->mul(f, r[i]));
    }
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  const F* K_;
  std::map<int, std::vector<Elem>> rows_;  // pivot position -> row
};

}  // namespace dopkit

#endif
