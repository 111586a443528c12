#ifndef DOPKIT_PRESENTATION_HPP
#define DOPKIT_PRESENTATION_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dopkit/algebra.hpp"
#include "dopkit/linalg.hpp"

namespace dopkit {

// Finitely presented graded module over an Algebra:
//   coker( ⊕ relations -> ⊕_j A(-gen_degs[j]) ).
// Internally everything lives over the ambient polynomial ring; the
// defining ideal contributes the rows g * e_j implicitly.
//
// complete_through: the given relation list is guaranteed to generate
// every relation of (weighted) degree <= complete_through.  Exact
// presentations use kInfDeg.  Queries above the horizon throw
// DegreeBoundTooSmall so callers can rebuild with a larger bound.
template <typename F>
class Presentation {
 public:
  using Elem = typename F::Elem;

  Presentation(std::shared_ptr<const Algebra<F>> alg, std::vector<int> gen_degs,
               std::vector<ModVec<F>> rels, int complete_through = kInfDeg)
      : alg_(std::move(alg)),
        ctx_(&alg_->ring(), gen_degs),
        gen_degs_(std::move(gen_degs)),
        rels_(std::move(rels)),
        horizon_(complete_through),
        cache_(std::make_shared<Cache>()) {
    for (const auto& r : rels_) {
      if (r.is_zero()) continue;
      if (!ctx_.homogeneous_degree(r))
        throw std::invalid_argument("presentation relation not homogeneous: " + ctx_.str(r));
    }
  }

  static Presentation free_module(std::shared_ptr<const Algebra<F>> alg,
                                  std::vector<int> gen_degs) {
    return Presentation(std::move(alg), std::move(gen_degs), {}, kInfDeg);
  }

  const Algebra<F>& alg() const { return *alg_; }
  std::shared_ptr<const Algebra<F>> alg_ptr() const { return alg_; }
  const FreeCtx<F>& ctx() const { return ctx_; }
  const PolyRing<F>& ring() const { return alg_->ring(); }
  int ngens() const { return static_cast<int>(gen_degs_.size()); }
  int gen_deg(int j) const { return gen_degs_[j]; }
  const std::vector<int>& gen_degs() const { return gen_degs_; }
  const std::vector<ModVec<F>>& rels() const { return rels_; }
  int complete_through() const { return horizon_; }
  bool is_exact() const { return horizon_ >= kInfDeg; }

  void require(int d) const {
    if (d > horizon_) throw DegreeBoundTooSmall(d);
  }

  // Relations together with the implicit ideal rows.
  std::vector<ModVec<F>> full_rels() const {
    std::vector<ModVec<F>> out = rels_;
    for (const auto& g : alg_->ideal())
      for (int j = 0; j < ngens(); ++j) out.push_back(ctx_.from_poly(g, j));
    return out;
  }

  // Groebner basis of the full relation module, certified to `bound` at least.
  std::shared_ptr<const GB<F>> gb(int bound) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->gb || (cache_->gb->certified < bound && !cache_->gb->complete))
      cache_->gb = std::make_shared<GB<F>>(buchberger(ctx_, full_rels(), bound, false));
    return cache_->gb;
  }

  // Monomial basis of M_d.
  std::vector<std::pair<Monomial, int>> basis(int d) const {
    require(d);
    std::vector<std::pair<Monomial, int>> out;
    bool any = false;
    for (int g : gen_degs_) any = any || d >= g;
    if (!any) return out;
    return gb(d)->std_monomials(d);
  }

  int hilbert(int d) const { return static_cast<int>(basis(d).size()); }

  ModVec<F> nf(const ModVec<F>& v) const {
    if (v.is_zero()) return v;
    int d = ctx_.term_degree(v.lt().m, v.lt().comp);
    require(d);
    return gb(d)->nf(v);
  }

  // Coordinates of v in basis(d); v must be homogeneous of degree d or zero.
  std::vector<Elem> coords(const ModVec<F>& v, int d) const {
    auto bas = basis(d);
    std::vector<Elem> out(bas.size(), alg_->field().zero());
    ModVec<F> r = nf(v);
    size_t bi = 0;
    for (const auto& t : r.t) {
      // both r and bas are sorted descending in the module order
      while (bi < bas.size() && !(bas[bi].first == t.m && bas[bi].second == t.comp)) ++bi;
      if (bi == bas.size())
        throw std::logic_error("coords: normal form term outside standard basis");
      out[bi] = t.c;
    }
    return out;
  }

  ModVec<F> from_coords(const std::vector<Elem>& c, int d) const {
    auto bas = basis(d);
    if (c.size() != bas.size()) throw std::invalid_argument("from_coords: size mismatch");
    ModVec<F> v = ctx_.zero();
    for (size_t i = 0; i < bas.size(); ++i)
      v = ctx_.add(v, ctx_.term(bas[i].first, bas[i].second, c[i]));
    return v;
  }

  // Column matrix whose columns are coords of the given vectors in degree d.
  Mat<F> coord_matrix(const std::vector<ModVec<F>>& vs, int d) const {
    Mat<F> m(hilbert(d), static_cast<int>(vs.size()), alg_->field());
    for (size_t j = 0; j < vs.size(); ++j) m.set_col(static_cast<int>(j), coords(vs[j], d));
    return m;
  }

  // dim (M / m M)_d by graded Nakayama: minimal generators needed in degree d.
  int min_gens(int d) const {
    int total = hilbert(d);
    if (total == 0) return 0;
    std::vector<ModVec<F>> img;
    for (int i = 0; i < ring().nvars(); ++i)
      for (const auto& b : basis(d - ring().weights()[i]))
        img.push_back(ctx_.term(mul(b.first, Monomial::var(i, 1)), b.second,
                                alg_->field().one()));
    Mat<F> m = coord_matrix(img, d);
    return total - rank(alg_->field(), m);
  }

  // Same module with degrees shifted: twist(a)_d = (this)_{a+d}.
  Presentation twist(int a) const {
    std::vector<int> gd = gen_degs_;
    for (int& g : gd) g -= a;
    int h = horizon_ >= kInfDeg ? kInfDeg : horizon_ - a;
    return Presentation(alg_, std::move(gd), rels_, h);
  }

 private:
  struct Cache {
    std::mutex mu;
    std::shared_ptr<GB<F>> gb;
  };

  std::shared_ptr<const Algebra<F>> alg_;
  FreeCtx<F> ctx_;
  std::vector<int> gen_degs_;
  std::vector<ModVec<F>> rels_;
  int horizon_;
  std::shared_ptr<Cache> cache_;
};

// Graded A-linear map M -> N of degree `deg`: generator j of M goes to
// cols[j], homogeneous of degree gen_deg_M(j) + deg in N.
template <typename F>
class GradedMap {
 public:
  GradedMap(Presentation<F> src, Presentation<F> tgt, std::vector<ModVec<F>> cols,
            int deg = 0)
      : src_(std::move(src)), tgt_(std::move(tgt)), cols_(std::move(cols)), deg_(deg) {
    if (static_cast<int>(cols_.size()) != src_.ngens())
      throw std::invalid_argument("graded map: one column per source generator");
    for (int j = 0; j < src_.ngens(); ++j) {
      if (cols_[j].is_zero()) continue;
      auto hd = tgt_.ctx().homogeneous_degree(cols_[j]);
      if (!hd || *hd != src_.gen_deg(j) + deg_)
        throw std::invalid_argument("graded map: column " + std::to_string(j) +
                                    " not homogeneous of expected degree");
    }
  }

  const Presentation<F>& src() const { return src_; }
  const Presentation<F>& tgt() const { return tgt_; }
  const std::vector<ModVec<F>>& cols() const { return cols_; }
  int deg() const { return deg_; }

  // Substitute e_j -> cols[j].
  ModVec<F> apply(const ModVec<F>& v) const {
    ModVec<F> out = tgt_.ctx().zero();
    for (const auto& t : v.t)
      out = tgt_.ctx().add(out, tgt_.ctx().mul_term(cols_[t.comp], t.m, t.c));
    return out;
  }

  // Checks the given relations of the source die in the target.  Rows coming
  // from the defining ideal are killed automatically since the target is a
  // module over the same algebra.
  bool well_defined() const {
    for (const auto& r : src_.rels())
      if (!tgt_.nf(apply(r)).is_zero()) return false;
    return true;
  }

  // Matrix of M_d -> N_{d+deg} in the standard monomial bases.
  Mat<F> matrix(int d) const {
    auto bas = src_.basis(d);
    Mat<F> m(tgt_.hilbert(d + deg_), static_cast<int>(bas.size()),
             src_.alg().field());
    for (size_t j = 0; j < bas.size(); ++j) {
      ModVec<F> img = apply(src_.ctx().term(bas[j].first, bas[j].second,
                                            src_.alg().field().one()));
      m.set_col(static_cast<int>(j), tgt_.coords(img, d + deg_));
    }
    return m;
  }

  GradedMap compose_after(const GradedMap& first) const {
    // this ∘ first : first.src -> this->tgt
    std::vector<ModVec<F>> c;
    for (const auto& col : first.cols()) c.push_back(apply(col));
    return GradedMap(first.src(), tgt_, std::move(c), deg_ + first.deg());
  }

  static GradedMap identity(const Presentation<F>& m) {
    std::vector<ModVec<F>> c;
    for (int j = 0; j < m.ngens(); ++j) c.push_back(m.ctx().unit(j));
    return GradedMap(m, m, std::move(c), 0);
  }

 private:
  Presentation<F> src_;
  Presentation<F> tgt_;
  std::vector<ModVec<F>> cols_;
  int deg_;
};

}  // namespace dopkit

#endif
