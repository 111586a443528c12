// A finitely presented graded algebra R = S/I over a weighted polynomial
// ring S, with a cached Groebner basis of the defining ideal.
#ifndef DOPKIT_ALGEBRA_HPP
#define DOPKIT_ALGEBRA_HPP

#include <memory>
#include <mutex>

#include "dopkit/groebner.hpp"

namespace dopkit {

template <class F>
class Algebra {
public:
  Algebra(PolyRing<F> ring, std::vector<Poly<F>> ideal_gens)
      : ring_(std::make_shared<PolyRing<F>>(std::move(ring))), ideal_(std::move(ideal_gens)),
        cache_(std::make_shared<Cache>()) {
    for (const auto& g : ideal_) {
      if (g.is_zero()) throw std::invalid_argument("zero ideal generator");
      if (!ring_->homogeneous_degree(g))
        throw std::invalid_argument("inhomogeneous ideal generator: " + ring_->str(g) +
                                    " (offending term " + ring_->mono_str(g.t.back().first) + ")");
    }
    rank1_ = FreeCtx<F>(ring_.get(), {0});
  }

  const PolyRing<F>& ring() const { return *ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<Poly<F>>& ideal() const { return ideal_; }
  bool is_polynomial_ring() const { return ideal_.empty(); }

  int sum_weights() const {
    int s = 0;
    for (int w : ring_->weights()) s += w;
    return s;
  }

  // Groebner basis of the defining ideal, certified at least to `bound`.
  // Returned by shared pointer: escalating the bound later swaps the cache
  // without invalidating bases already handed out.
  std::shared_ptr<const GB<F>> ideal_gb(int bound) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->gb || (cache_->gb->certified < bound && !cache_->gb->complete)) {
      std::vector<ModVec<F>> in;
      for (const auto& g : ideal_) in.push_back(rank1_.from_poly(g, 0));
      cache_->gb = std::make_shared<GB<F>>(buchberger(rank1_, in, bound, false));
    }
    return cache_->gb;
  }

  Poly<F> nf(const Poly<F>& p) const {
    if (p.is_zero() || ideal_.empty()) return p;
    int d = ring_->weight(p.lm());
    auto gb = ideal_gb(d);
    return rank1_.component(gb->nf(rank1_.from_poly(p, 0)), 0);
  }

  // Standard-monomial basis of R in weighted degree d.
  std::vector<Monomial> monomial_basis(int d) const {
    std::vector<Monomial> out;
    if (d < 0) return out;
    if (ideal_.empty()) return ring_->monomials_of_weight(d);
    auto gb = ideal_gb(d);
    for (const auto& mc : gb->std_monomials(d)) out.push_back(mc.first);
    return out;
  }

  int hilbert(int d) const { return static_cast<int>(monomial_basis(d).size()); }

  // Krull dimension, read off the lead-term ideal of a full Groebner
  // basis.  Escalates the bound until the basis is complete.
  int dimension() const {
    if (ideal_.empty()) return ring_->nvars();
    int bound = 4;
    for (const auto& g : ideal_) bound = std::max(bound, *ring_->homogeneous_degree(g) + 2);
    std::shared_ptr<const GB<F>> gb;
    for (;;) {
      gb = ideal_gb(bound);
      if (gb->complete) break;
      if (bound > 512) throw DegreeBoundTooSmall(bound);
      bound *= 2;
    }
    int n = ring_->nvars();
    std::vector<Monomial> leads;
    for (const auto& b : gb->g) leads.push_back(b.lt().m);
    int best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      bool ok = true;
      for (const auto& m : leads) {
        bool inside = true;
        for (int i = 0; i < n; ++i)
          if (m.e[i] && !(mask >> i & 1)) { inside = false; break; }
        if (inside) { ok = false; break; }
      }
      if (ok) best = std::max(best, __builtin_popcount(static_cast<unsigned>(mask)));
    }
    return best;
  }

private:
  struct Cache {
    std::mutex mu;
    std::shared_ptr<GB<F>> gb;
  };

  std::shared_ptr<PolyRing<F>> ring_;  // stable address for FreeCtx back-pointers
  std::vector<Poly<F>> ideal_;
  FreeCtx<F> rank1_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace dopkit

#endif
