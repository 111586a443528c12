// Elements of free modules over a weighted polynomial ring, with graded
// term orders (degree first, then term-over-position or position-over-term).
#ifndef DOPKIT_MODULE_HPP
#define DOPKIT_MODULE_HPP

#include <sstream>
#include <stdexcept>
#include <vector>

#include "dopkit/polynomial.hpp"

namespace dopkit {

template <class F>
struct ModTerm {
  Monomial m;
  int comp;
  typename F::Elem c;
  bool operator==(const ModTerm& o) const { return m == o.m && comp == o.comp && c == o.c; }
};

// Terms sorted strictly descending in the module order of the ambient
// free module; the zero vector is the empty list.
template <class F>
struct ModVec {
  std::vector<ModTerm<F>> t;
  bool is_zero() const { return t.empty(); }
  const ModTerm<F>& lt() const { return t.front(); }
  bool operator==(const ModVec& o) const { return t == o.t; }
};

enum class ModRule { TermOverPosition, PositionOverTerm };

// A graded free module F = (+)_j R(-d_j) over the ambient polynomial ring.
// Holds no elements, only the context needed to order and grade them.
template <class F>
class FreeCtx {
public:
  FreeCtx() = default;
  FreeCtx(const PolyRing<F>* ring, std::vector<int> gen_degs, ModRule rule = ModRule::TermOverPosition)
      : ring_(ring), gen_degs_(std::move(gen_degs)), rule_(rule) {}

  const PolyRing<F>& ring() const { return *ring_; }
  const F& field() const { return ring_->field(); }
  int rank() const { return static_cast<int>(gen_degs_.size()); }
  const std::vector<int>& gen_degs() const { return gen_degs_; }
  ModRule rule() const { return rule_; }

  int term_degree(const Monomial& m, int comp) const { return ring_->weight(m) + gen_degs_[comp]; }

  // Total order on module monomials m*e_comp: graded, with ties broken by
  // the chosen rule.  Lower component index counts as larger.
  int cmp(const Monomial& am, int ac, const Monomial& bm, int bc) const {
    int da = term_degree(am, ac), db = term_degree(bm, bc);
    if (da != db) return da < db ? -1 : 1;
    if (rule_ == ModRule::TermOverPosition) {
      int c = ring_->cmp_mono(am, bm);
      if (c) return c;
      if (ac != bc) return ac < bc ? 1 : -1;
      return 0;
    }
    if (ac != bc) return ac < bc ? 1 : -1;
    return ring_->cmp_mono(am, bm);
  }

  ModVec<F> zero() const { return ModVec<F>{}; }
  ModVec<F> unit(int comp) const {
    ModVec<F> v;
    v.t.push_back({Monomial::unit(), comp, field().one()});
    return v;
  }
  ModVec<F> term(const Monomial& m, int comp, const typename F::Elem& c) const {
    ModVec<F> v;
    if (!field().is_zero(c)) v.t.push_back({m, comp, c});
    return v;
  }

  ModVec<F> add(const ModVec<F>& a, const ModVec<F>& b) const {
    ModVec<F> r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
      int c = cmp(a.t[i].m, a.t[i].comp, b.t[j].m, b.t[j].comp);
      if (c > 0) r.t.push_back(a.t[i++]);
      else if (c < 0) r.t.push_back(b.t[j++]);
      else {
        auto s = field().add(a.t[i].c, b.t[j].c);
        if (!field().is_zero(s)) r.t.push_back({a.t[i].m, a.t[i].comp, s});
        ++i; ++j;
      }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
    return r;
  }

  ModVec<F> neg(const ModVec<F>& a) const {
    ModVec<F> r = a;
    for (auto& te : r.t) te.c = field().neg(te.c);
    return r;
  }
  ModVec<F> sub(const ModVec<F>& a, const ModVec<F>& b) const { return add(a, neg(b)); }

  ModVec<F> scale(const ModVec<F>& a, const typename F::Elem& c) const {
    if (field().is_zero(c)) return zero();
    ModVec<F> r = a;
    for (auto& te : r.t) te.c = field().mul(te.c, c);
    return r;
  }

  ModVec<F> mul_term(const ModVec<F>& a, const Monomial& m, const typename F::Elem& c) const {
    if (field().is_zero(c)) return zero();
    ModVec<F> r;
    r.t.reserve(a.t.size());
    for (auto& te : a.t) r.t.push_back({dopkit::mul(te.m, m), te.comp, field().mul(te.c, c)});
    return r;
  }

  ModVec<F> poly_mul(const Poly<F>& p, const ModVec<F>& a) const {
    ModVec<F> r;
    for (auto& te : p.t) r = add(r, mul_term(a, te.first, te.second));
    return r;
  }

  // e_comp scaled into a vector from a polynomial coefficient.
  ModVec<F> from_poly(const Poly<F>& p, int comp) const {
    ModVec<F> r;
    for (auto& te : p.t) r = add(r, term(te.first, comp, te.second));
    return r;
  }

  // Component `comp` of the vector, as a polynomial.
  Poly<F> component(const ModVec<F>& a, int comp) const {
    Poly<F> p;
    for (auto& te : a.t)
      if (te.comp == comp) p = ring_->add(p, ring_->term(te.m, te.c));
    return p;
  }

  std::optional<int> homogeneous_degree(const ModVec<F>& a) const {
    if (a.is_zero()) return std::nullopt;
    int d = term_degree(a.t.front().m, a.t.front().comp);
    for (auto& te : a.t)
      if (term_degree(te.m, te.comp) != d) return std::nullopt;
    return d;
  }

  std::string str(const ModVec<F>& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < rank(); ++j) {
      Poly<F> p = component(a, j);
      if (p.is_zero()) continue;
      if (!first) os << " + ";
      os << "(" << ring_->str(p) << ")*e" << j;
      first = false;
    }
    return os.str();
  }

private:
  const PolyRing<F>* ring_ = nullptr;
  std::vector<int> gen_degs_;
  ModRule rule_ = ModRule::TermOverPosition;
};

}  // namespace dopkit

#endif
