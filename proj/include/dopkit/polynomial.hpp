// Sparse polynomials over a coefficient field, in a weighted-graded
// polynomial ring with the (weighted) degrevlex term order.
#ifndef DOPKIT_POLYNOMIAL_HPP
#define DOPKIT_POLYNOMIAL_HPP

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dopkit/field.hpp"
#include "dopkit/monomial.hpp"

namespace dopkit {

// Terms are kept sorted in strictly descending term order, so the lead
// term is front() and equality of polynomials is structural.
template <class F>
struct Poly {
  using Elem = typename F::Elem;
  std::vector<std::pair<Monomial, Elem>> t;

  bool is_zero() const { return t.empty(); }
  const Monomial& lm() const { return t.front().first; }
  const Elem& lc() const { return t.front().second; }
  bool operator==(const Poly& o) const { return t == o.t; }
};

template <class F>
class PolyRing {
public:
  using Elem = typename F::Elem;
  using P = Poly<F>;

  PolyRing(F field, std::vector<std::string> names, std::vector<int> weights)
      : field_(std::move(field)), names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() != weights_.size()) throw std::invalid_argument("names/weights size mismatch");
    if (static_cast<int>(names_.size()) > kMaxVars)
      throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
    for (int w : weights_)
      if (w <= 0) throw std::invalid_argument("variable weights must be positive");
  }

  const F& field() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }

  int weight(const Monomial& m) const {
    int d = 0;
    for (int i = 0; i < nvars(); ++i) d += weights_[i] * m.e[i];
    return d;
  }

  // Weighted degrevlex: higher weighted degree first; on ties the
  // monomial with the larger exponent at the last differing variable
  // is the smaller one.  Returns <0, 0, >0 like a comparator.
  int cmp_mono(const Monomial& a, const Monomial& b) const {
    int da = weight(a), db = weight(b);
    if (da != db) return da < db ? -1 : 1;
    for (int i = nvars() - 1; i >= 0; --i) {
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
  }

  P zero() const { return P{}; }
  P one() const { return constant(field_.one()); }
  P constant(const Elem& c) const {
    P r;
    if (!field_.is_zero(c)) r.t.push_back({Monomial::unit(), c});
    return r;
  }
  P var(int i, int k = 1) const {
    P r;
    if (k > 0) r.t.push_back({Monomial::var(i, k), field_.one()});
    else r = one();
    return r;
  }
  P term(const Monomial& m, const Elem& c) const {
    P r;
    if (!field_.is_zero(c)) r.t.push_back({m, c});
    return r;
  }

  P add(const P& a, const P& b) const {
    P r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
      int c = cmp_mono(a.t[i].first, b.t[j].first);
      if (c > 0) r.t.push_back(a.t[i++]);
      else if (c < 0) r.t.push_back(b.t[j++]);
      else {
        Elem s = field_.add(a.t[i].second, b.t[j].second);
        if (!field_.is_zero(s)) r.t.push_back({a.t[i].first, s});
        ++i; ++j;
      }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.push_back(b.t[j]);
    return r;
  }

  P neg(const P& a) const {
    P r = a;
    for (auto& te : r.t) te.second = field_.neg(te.second);
    return r;
  }
  P sub(const P& a, const P& b) const { return add(a, neg(b)); }

  P scale(const P& a, const Elem& c) const {
    if (field_.is_zero(c)) return zero();
    P r = a;
    for (auto& te : r.t) te.second = field_.mul(te.second, c);
    return r;
  }

  // a * (c * m); term order is preserved under multiplication by a monomial.
  P mul_term(const P& a, const Monomial& m, const Elem& c) const {
    if (field_.is_zero(c)) return zero();
    P r;
    r.t.reserve(a.t.size());
    for (auto& te : a.t) r.t.push_back({dopkit::mul(te.first, m), field_.mul(te.second, c)});
    return r;
  }

  P mul(const P& a, const P& b) const {
    P r;
    for (auto& te : b.t) r = add(r, mul_term(a, te.first, te.second));
    return r;
  }

  P pow(const P& a, int k) const {
    P r = one(), base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      k >>= 1;
      if (k) base = mul(base, base);
    }
    return r;
  }

  // Weighted degree of a homogeneous polynomial; nullopt for 0 or mixed.
  std::optional<int> homogeneous_degree(const P& a) const {
    if (a.is_zero()) return std::nullopt;
    int d = weight(a.t.front().first);
    for (auto& te : a.t)
      if (weight(te.first) != d) return std::nullopt;
    return d;
  }

  // All monomials of weighted degree exactly d, in descending term order.
  std::vector<Monomial> monomials_of_weight(int d) const {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur;
    enumerate(0, d, cur, out);
    std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return cmp_mono(a, b) > 0; });
    return out;
  }

  std::string mono_str(const Monomial& m) const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < nvars(); ++i) {
      if (!m.e[i]) continue;
      if (!first) os << "*";
      os << names_[i];
      if (m.e[i] > 1) os << "^" << int(m.e[i]);
      first = false;
    }
    if (first) os << "1";
    return os.str();
  }

  std::string str(const P& a) const {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& te : a.t) {
      std::string c = field_.str(te.second);
      bool negative = !c.empty() && c[0] == '-';
      if (first) {
        if (negative) { os << "-"; c = c.substr(1); }
      } else {
        os << (negative ? " - " : " + ");
        if (negative) c = c.substr(1);
      }
      if (te.first.is_unit()) os << c;
      else if (c == "1") os << mono_str(te.first);
      else os << c << "*" << mono_str(te.first);
      first = false;
    }
    return os.str();
  }

private:
  void enumerate(int i, int rem, Monomial& cur, std::vector<Monomial>& out) const {
    if (i == nvars()) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    if (i == nvars() - 1) {
      if (rem % weights_[i] == 0 && rem / weights_[i] <= 255) {
        cur.e[i] = static_cast<std::uint8_t>(rem / weights_[i]);
        out.push_back(cur);
        cur.e[i] = 0;
      }
      return;
    }
    for (int k = 0; k * weights_[i] <= rem && k <= 255; ++k) {
      cur.e[i] = static_cast<std::uint8_t>(k);
      enumerate(i + 1, rem - k * weights_[i], cur, out);
    }
    cur.e[i] = 0;
  }

  F field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

}  // namespace dopkit

#endif
