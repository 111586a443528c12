// Coefficient fields: arbitrary-precision rationals and word-sized prime fields.
#ifndef DOPKIT_FIELD_HPP
#define DOPKIT_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace dopkit {

// Exact rationals backed by GMP.  Elements are always canonicalized
// (reduced fraction, positive denominator), so == is structural equality.
class Rationals {
public:
  using Elem = mpq_class;

  long characteristic() const { return 0; }

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

  Elem from_long(long n) const { return Elem(n); }
  Elem from_ratio(long num, long den) const {
    if (den == 0) throw std::domain_error("zero denominator");
    Elem q(num, den);
    q.canonicalize();
    return q;
  }

  std::string str(const Elem& a) const { return a.get_str(); }
};

// F_p with p an odd-or-even prime below 2^31.  Elements are residues in
// [0, p); products go through 64-bit intermediates, inverses use Fermat.
class PrimeField {
public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 2 || !is_prime(p)) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
  }

  long characteristic() const { return static_cast<long>(p_); }
  std::uint32_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1 % p_; }

  Elem add(Elem a, Elem b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    if (s >= p_) s -= p_;
    return Elem(s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : Elem(std::uint64_t(a) + p_ - b); }
  Elem mul(Elem a, Elem b) const { return Elem((std::uint64_t(a) * b) % p_); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one(), base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return pow(a, p_ - 2);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem from_long(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return Elem(r);
  }
  Elem from_ratio(long num, long den) const { return div(from_long(num), from_long(den)); }

  std::string str(Elem a) const { return std::to_string(a); }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; std::uint64_t(d) * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

private:
  std::uint32_t p_;
};

}  // namespace dopkit

#endif
