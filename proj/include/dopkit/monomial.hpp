// Exponent vectors with positive integer weights on the variables.
#ifndef DOPKIT_MONOMIAL_HPP
#define DOPKIT_MONOMIAL_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dopkit {

// Hard cap on ambient variables; enveloping algebras double the variable
// count, so rings of up to 8 variables are supported directly.
inline constexpr int kMaxVars = 8;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  static Monomial unit() { return Monomial{}; }
  static Monomial var(int i, int k = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint8_t>(k);
    return m;
  }

  bool is_unit() const {
    for (auto x : e) if (x) return false;
    return true;
  }
  int total() const {
    int t = 0;
    for (auto x : e) t += x;
    return t;
  }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
  // Structural order (exp-lex), used only for canonical container keys.
  bool operator<(const Monomial& o) const { return e < o.e; }
};

inline bool divides(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

inline Monomial mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    int s = a.e[i] + b.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

// Quotient a/b; caller guarantees divisibility.
inline Monomial quot(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] - b.e[i]);
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

}  // namespace dopkit

#endif
