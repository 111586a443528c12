// Reduction modulo p.  An integer-coefficient ring description is read as a
// family over ZZ; the tool compares the operator tables of its rational fiber
// and its prime fibers cell by cell.  A strictly positive dimension excess
// dim_Fp - dim_QQ in a cell witnesses p-torsion in the first derived functor
// (equivalently, in the corresponding local-cohomology module) under the
// stated flatness/projectivity hypotheses.  No integer linear algebra is
// performed: torsion detection is purely a fiber-dimension comparison, and a
// prime whose Groebner structure degenerates is reported as bad rather than
// interpreted.
#ifndef DOPKIT_REDUCTION_HPP
#define DOPKIT_REDUCTION_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dopkit/diffops.hpp"
#include "dopkit/pool.hpp"
#include "dopkit/ringfile.hpp"

namespace dopkit {

inline bool is_prime_long(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Assumptions stated with every report.  Excess witnesses torsion only under
// these; the good-prime gate below is necessary for them but not a
// certificate, so witnesses are qualified rather than asserted outright.
inline constexpr const char* kTorsionHypotheses =
    "flatness of the fibers, projectivity of P^n over ZZ at good primes";
inline constexpr const char* kWitnessQualifier = "modulo flatness hypotheses";

enum class TorsionVerdict { NoWitness, TorsionWitness, BadPrime };

inline const char* verdict_str(TorsionVerdict v) {
  switch (v) {
    case TorsionVerdict::NoWitness: return "NoWitness";
    case TorsionVerdict::TorsionWitness: return "TorsionWitness";
    default: return "BadPrime";
  }
}

struct TorsionCell {
  long p = 0;
  int n = 0;  // operator order
  int k = 0;  // internal degree
  int dim_q = 0;
  int dim_p = 0;
  int excess = 0;
  TorsionVerdict verdict = TorsionVerdict::NoWitness;
};

struct PrimeSlice {
  long p = 0;
  bool bad = false;        // degenerate reduction: no claims are made at this prime
  std::string diagnostic;  // reason when bad
  std::vector<TorsionCell> cells;
  bool any_witness = false;
};

struct FiberTable {
  int order = 0;
  int lo = 0;
  int hi = 0;
  std::vector<std::vector<int>> dims;  // dims[n][k - lo]
  int at(int n, int k) const { return dims.at(static_cast<size_t>(n)).at(static_cast<size_t>(k - lo)); }
};

template <class F>
FiberTable fiber_table(std::shared_ptr<const Algebra<F>> alg, int order, int lo, int hi) {
  Presentation<F> R(alg, {0}, {});
  DiffOps<F> ops(R, R, order, lo, hi);
  FiberTable t{order, lo, hi, {}};
  t.dims.resize(static_cast<size_t>(order) + 1);
  for (int n = 0; n <= order; ++n)
    for (int k = lo; k <= hi; ++k) t.dims[static_cast<size_t>(n)].push_back(ops.dim(n, k));
  return t;
}

// The ring of order-n parts is a cyclic quotient of the doubled polynomial
// ring by the enveloping ideal together with the (n+1)-st diagonal powers.
// Its standard-monomial structure is what every operator computation sees,
// so the good-prime gate compares it alongside the defining ideal itself.
template <class F>
Algebra<F> parts_cyclic_algebra(std::shared_ptr<const Algebra<F>> alg, int order) {
  auto ed = enveloping_diagonal_power(alg, order);
  std::vector<Poly<F>> gens = ed.env->ideal();
  for (const auto& r : ed.diag_power.rels()) gens.push_back(ed.diag_power.ctx().component(r, 0));
  return Algebra<F>(ed.env->ring(), std::move(gens));
}

// Compares the standard-monomial sets of two quotients degree by degree up
// to `bound`.  This is the canonical truncated lead-term comparison: it does
// not depend on redundancies in either Groebner basis.  Returns a
// description of the first discrepancy, or nothing when the structures agree.
template <class FA, class FB>
std::optional<std::string> lead_structure_mismatch(const Algebra<FA>& a, const Algebra<FB>& b,
                                                   int bound) {
  for (int d = 0; d <= bound; ++d) {
    auto ma = a.monomial_basis(d);
    auto mb = b.monomial_basis(d);
    if (ma.size() != mb.size())
      return "standard-monomial counts differ at degree " + std::to_string(d) + " (" +
             std::to_string(ma.size()) + " rational vs " + std::to_string(mb.size()) +
             " modular)";
    for (size_t i = 0; i < ma.size(); ++i)
      if (!(ma[i] == mb[i]))
        return "standard monomials differ at degree " + std::to_string(d) + ": " +
               a.ring().mono_str(ma[i]) + " vs " + b.ring().mono_str(mb[i]);
  }
  return std::nullopt;
}

// The rational fiber, computed once and shared across the prime list.
struct RationalFiber {
  std::shared_ptr<Algebra<Rationals>> alg;
  std::shared_ptr<Algebra<Rationals>> parts;  // parts_cyclic_algebra at the scan order
  FiberTable table;
};

inline RationalFiber rational_fiber(const RingFile& rz, int order, int lo, int hi) {
  RationalFiber out;
  out.alg = build_algebra(rz, Rationals());
  out.parts = std::make_shared<Algebra<Rationals>>(parts_cyclic_algebra<Rationals>(out.alg, order));
  out.table = fiber_table<Rationals>(out.alg, order, lo, hi);
  return out;
}

inline PrimeSlice base_change_compare(const RationalFiber& qf, const RingFile& rz, long p,
                                      int order, int lo, int hi, int bound) {
  if (rz.kind != FieldKind::ZZ)
    throw std::invalid_argument(
        "reduction requires an integer-coefficient ring description (field ZZ)");
  if (!is_prime_long(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");

  PrimeSlice out;
  out.p = p;

  if (p > 0x7fffffffL) throw std::invalid_argument("modulus too large: " + std::to_string(p));
  std::shared_ptr<Algebra<PrimeField>> algp;
  try {
    algp = build_algebra(rz, PrimeField(static_cast<std::uint32_t>(p)));
  } catch (const ParseError& e) {
    out.bad = true;
    out.diagnostic = std::string("degenerate reduction: ") + e.what();
    return out;
  }

  if (auto mis = lead_structure_mismatch(*qf.alg, *algp, bound)) {
    out.bad = true;
    out.diagnostic = "defining ideal degenerates modulo " + std::to_string(p) + ": " + *mis;
    return out;
  }
  Algebra<PrimeField> partsp = parts_cyclic_algebra<PrimeField>(algp, order);
  if (auto mis = lead_structure_mismatch(*qf.parts, partsp, bound)) {
    out.bad = true;
    out.diagnostic =
        "parts presentation degenerates modulo " + std::to_string(p) + ": " + *mis;
    return out;
  }

  Presentation<PrimeField> Rp(algp, {0}, {});
  DiffOps<PrimeField> ops(Rp, Rp, order, lo, hi);
  for (int n = 0; n <= order; ++n)
    for (int k = lo; k <= hi; ++k) {
      TorsionCell c;
      c.p = p;
      c.n = n;
      c.k = k;
      c.dim_q = qf.table.at(n, k);
      c.dim_p = ops.dim(n, k);
      c.excess = c.dim_p - c.dim_q;
      if (c.excess > 0)
        c.verdict = TorsionVerdict::TorsionWitness;
      else if (c.excess == 0)
        c.verdict = TorsionVerdict::NoWitness;
      else
        c.verdict = TorsionVerdict::BadPrime;
      out.cells.push_back(c);
    }

  for (const auto& c : out.cells)
    if (c.excess < 0 && !out.bad) {
      out.bad = true;
      out.diagnostic = "fiber dimension at order " + std::to_string(c.n) + ", degree " +
                       std::to_string(c.k) + " dropped below the rational fiber (" +
                       std::to_string(c.dim_p) + " < " + std::to_string(c.dim_q) +
                       "): semicontinuity violated, reduction is degenerate";
    }
  if (out.bad) {
    // No interpretation survives a degenerate prime: demote every cell.
    for (auto& c : out.cells) c.verdict = TorsionVerdict::BadPrime;
  } else {
    for (const auto& c : out.cells)
      if (c.verdict == TorsionVerdict::TorsionWitness) out.any_witness = true;
  }
  return out;
}

inline PrimeSlice base_change_compare(const RingFile& rz, long p, int order, int lo, int hi,
                                      int bound) {
  return base_change_compare(rational_fiber(rz, order, lo, hi), rz, p, order, lo, hi, bound);
}

struct TorsionReport {
  int order = 0;
  int lo = 0;
  int hi = 0;
  int bound = 0;
  FiberTable qtable;
  std::vector<PrimeSlice> slices;
  std::vector<long> witness_primes;
  std::vector<long> bad_primes;
};

inline TorsionReport torsion_scan(const RingFile& rz, const std::vector<long>& primes, int order,
                                  int lo, int hi, int bound) {
  if (rz.kind != FieldKind::ZZ)
    throw std::invalid_argument(
        "reduction requires an integer-coefficient ring description (field ZZ)");
  for (long p : primes)
    if (!is_prime_long(p))
      throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");

  TorsionReport rep;
  rep.order = order;
  rep.lo = lo;
  rep.hi = hi;
  rep.bound = bound;
  auto qf = rational_fiber(rz, order, lo, hi);
  rep.qtable = qf.table;
  // Primes are independent; slots keep the report order equal to the input
  // order for every worker count.
  rep.slices = parallel_map<PrimeSlice>(static_cast<int>(primes.size()), [&](int j) {
    return base_change_compare(qf, rz, primes[static_cast<size_t>(j)], order, lo, hi, bound);
  });
  for (const auto& s : rep.slices) {
    if (s.bad)
      rep.bad_primes.push_back(s.p);
    else if (s.any_witness)
      rep.witness_primes.push_back(s.p);
  }
  return rep;
}

}  // namespace dopkit

#endif
