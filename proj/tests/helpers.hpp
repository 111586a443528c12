// Shared shortcuts for building rings, algebras, and modules in tests.
#ifndef DOPKIT_TESTS_HELPERS_HPP
#define DOPKIT_TESTS_HELPERS_HPP

#include <memory>
#include <string>
#include <vector>

#include "dopkit/algebra.hpp"
#include "dopkit/parse.hpp"
#include "dopkit/presentation.hpp"

namespace th {

using dopkit::Algebra;
using dopkit::Poly;
using dopkit::PolyRing;
using dopkit::Rationals;

using QRing = PolyRing<Rationals>;
using QPoly = Poly<Rationals>;
using QAlg = Algebra<Rationals>;

inline QRing qring(std::vector<std::string> names, std::vector<int> weights = {}) {
  if (weights.empty()) weights.assign(names.size(), 1);
  return QRing(Rationals{}, std::move(names), std::move(weights));
}

inline QPoly qp(const QRing& R, const std::string& s) { return dopkit::parse_poly(R, s); }

inline std::shared_ptr<const QAlg> qalg(std::vector<std::string> names,
                                        std::vector<std::string> rels,
                                        std::vector<int> weights = {}) {
  QRing R = qring(std::move(names), std::move(weights));
  std::vector<QPoly> gens;
  for (const auto& s : rels) gens.push_back(qp(R, s));
  return std::make_shared<const QAlg>(std::move(R), std::move(gens));
}

// Cyclic module A/(fs) with generator in degree 0.
inline dopkit::Presentation<Rationals> qcyclic(std::shared_ptr<const QAlg> alg,
                                               std::vector<std::string> rels) {
  dopkit::FreeCtx<Rationals> ctx(&alg->ring(), std::vector<int>{0});
  std::vector<dopkit::ModVec<Rationals>> rr;
  for (const auto& s : rels) rr.push_back(ctx.from_poly(qp(alg->ring(), s), 0));
  return dopkit::Presentation<Rationals>(std::move(alg), {0}, std::move(rr));
}

}  // namespace th

#endif
