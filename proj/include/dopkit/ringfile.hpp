// Ring description files.
//
// A ring file is a sequence of ';'-terminated statements:
//
//   field QQ;            (rationals)                field Fp 5;   (prime field)
//   field ZZ;            (integer coefficients, for reduction commands)
//   vars x:1 y:1 z:2;    (variable names with positive weights)
//   rel x^3 + y^3 + z^3; (zero or more homogeneous defining relations)
//
// '#' starts a comment that runs to end of line.  Errors carry the
// line/column of the offending token.
#ifndef DOPKIT_RINGFILE_HPP
#define DOPKIT_RINGFILE_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dopkit/algebra.hpp"
#include "dopkit/parse.hpp"

namespace dopkit {

enum class FieldKind { QQ, Fp, ZZ };

struct RingFile {
  FieldKind kind = FieldKind::QQ;
  long p = 0;  // modulus when kind == Fp
  std::vector<std::string> names;
  std::vector<int> weights;
  std::vector<std::string> rels;            // relation bodies, verbatim
  std::vector<std::pair<int, int>> rel_pos; // line/col where each body starts

  std::string field_str() const;
  // Canonical one-line-per-statement round trip of the description.
  std::string canonical_text() const;
};

RingFile parse_ring_file(const std::string& text);
RingFile load_ring_file(const std::string& path);

// Parses the relation bodies over the given field and builds the quotient
// algebra.  Inhomogeneous or zero relations are reported with the position
// and the offending term.
template <class F>
std::shared_ptr<Algebra<F>> build_algebra(const RingFile& rf, F field) {
  PolyRing<F> ring(std::move(field), rf.names, rf.weights);
  std::vector<Poly<F>> gens;
  gens.reserve(rf.rels.size());
  for (size_t i = 0; i < rf.rels.size(); ++i) {
    auto [line0, col0] = rf.rel_pos[i];
    PolyParser<F> parser(ring, rf.rels[i], line0, col0);
    Poly<F> g = parser.parse();
    if (g.is_zero())
      throw ParseError("relation simplifies to zero", line0, col0);
    int d = ring.weight(g.t.front().first);
    for (auto& te : g.t)
      if (ring.weight(te.first) != d)
        throw ParseError("relation is not homogeneous: term " + ring.mono_str(te.first) +
                             " has degree " + std::to_string(ring.weight(te.first)) +
                             " but term " + ring.mono_str(g.t.front().first) + " has degree " +
                             std::to_string(d),
                         line0, col0);
    gens.push_back(std::move(g));
  }
  return std::make_shared<Algebra<F>>(std::move(ring), std::move(gens));
}

}  // namespace dopkit

#endif
