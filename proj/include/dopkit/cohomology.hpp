// Colimits of Ext along directed systems of presentations: local
// cohomology as lim Ext^i(A/J^t, M), the derived operator functors as
// lim Ext^i(P^n, M), and the comparison, duality, depth and vanishing
// probes built on them.  Stabilization is certified by dimension
// plateaus together with invertible transition maps, never by
// dimensions alone.
#ifndef DOPKIT_COHOMOLOGY_HPP
#define DOPKIT_COHOMOLOGY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dopkit/homology.hpp"
#include "dopkit/pool.hpp"
#include "dopkit/pparts.hpp"

namespace dopkit {

// ---------------------------------------------------------------------
// Colimit tables
// ---------------------------------------------------------------------

enum class ColimitDirection { IdealPowers, PartsOrders };

struct ColimitCell {
  int k = 0;
  std::vector<int> history;  // dim at each computed stage
  bool stable = false;
  int stable_stage = -1;  // first stage of the certified plateau
  int dim = 0;            // stabilized value when stable
};

struct ColimitTable {
  int i = 0, lo = 0, hi = -1;
  ColimitDirection direction = ColimitDirection::PartsOrders;
  int stages = 0;
  bool all_stable = false;
  std::vector<ColimitCell> cells;

  const ColimitCell& cell(int k) const { return cells[k - lo]; }
};

// A directed system of finitely presented modules M_0 <- M_1 <- ...
// given by stage modules and, for each stage s, the images of the
// generators of M_{s+1} in M_s (as elements of F_0(M_s)).
template <class F>
struct DirectedSystem {
  ColimitDirection direction = ColimitDirection::PartsOrders;
  std::function<Presentation<F>(int)> module_at;
  std::function<std::vector<ModVec<F>>(int)> map_cols;
};

// lim Ext^i(M_s, N) over a degree window.  A cell is stable(s0) when its
// dimension agrees at stages s0, s0+1, s0+2 and both transition maps on
// the cell are isomorphisms.  Stops early once every cell is stable.
//
// Stages are evaluated in waves of the worker-pool size: resolutions,
// sheets, and one-step transition lifts inside a wave run concurrently,
// but history is appended and the stop condition evaluated strictly in
// stage order, so the table is identical for every worker count (at most
// a wave of discarded overshoot differs).
template <class F>
ColimitTable ext_colimit(const DirectedSystem<F>& sys, const Presentation<F>& N, int i,
                         int lo, int hi, int smax, int bound) {
  if (lo > hi) throw std::invalid_argument("ext_colimit: empty window");
  const auto& K = N.alg().field();
  ColimitTable out;
  out.i = i;
  out.lo = lo;
  out.hi = hi;
  out.direction = sys.direction;
  out.cells.resize(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) out.cells[k - lo].k = k;

  std::vector<Resolution<F>> res;
  std::vector<ExtSheet<F>> sheets;
  std::vector<std::vector<bool>> isos;  // isos[s-1][k-lo]: stage s-1 -> s

  int wave = std::max(1, pool_workers());
  bool done = false;
  for (int w0 = 0; w0 <= smax && !done; w0 += wave) {
    int w1 = std::min(smax, w0 + wave - 1);
    int cnt = w1 - w0 + 1;

    // The directed systems memoize lazily: warm their caches sequentially.
    std::vector<Presentation<F>> mods;
    mods.reserve(static_cast<size_t>(cnt));
    for (int s = w0; s <= w1; ++s) mods.push_back(sys.module_at(s));
    std::vector<std::vector<ModVec<F>>> cols(static_cast<size_t>(cnt));
    for (int s = std::max(1, w0); s <= w1; ++s) cols[static_cast<size_t>(s - w0)] = sys.map_cols(s - 1);

    struct Stage {
      Resolution<F> r;
      ExtSheet<F> sh;
    };
    auto stages = parallel_map<std::shared_ptr<Stage>>(cnt, [&](int j) {
      auto r = resolution(mods[static_cast<size_t>(j)], i + 1, bound);
      auto sh = ext_sheet(r, N, i, lo, hi);
      return std::make_shared<Stage>(Stage{std::move(r), std::move(sh)});
    });
    for (auto& st : stages) {
      res.push_back(std::move(st->r));
      sheets.push_back(std::move(st->sh));
    }

    int l0 = std::max(1, w0);
    auto rows = parallel_map<std::vector<bool>>(w1 - l0 + 1, [&](int j) {
      int s = l0 + j;
      auto fs = lift_through(res[static_cast<size_t>(s)], res[static_cast<size_t>(s - 1)],
                             cols[static_cast<size_t>(s - w0)], i, bound);
      std::vector<bool> row;
      for (int k = lo; k <= hi; ++k) {
        Mat<F> m = ext_induced_matrix(sheets[static_cast<size_t>(s - 1)],
                                      sheets[static_cast<size_t>(s)],
                                      res[static_cast<size_t>(s)].degs[static_cast<size_t>(i)],
                                      res[static_cast<size_t>(s - 1)].degs[static_cast<size_t>(i)],
                                      fs[static_cast<size_t>(i)], N, k);
        int df = sheets[static_cast<size_t>(s - 1)].dim_at(k);
        int dt = sheets[static_cast<size_t>(s)].dim_at(k);
        row.push_back(df == dt && rank(K, m) == dt);
      }
      return row;
    });
    for (auto& r : rows) isos.push_back(std::move(r));

    for (int s = w0; s <= w1 && !done; ++s) {
      for (int k = lo; k <= hi; ++k)
        out.cells[k - lo].history.push_back(sheets[static_cast<size_t>(s)].dim_at(k));
      bool all = true;
      for (int k = lo; k <= hi; ++k) {
        auto& c = out.cells[k - lo];
        if (!c.stable) {
          for (int s0 = 0; s0 + 2 <= s; ++s0) {
            if (c.history[s0] == c.history[s0 + 1] && c.history[s0 + 1] == c.history[s0 + 2] &&
                isos[s0][k - lo] && isos[s0 + 1][k - lo]) {
              c.stable = true;
              c.stable_stage = s0;
              c.dim = c.history[s0];
              break;
            }
          }
        }
        all = all && c.stable;
      }
      out.stages = s + 1;
      if (all) {
        out.all_stable = true;
        done = true;
      }
    }
  }

  // Final certificates.  The in-loop mark above is only the stop
  // heuristic; a first plateau can be transient (a cell may sit at 0 for
  // several stages and then jump).  Re-derive stability from the full
  // history: a cell is stable only when, from some stage on, its
  // dimension is constant through the LAST computed stage and every
  // transition in that range is an isomorphism.
  int last = out.stages - 1;
  out.all_stable = true;
  for (int k = lo; k <= hi; ++k) {
    auto& c = out.cells[k - lo];
    c.stable = false;
    c.stable_stage = -1;
    c.dim = 0;
    for (int s0 = 0; s0 + 2 <= last; ++s0) {
      bool ok = true;
      for (int s = s0; s < last && ok; ++s)
        ok = c.history[s] == c.history[s + 1] && isos[static_cast<size_t>(s)][k - lo];
      if (ok) {
        c.stable = true;
        c.stable_stage = s0;
        c.dim = c.history[s0];
        break;
      }
    }
    out.all_stable = out.all_stable && c.stable;
  }
  return out;
}

// ---------------------------------------------------------------------
// The two directed systems
// ---------------------------------------------------------------------

// A/J^{t} for t = s+1, connected by the natural surjections.
template <class F>
DirectedSystem<F> power_quotient_system(std::shared_ptr<const Algebra<F>> alg,
                                        std::vector<Poly<F>> J) {
  auto mods = std::make_shared<std::map<int, Presentation<F>>>();
  auto gens = std::make_shared<std::vector<Poly<F>>>(std::move(J));
  auto get = [alg, gens, mods](int s) -> const Presentation<F>& {
    auto it = mods->find(s);
    if (it == mods->end())
      it = mods->emplace(s, cyclic_quotient(alg, ideal_power_gens(alg->ring(), *gens, s + 1)))
               .first;
    return it->second;
  };
  DirectedSystem<F> sys;
  sys.direction = ColimitDirection::IdealPowers;
  sys.module_at = [get](int s) { return get(s); };
  sys.map_cols = [alg](int) {
    FreeCtx<F> ctx(&alg->ring(), std::vector<int>{0});
    return std::vector<ModVec<F>>{ctx.unit(0)};
  };
  return sys;
}

// P^n(M) for n = s, connected by the truncation surjections.
template <class F>
DirectedSystem<F> parts_system(const Presentation<F>& M) {
  auto cache = std::make_shared<std::map<int, PrincipalParts<F>>>();
  auto get = [cache, M](int n) -> const PrincipalParts<F>& {
    auto it = cache->find(n);
    if (it == cache->end()) it = cache->emplace(n, principal_parts(M, n)).first;
    return it->second;
  };
  DirectedSystem<F> sys;
  sys.direction = ColimitDirection::PartsOrders;
  sys.module_at = [get](int s) { return get(s).mod; };
  sys.map_cols = [get](int s) { return get(s + 1).truncation_to(get(s)).cols(); };
  return sys;
}

// H^i_J(N) over A: lim Ext^i(A/J^t, N), stages t = 1..tmax.
template <class F>
ColimitTable local_cohomology(std::shared_ptr<const Algebra<F>> alg,
                              const std::vector<Poly<F>>& J, const Presentation<F>& N,
                              int i, int lo, int hi, int tmax, int bound) {
  for (const auto& f : J) {
    auto dg = alg->ring().homogeneous_degree(f);
    if (!dg || *dg <= 0)
      throw std::invalid_argument(
          "local cohomology: ideal generators must be homogeneous of positive degree");
  }
  if (tmax < 1) throw std::invalid_argument("local cohomology: t_max must be at least 1");
  return ext_colimit(power_quotient_system(alg, J), N, i, lo, hi, tmax - 1, bound);
}

// The i-th derived operator functor of M with values in N:
// lim Ext^i(P^n(M), N), stages n = 0..nmax.
template <class F>
ColimitTable svdb_table(const Presentation<F>& M, const Presentation<F>& N, int i, int lo,
                        int hi, int nmax, int bound) {
  if (nmax < 0) throw std::invalid_argument("svdb: n_max must be nonnegative");
  return ext_colimit(parts_system(M), N, i, lo, hi, nmax, bound);
}

// The irrelevant ideal as a generator list.
template <class F>
std::vector<Poly<F>> irrelevant_ideal(const Algebra<F>& alg) {
  std::vector<Poly<F>> out;
  for (int i = 0; i < alg.ring().nvars(); ++i) out.push_back(alg.ring().var(i));
  return out;
}

// ---------------------------------------------------------------------
// Comparison reports
// ---------------------------------------------------------------------

enum class CellVerdict { Match, Mismatch, Inconclusive };

inline CellVerdict compare_cells(const ColimitCell& a, const ColimitCell& b) {
  if (a.stable && b.stable) return a.dim == b.dim ? CellVerdict::Match : CellVerdict::Mismatch;
  return CellVerdict::Inconclusive;
}

inline const char* verdict_str(CellVerdict v) {
  switch (v) {
    case CellVerdict::Match: return "match";
    case CellVerdict::Mismatch: return "mismatch";
    default: return "inconclusive";
  }
}

struct ComparisonCell {
  int k = 0;  // reported degree
  ColimitCell lhs, rhs;
  CellVerdict verdict = CellVerdict::Inconclusive;
};

struct ComparisonReport {
  int i = 0;
  int lo = 0, hi = -1;  // reported window
  int shift = 0;        // reported degree = internal degree + shift
  std::vector<ComparisonCell> cells;
  bool any_mismatch = false;
  bool all_match = true;

  const ComparisonCell& cell(int k) const { return cells[k - lo]; }

  void finish() {
    for (auto& c : cells) {
      c.verdict = compare_cells(c.lhs, c.rhs);
      if (c.verdict == CellVerdict::Mismatch) any_mismatch = true;
      if (c.verdict != CellVerdict::Match) all_match = false;
    }
  }
};

// Degree-preserving comparison of the i-th derived operator functor of
// the canonical module with local cohomology of the doubled-ring
// canonical module along the diagonal, in cohomological index d+i.
// Internally both sides share the same degree k; the reported axis is
// j = k + a where a is minus the least generator degree of omega_R, so
// for Gorenstein R the table reads in operator degrees.  Stage n on the
// operator side is paired with diagonal power t = n+1.
template <class F>
ComparisonReport theorem_a_compare(std::shared_ptr<const Algebra<F>> alg, int i, int jlo,
                                   int jhi, int nmax, int tmax, int bound) {
  if (jlo > jhi) throw std::invalid_argument("theorem_a_compare: empty window");
  int d = alg->dimension();
  Presentation<F> R(alg, {0}, {});
  Presentation<F> omega = canonical_module(alg, bound);
  int mingen = *std::min_element(omega.gen_degs().begin(), omega.gen_degs().end());
  int shift = -mingen;
  int klo = jlo - shift, khi = jhi - shift;

  ColimitTable lhs = svdb_table(R, omega, i, klo, khi, nmax, bound);

  EnvelopingData<F> ed = enveloping_diagonal_power(alg, 0);
  Presentation<F> omegaP = canonical_module(ed.env, bound);
  int m = alg->ring().nvars();
  std::vector<Poly<F>> diag;
  for (int v = 0; v < m; ++v) diag.push_back(ed.env->ring().var(m + v));
  ColimitTable rhs = local_cohomology(ed.env, diag, omegaP, d + i, klo, khi, tmax, bound);

  ComparisonReport out;
  out.i = i;
  out.lo = jlo;
  out.hi = jhi;
  out.shift = shift;
  for (int k = klo; k <= khi; ++k) {
    ComparisonCell c;
    c.k = k + shift;
    c.lhs = lhs.cell(k);
    c.rhs = rhs.cell(k);
    out.cells.push_back(std::move(c));
  }
  out.finish();
  return out;
}

// ---------------------------------------------------------------------
// Hom presentations and the duality check at fixed order
// ---------------------------------------------------------------------

// Presentation of Hom(F, w) for a free module F with generator degrees
// a: one block of w per generator (block j twisted by a_j).
template <class F>
Presentation<F> hom_free_presentation(const Presentation<F>& w, const std::vector<int>& a) {
  std::vector<int> gd;
  std::vector<ModVec<F>> rels;
  int nw = w.ngens();
  for (size_t j = 0; j < a.size(); ++j)
    for (int m = 0; m < nw; ++m) gd.push_back(w.gen_deg(m) - a[j]);
  FreeCtx<F> ctx(&w.ring(), gd);
  for (size_t j = 0; j < a.size(); ++j) {
    for (const auto& r : w.rels()) {
      ModVec<F> v = ctx.zero();
      for (const auto& t : r.t)
        v = ctx.add(v, ctx.term(t.m, static_cast<int>(j) * nw + t.comp, t.c));
      rels.push_back(std::move(v));
    }
  }
  return Presentation<F>(w.alg_ptr(), std::move(gd), std::move(rels), w.complete_through());
}

// Hom(coker(F1 -> F0), w) presented as the kernel of the dual map
// Hom(F0, w) -> Hom(F1, w).  Throws DegreeBoundTooSmall when the kernel
// generators cannot be certified complete within the bound.
template <class F>
Presentation<F> hom_module_presentation(const Resolution<F>& res, const Presentation<F>& w,
                                        int bound) {
  if (res.nmaps() < 1)
    throw std::invalid_argument("hom_module_presentation: need at least one map");
  const auto& a = res.degs[0];
  const auto& b = res.degs[1];
  int nw = w.ngens();
  Presentation<F> H0 = hom_free_presentation(w, a);
  Presentation<F> H1 = hom_free_presentation(w, b);

  // dual of d1: source generator (j, m) has image sum_l c_{jl} e_{(l,m)}
  // where c_{jl} is the j-th component of column l of d1
  std::vector<ModVec<F>> cols;
  for (size_t j = 0; j < a.size(); ++j) {
    for (int m = 0; m < nw; ++m) {
      ModVec<F> col = H1.ctx().zero();
      for (size_t l = 0; l < b.size(); ++l) {
        Poly<F> c = res.ctx_at(0).component(res.maps[0][l], static_cast<int>(j));
        if (c.is_zero()) continue;
        col = H1.ctx().add(col, H1.ctx().from_poly(c, static_cast<int>(l) * nw + m));
      }
      cols.push_back(H1.nf(col));
    }
  }
  GradedMap<F> phi(H0, H1, std::move(cols), 0);
  KernelData<F> kd = kernel_presentation(phi, bound);
  if (!kd.gens_complete) throw DegreeBoundTooSmall(bound + 1);
  return kd.ker;
}

// Fixed-order duality: Ext^i(P^n, omega) against H^{i+1} of
// Hom(P^n, omega) at the irrelevant ideal, cell by cell on the shared
// internal degree axis.  The left side is a single Ext sheet (no
// colimit), recorded as a one-stage stable table.
template <class F>
ComparisonReport horrocks_check(std::shared_ptr<const Algebra<F>> alg, int n, int i, int lo,
                                int hi, int tmax, int bound) {
  Presentation<F> R(alg, {0}, {});
  Presentation<F> omega = canonical_module(alg, bound);
  PrincipalParts<F> pp = principal_parts(R, n);
  Resolution<F> res = resolution(pp.mod, std::max(i + 1, 1), bound);
  ExtSheet<F> lsheet = ext_sheet(res, omega, i, lo, hi);

  Presentation<F> homM = hom_module_presentation(res, omega, bound);
  ColimitTable rhs =
      local_cohomology(alg, irrelevant_ideal(*alg), homM, i + 1, lo, hi, tmax, bound);

  ComparisonReport out;
  out.i = i;
  out.lo = lo;
  out.hi = hi;
  out.shift = 0;
  for (int k = lo; k <= hi; ++k) {
    ComparisonCell c;
    c.k = k;
    c.lhs.k = k;
    c.lhs.history = {lsheet.dim_at(k)};
    c.lhs.stable = true;
    c.lhs.stable_stage = 0;
    c.lhs.dim = lsheet.dim_at(k);
    c.rhs = rhs.cell(k);
    out.cells.push_back(std::move(c));
  }
  out.finish();
  return out;
}

// ---------------------------------------------------------------------
// Depth and vanishing probes
// ---------------------------------------------------------------------

struct DepthProbe {
  int i_max = 0, d = 0;
  int witness_i = -1;       // least i > 0 with a nonzero stable cell
  int implied_depth = -1;   // min(1 + witness_i, d) when a witness exists
  bool inconclusive = false;  // an unstable cell was met before any witness
  std::vector<std::pair<int, ColimitTable>> tables;
};

// Scans lim Ext^i(P^n, R) for i = 1..i_max for the first nonzero stable
// cell; its index bounds the depth of the operator module per the
// vanishing formula.  Windowed evidence only: absence of a witness is
// reported as such, never as a depth claim.
template <class F>
DepthProbe depth_probe(std::shared_ptr<const Algebra<F>> alg, int lo, int hi, int imax,
                       int nmax, int bound) {
  Presentation<F> R(alg, {0}, {});
  DepthProbe out;
  out.i_max = imax;
  out.d = alg->dimension();
  for (int i = 1; i <= imax && out.witness_i < 0; ++i) {
    ColimitTable t = svdb_table(R, R, i, lo, hi, nmax, bound);
    for (const auto& c : t.cells) {
      if (c.stable && c.dim > 0 && out.witness_i < 0) out.witness_i = i;
      if (!c.stable) out.inconclusive = true;
    }
    out.tables.emplace_back(i, std::move(t));
  }
  if (out.witness_i > 0) {
    out.implied_depth = std::min(1 + out.witness_i, out.d);
    out.inconclusive = false;  // a stable witness settles the probe
  }
  return out;
}

// The module of first syzygies of M, presented from a two-stage
// resolution.
template <class F>
Presentation<F> syzygy_module(const Presentation<F>& M, int bound) {
  Resolution<F> res = resolution(M, 2, bound);
  if (!res.complete) throw DegreeBoundTooSmall(res.bound + 1);
  return Presentation<F>(M.alg_ptr(), res.degs[1], res.maps[1]);
}

struct VanishingCheck {
  int s = 0;
  std::vector<std::pair<int, ColimitTable>> m_tables;  // i in (s, s+2]
  ColimitTable syz_table;                              // svdb(syz M, s+2)
  std::vector<ComparisonCell> shift_cells;  // svdb(M, s+1) vs svdb(syz M, s+2)
  bool all_match = true;
  bool any_mismatch = false;
};

// Higher-functor vanishing propagation: tabulates lim Ext^i(P^n, M) just
// above the vanishing index s, and checks the syzygy shift
// dim R^{s+1}D(M) = dim R^{s+2}D(syz M) cell by cell.  The parts modules
// are always those of the ring; M sits in the value slot.
template <class F>
VanishingCheck vanishing_propagation_check(std::shared_ptr<const Algebra<F>> alg,
                                           const Presentation<F>& M, int s, int lo, int hi,
                                           int nmax, int bound) {
  VanishingCheck out;
  out.s = s;
  Presentation<F> R(alg, {0}, {});
  for (int i = s + 1; i <= s + 2; ++i)
    out.m_tables.emplace_back(i, svdb_table(R, M, i, lo, hi, nmax, bound));

  Presentation<F> syz = syzygy_module(M, bound);
  out.syz_table = svdb_table(R, syz, s + 2, lo, hi, nmax, bound);
  const ColimitTable& base = out.m_tables[0].second;
  for (int k = lo; k <= hi; ++k) {
    ComparisonCell c;
    c.k = k;
    c.lhs = base.cell(k);
    c.rhs = out.syz_table.cell(k);
    c.verdict = compare_cells(c.lhs, c.rhs);
    if (c.verdict == CellVerdict::Mismatch) out.any_mismatch = true;
    if (c.verdict != CellVerdict::Match) out.all_match = false;
    out.shift_cells.push_back(std::move(c));
  }
  return out;
}

}  // namespace dopkit

#endif
