// Command-line driver.  Every subcommand reads a ring description file,
// runs one analysis, and renders a deterministic Report to stdout;
// diagnostics go to stderr.  Exit codes: 0 success, 1 inconclusive at the
// given bounds, 2 error.
#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "dopkit/cohomology.hpp"
#include "dopkit/diffops.hpp"
#include "dopkit/pool.hpp"
#include "dopkit/reduction.hpp"
#include "dopkit/report.hpp"
#include "dopkit/ringfile.hpp"
#include "dopkit/version.hpp"

namespace {

using namespace dopkit;

struct Opts {
  std::string ringfile;
  std::string window;
  int order = -1;
  int index = 0;   // --i
  int tmax = -1;   // -1: window width + 3
  int nmax = -1;   // -1: window width + 3
  int cap = -1;    // --degree-cap; -1: derived
  int e = 1;       // Frobenius power
  std::string primes;
  std::string format = "tsv";
  int workers = 1;
};

std::pair<int, int> parse_window(const std::string& s) {
  auto colon = s.find(':', 1);  // LO may start with '-'
  if (colon == std::string::npos)
    throw std::invalid_argument("window must be LO:HI, got '" + s + "'");
  int lo = 0, hi = 0;
  try {
    lo = std::stoi(s.substr(0, colon));
    hi = std::stoi(s.substr(colon + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("window must be LO:HI with integers, got '" + s + "'");
  }
  if (lo > hi) throw std::invalid_argument("window lo " + std::to_string(lo) +
                                           " exceeds hi " + std::to_string(hi));
  return {lo, hi};
}

std::vector<long> parse_primes(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stol(tok));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad prime '" + tok + "' in --primes");
    }
  }
  if (out.empty()) throw std::invalid_argument("--primes needs a comma-separated list");
  return out;
}

int max_rel_degree(const RingFile& rf) {
  // Worst case for defaults: degree of the longest relation body is not
  // known before parsing over a field; use string length as a crude cap
  // only when relations exist.
  return rf.rels.empty() ? 0 : 6;
}

// Global degree cap: explicit flag wins; otherwise derived so it covers
// the window, the requested orders/stages, and relation degrees.
int derive_cap(const Opts& o, const RingFile& rf, int lo, int hi, int order, int stages) {
  if (o.cap > 0) {
    int need = std::max({order, stages, hi, -lo, 1});
    if (o.cap < need)
      throw std::invalid_argument("--degree-cap " + std::to_string(o.cap) +
                                  " is below another requested bound (" + std::to_string(need) +
                                  ")");
    return o.cap;
  }
  return std::max({24, hi - lo + 8, hi + order + 8, stages + hi + 8}) + max_rel_degree(rf);
}

std::string one_line(const std::string& text) {
  std::string out = text;
  std::replace(out.begin(), out.end(), '\n', ' ');
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

void echo_base(Report& rep, const RingFile& rf, const Opts& o, int lo, int hi, int cap) {
  rep.add_config("ring", one_line(rf.canonical_text()));
  rep.add_config("window", std::to_string(lo) + ":" + std::to_string(hi));
  rep.add_config("degree_cap", cap);
  rep.add_config("workers", o.workers);
  rep.add_config("format", o.format);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string cell_dim(const ColimitCell& c) { return c.stable ? std::to_string(c.dim) : "-"; }

// Field dispatch for commands that run over QQ or a prime field.  The
// algebra is handed over as a pointer-to-const so it deduces cleanly in
// the library templates.
template <class Fn>
int with_field(const RingFile& rf, Fn&& fn) {
  if (rf.kind == FieldKind::QQ) {
    std::shared_ptr<const Algebra<Rationals>> a = build_algebra(rf, Rationals());
    return fn(a);
  }
  if (rf.kind == FieldKind::Fp) {
    std::shared_ptr<const Algebra<PrimeField>> a =
        build_algebra(rf, PrimeField(static_cast<std::uint32_t>(rf.p)));
    return fn(a);
  }
  throw std::invalid_argument("field ZZ descriptions are only accepted by torsion-scan");
}

void emit(const Report& rep, const std::string& format) { std::fputs(rep.render(format).c_str(), stdout); }

// ----------------------------------------------------------------- dops
int cmd_dops(const RingFile& rf, const Opts& o) {
  int order = o.order >= 0 ? o.order : 2;
  auto [lo, hi] = parse_window(o.window.empty() ? std::to_string(-order) + ":" + std::to_string(order)
                                                : o.window);
  int cap = derive_cap(o, rf, lo, hi, order, 0);
  return with_field(rf, [&](auto alg) {
    using F = std::decay_t<decltype(alg->field())>;
    Presentation<F> R(alg, {0}, {});
    DiffOps<F> ops(R, R, order, lo, hi);
    Report rep;
    rep.command = "dops";
    rep.add_config("order", order);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"order", "degree", "dim"};
    for (int n = 0; n <= order; ++n)
      for (int k = lo; k <= hi; ++k)
        rep.add_row({std::to_string(n), std::to_string(k), std::to_string(ops.dim(n, k))});
    emit(rep, o.format);
    return 0;
  });
}

// ----------------------------------------------------------------- svdb
int cmd_svdb(const RingFile& rf, const Opts& o) {
  auto [lo, hi] = parse_window(o.window.empty() ? "-3:3" : o.window);
  int nmax = o.nmax > 0 ? o.nmax : (hi - lo) + 3;
  int cap = derive_cap(o, rf, lo, hi, nmax, 0);
  return with_field(rf, [&](auto alg) {
    using F = std::decay_t<decltype(alg->field())>;
    Presentation<F> R(alg, {0}, {});
    auto t = svdb_table(R, R, o.index, lo, hi, nmax, cap);
    Report rep;
    rep.command = "svdb";
    rep.add_config("i", o.index);
    rep.add_config("nmax", nmax);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "dim", "stable", "stable_stage", "history"};
    for (const auto& c : t.cells)
      rep.add_row({std::to_string(c.k), cell_dim(c), c.stable ? "yes" : "no",
                   c.stable ? std::to_string(c.stable_stage) : "-", join_ints(c.history)});
    if (!t.all_stable)
      rep.add_note("inconclusive: some cells did not stabilize by stage " +
                   std::to_string(t.stages - 1) + "; raise --nmax or --degree-cap");
    emit(rep, o.format);
    return t.all_stable ? 0 : 1;
  });
}

// ------------------------------------------------------------------- lc
int cmd_lc(const RingFile& rf, const Opts& o) {
  auto [lo, hi] = parse_window(o.window.empty() ? "-3:3" : o.window);
  int tmax = o.tmax > 0 ? o.tmax : (hi - lo) + 3;
  int cap = derive_cap(o, rf, lo, hi, tmax, 0);
  return with_field(rf, [&](auto alg) {
    using F = std::decay_t<decltype(alg->field())>;
    Presentation<F> R(alg, {0}, {});
    auto t = local_cohomology(alg, irrelevant_ideal(*alg), R, o.index, lo, hi, tmax, cap);
    Report rep;
    rep.command = "lc";
    rep.add_config("i", o.index);
    rep.add_config("tmax", tmax);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "dim", "stable", "stable_stage", "history"};
    for (const auto& c : t.cells)
      rep.add_row({std::to_string(c.k), cell_dim(c), c.stable ? "yes" : "no",
                   c.stable ? std::to_string(c.stable_stage) : "-", join_ints(c.history)});
    if (!t.all_stable)
      rep.add_note("inconclusive: some cells did not stabilize by stage " +
                   std::to_string(t.stages - 1) + "; raise --tmax or --degree-cap");
    emit(rep, o.format);
    return t.all_stable ? 0 : 1;
  });
}

// ------------------------------------------------------------ theorem-a
int cmd_theorem_a(const RingFile& rf, const Opts& o) {
  auto [lo, hi] = parse_window(o.window.empty() ? "-3:3" : o.window);
  int nmax = o.nmax > 0 ? o.nmax : (hi - lo) + 3;
  int tmax = o.tmax > 0 ? o.tmax : (hi - lo) + 3;
  int cap = derive_cap(o, rf, lo, hi, std::max(nmax, tmax) + o.index + 2, 0);
  return with_field(rf, [&](auto alg) {
    auto repc = theorem_a_compare(alg, o.index, lo, hi, nmax, tmax, cap);
    Report rep;
    rep.command = "theorem-a";
    rep.add_config("i", o.index);
    rep.add_config("nmax", nmax);
    rep.add_config("tmax", tmax);
    rep.add_config("shift", repc.shift);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree",    "lhs_dim",    "lhs_stable", "rhs_dim",
                   "rhs_stable", "verdict",    "lhs_history", "rhs_history"};
    bool any_inconclusive = false;
    for (const auto& c : repc.cells) {
      rep.add_row({std::to_string(c.k), cell_dim(c.lhs), c.lhs.stable ? "yes" : "no",
                   cell_dim(c.rhs), c.rhs.stable ? "yes" : "no", verdict_str(c.verdict),
                   join_ints(c.lhs.history), join_ints(c.rhs.history)});
      if (c.verdict == CellVerdict::Inconclusive) any_inconclusive = true;
    }
    if (repc.any_mismatch) rep.add_note("MISMATCH: at least one stable cell disagrees");
    if (any_inconclusive)
      rep.add_note("inconclusive cells present; raise --nmax/--tmax to stabilize");
    emit(rep, o.format);
    if (repc.any_mismatch) return 0;  // conclusive result, reported in the table
    return any_inconclusive ? 1 : 0;
  });
}

// ------------------------------------------------------------- horrocks
int cmd_horrocks(const RingFile& rf, const Opts& o) {
  int order = o.order >= 0 ? o.order : 1;
  auto [lo, hi] = parse_window(o.window.empty() ? "-1:1" : o.window);
  int tmax = o.tmax > 0 ? o.tmax : (hi - lo) + 3;
  int cap = derive_cap(o, rf, lo, hi, std::max(order, tmax) + o.index + 2, 0);
  return with_field(rf, [&](auto alg) {
    auto repc = horrocks_check(alg, order, o.index, lo, hi, tmax, cap);
    Report rep;
    rep.command = "horrocks";
    rep.add_config("order", order);
    rep.add_config("i", o.index);
    rep.add_config("tmax", tmax);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "ext_dim", "lc_dim", "lc_stable", "verdict", "lc_history"};
    bool any_inconclusive = false;
    for (const auto& c : repc.cells) {
      rep.add_row({std::to_string(c.k), std::to_string(c.lhs.dim), cell_dim(c.rhs),
                   c.rhs.stable ? "yes" : "no", verdict_str(c.verdict),
                   join_ints(c.rhs.history)});
      if (c.verdict == CellVerdict::Inconclusive) any_inconclusive = true;
    }
    if (repc.any_mismatch) rep.add_note("MISMATCH: at least one stable cell disagrees");
    emit(rep, o.format);
    if (repc.any_mismatch) return 0;
    return any_inconclusive ? 1 : 0;
  });
}

// -------------------------------------------------------------- dsimple
int cmd_dsimple(const RingFile& rf, const Opts& o) {
  int order = o.order >= 0 ? o.order : 2;
  auto [lo, hi] = parse_window(o.window.empty() ? std::to_string(-order) + ":0" : o.window);
  if (hi != 0) throw std::invalid_argument("dsimple probes degrees -D..0; window must end at 0");
  int D = -lo;
  int cap = derive_cap(o, rf, lo, hi, order, 0);
  return with_field(rf, [&](auto alg) {
    auto pr = d_simplicity_probe(alg, order, D);
    Report rep;
    rep.command = "dsimple";
    rep.add_config("order", order);
    rep.add_config("depth", D);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "dim_ops", "dim_residue", "image_rank", "surjective"};
    for (const auto& c : pr.cells)
      rep.add_row({std::to_string(c.k), std::to_string(c.dim_ops), std::to_string(c.dim_residue),
                   std::to_string(c.image_rank), c.surjective() ? "yes" : "no"});
    if (pr.simple_up_to_bound)
      rep.add_note("SimpleUpToBound (n=" + std::to_string(order) + ", D=" + std::to_string(D) +
                   ")");
    else
      rep.add_note("Obstruction in degree " + std::to_string(pr.obstruction_degree) +
                   ": cokernel dimension " + std::to_string(pr.obstruction_dim));
    emit(rep, o.format);
    return 0;
  });
}

// ------------------------------------------------------------ frobenius
int cmd_frobenius(const RingFile& rf, const Opts& o) {
  if (rf.kind != FieldKind::Fp)
    throw std::invalid_argument("frobenius requires a prime-field ring description (field Fp p)");
  auto [lo, hi] = parse_window(o.window.empty() ? "0:0" : o.window);
  if (o.e < 1) throw std::invalid_argument("--e must be at least 1");
  long q = 1;
  for (int j = 0; j < o.e; ++j) {
    q *= rf.p;
    if (q > 256) throw std::invalid_argument("p^e too large (max 256)");
  }
  int cap = derive_cap(o, rf, lo, hi, static_cast<int>(q) * 3, 0);
  return with_field(rf, [&](auto alg) {
    using F = std::decay_t<decltype(alg->field())>;
    int nvars = alg->ring().nvars();
    int order_cap = o.order >= 0 ? o.order : nvars * (static_cast<int>(q) - 1);
    Presentation<F> R(alg, {0}, {});

    Report rep;
    rep.command = "frobenius";
    rep.add_config("e", o.e);
    rep.add_config("q", q);
    rep.add_config("order_cap", order_cap);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "index", "certified_order", "image_graded_sum"};

    const auto& ring = alg->ring();
    auto to_poly = [&](const ModVec<F>& v) {
      Poly<F> p = ring.zero();
      for (const auto& t : v.t) p = ring.add(p, ring.term(t.m, t.c));
      return p;
    };
    int wmax = *std::max_element(ring.weights().begin(), ring.weights().end());
    int dtest = 3 * (static_cast<int>(q) - 1) + 1;
    int ahi = hi + dtest + (order_cap + 2) * wmax;
    for (int k = lo; k <= hi; ++k) {
      auto cell = frobenius_cell(*alg, static_cast<int>(q), k);
      for (int idx = 0; idx < cell.dim(); ++idx) {
        auto vals = frobenius_values(cell, *alg, idx);
        // wrap the digit action as a windowed K-linear action on R
        WindowedAction<F> act =
            windowed_action<F>(R, k, 0, ahi, [&](const ModVec<F>& v) {
              return R.ctx().from_poly(
                  frobenius_apply(cell, *alg, vals, static_cast<int>(q), to_poly(v)), 0);
            });
        auto ord = certified_order(R, act, order_cap);
        // graded-sum test: a graded-piece sum hits each R_d either fully
        // or not at all; a strictly partial image in some degree is the
        // witness that it does not split along the grading.
        bool partial = false;
        for (int d = 0; d <= dtest && !partial; ++d) {
          int full = R.hilbert(d);
          if (full == 0) continue;
          RankTracker<F> rt(alg->field());
          const Mat<F>& m = act.at(d);
          for (int c = 0; c < m.nc; ++c) rt.add(m.col(c));
          if (rt.rank() > 0 && rt.rank() < full) partial = true;
        }
        rep.add_row({std::to_string(k), std::to_string(idx),
                     ord ? std::to_string(*ord) : (">" + std::to_string(order_cap)),
                     partial ? "no" : "yes"});
      }
      if (cell.dim() == 0) rep.add_note("degree " + std::to_string(k) + ": no operators");
    }
    emit(rep, o.format);
    return 0;
  });
}

// ---------------------------------------------------------- torsion-scan
int cmd_torsion_scan(const RingFile& rf, const Opts& o) {
  if (o.order < 0) throw std::invalid_argument("torsion-scan requires --order");
  if (o.primes.empty()) throw std::invalid_argument("torsion-scan requires --primes");
  auto primes = parse_primes(o.primes);
  auto [lo, hi] = parse_window(o.window.empty() ? "0:0" : o.window);
  int cap = derive_cap(o, rf, lo, hi, o.order, 0);
  auto t = torsion_scan(rf, primes, o.order, lo, hi, cap);
  Report rep;
  rep.command = "torsion-scan";
  rep.add_config("order", o.order);
  rep.add_config("primes", o.primes);
  echo_base(rep, rf, o, lo, hi, cap);
  rep.columns = {"prime", "order", "degree", "dimQ", "dimFp", "excess", "verdict"};
  for (const auto& s : t.slices) {
    if (s.bad && s.cells.empty()) {
      rep.add_row({std::to_string(s.p), "-", "-", "-", "-", "-", "BadPrime"});
      continue;
    }
    for (const auto& c : s.cells)
      rep.add_row({std::to_string(s.p), std::to_string(c.n), std::to_string(c.k),
                   std::to_string(c.dim_q), std::to_string(c.dim_p), std::to_string(c.excess),
                   verdict_str(c.verdict)});
  }
  rep.add_note(std::string("assumes: ") + kTorsionHypotheses);
  rep.add_note(std::string("witnesses are reported ") + kWitnessQualifier);
  for (const auto& s : t.slices)
    if (s.bad) rep.add_note("p=" + std::to_string(s.p) + " bad: " + s.diagnostic);
  std::string wp;
  for (long p : t.witness_primes) wp += (wp.empty() ? "" : ",") + std::to_string(p);
  rep.add_note("witness primes: " + (wp.empty() ? std::string("none") : wp));
  emit(rep, o.format);
  return 0;
}

// ---------------------------------------------------------------- depth
int cmd_depth(const RingFile& rf, const Opts& o) {
  auto [lo, hi] = parse_window(o.window.empty() ? "-3:1" : o.window);
  return with_field(rf, [&](auto alg) {
    int d = alg->dimension();
    int imax = o.index > 0 ? o.index : std::max(1, d - 1);
    int nmax = o.nmax > 0 ? o.nmax : (hi - lo) + 3;
    int cap = derive_cap(o, rf, lo, hi, imax + nmax + 2, 0);
    auto pr = depth_probe(alg, lo, hi, imax, nmax, cap);
    Report rep;
    rep.command = "depth";
    rep.add_config("i_max", imax);
    rep.add_config("nmax", nmax);
    rep.add_config("dimension", d);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"i", "degree", "dim", "stable", "history"};
    for (const auto& [i, table] : pr.tables)
      for (const auto& c : table.cells)
        rep.add_row({std::to_string(i), std::to_string(c.k), cell_dim(c),
                     c.stable ? "yes" : "no", join_ints(c.history)});
    if (pr.inconclusive)
      rep.add_note("inconclusive: unstable cells before any witness; raise bounds");
    else if (pr.witness_i > 0)
      rep.add_note("nonvanishing witness at i=" + std::to_string(pr.witness_i) +
                   "; implied depth " + std::to_string(pr.implied_depth));
    else
      rep.add_note("no obstruction found up to bounds");
    emit(rep, o.format);
    return pr.inconclusive ? 1 : 0;
  });
}

// ------------------------------------------------------------ leftright
int cmd_leftright(const RingFile& rf, const Opts& o) {
  int order = o.order >= 0 ? o.order : 2;
  auto [lo, hi] = parse_window(o.window.empty() ? "-3:1" : o.window);
  int cap = derive_cap(o, rf, lo, hi, order, 0);
  return with_field(rf, [&](auto alg) {
    using F = std::decay_t<decltype(alg->field())>;
    Presentation<F> R(alg, {0}, {});
    PrincipalParts<F> pp = principal_parts(R, order);
    auto rows = left_right_structure(R, pp, lo, hi);
    Report rep;
    rep.command = "leftright";
    rep.add_config("order", order);
    echo_base(rep, rf, o, lo, hi, cap);
    rep.columns = {"degree", "dim", "left_min_gens", "right_min_gens"};
    int total = 0, tleft = 0, tright = 0;
    for (const auto& r : rows) {
      rep.add_row({std::to_string(r.k), std::to_string(r.dim), std::to_string(r.left_min),
                   std::to_string(r.right_min)});
      total += r.dim;
      tleft += r.left_min;
      tright += r.right_min;
    }
    rep.add_note("total dim " + std::to_string(total) + "; left minimal generators " +
                 std::to_string(tleft) + "; right minimal generators " + std::to_string(tright));
    emit(rep, o.format);
    return 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graded differential operator and local cohomology calculator"};
  app.set_version_flag("--version", dopkit::version());
  app.require_subcommand(1);

  Opts o;
  std::vector<std::pair<CLI::App*, std::function<int(const RingFile&, const Opts&)>>> cmds;

  auto add = [&](const char* name, const char* desc, auto fn, bool window_cmd = true) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("ring", o.ringfile, "ring description file")
        ->required()
        ->check(CLI::ExistingFile);
    if (window_cmd) sub->add_option("--window", o.window, "degree window LO:HI");
    sub->add_option("--order", o.order, "operator order bound");
    sub->add_option("--i", o.index, "cohomological index");
    sub->add_option("--tmax", o.tmax, "ideal-power stage bound (default: window width + 3)");
    sub->add_option("--nmax", o.nmax, "parts-order stage bound (default: window width + 3)");
    sub->add_option("--primes", o.primes, "comma-separated prime list");
    sub->add_option("--e", o.e, "Frobenius power e (q = p^e)");
    sub->add_option("--degree-cap", o.cap, "global degree bound for Groebner/resolution work");
    sub->add_option("--format", o.format, "output format: tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));
    sub->add_option("--workers", o.workers, "worker pool size")->check(CLI::Range(1, 64));
    cmds.push_back({sub, fn});
    return sub;
  };

  add("dops", "table of operator-cell dimensions D^n(R,R) over a window", cmd_dops);
  add("svdb", "derived operator functor: colimit Ext^i(P^n, R) per degree", cmd_svdb);
  add("lc", "local cohomology H^i at the irrelevant ideal per degree", cmd_lc);
  add("theorem-a", "compare the derived functor with diagonal local cohomology", cmd_theorem_a);
  add("horrocks", "compare Ext^i(P^n, w) with H^{i+1} of the Hom module", cmd_horrocks);
  add("dsimple", "simplicity probe: residue surjectivity in degrees -D..0", cmd_dsimple);
  add("frobenius", "prime-field operators linear over q-th powers", cmd_frobenius);
  add("torsion-scan", "compare QQ and F_p fibers of an integer family", cmd_torsion_scan);
  add("depth", "first nonvanishing derived functor as a depth obstruction", cmd_depth);
  add("leftright", "minimal generators of the two module structures on D^n", cmd_leftright);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  try {
    dopkit::pool_workers() = o.workers;
    for (auto& [sub, fn] : cmds)
      if (sub->parsed()) return fn(dopkit::load_ring_file(o.ringfile), o);
    std::fprintf(stderr, "error: no command\n");
    return 2;
  } catch (const dopkit::DegreeBoundTooSmall& e) {
    std::fprintf(stderr, "error: %s\nhint: rerun with --degree-cap %d or higher\n", e.what(),
                 e.needed + 8);
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
