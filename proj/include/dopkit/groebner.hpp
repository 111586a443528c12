// Degree-truncated Buchberger for submodules of graded free modules, with
// optional expression tracking (basis elements as combinations of the
// input generators), plus syzygy generators along the Schreyer recipe.
//
// All inputs are homogeneous.  A basis certified to degree D detects
// membership and supplies standard monomials in every degree <= D; when
// no S-pair ever exceeded the bound the basis is a full Groebner basis.
#ifndef DOPKIT_GROEBNER_HPP
#define DOPKIT_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "dopkit/module.hpp"

namespace dopkit {

// Sentinel degree for "exact in all degrees".
inline constexpr int kInfDeg = 1 << 28;

// Raised when an operation needs certified data beyond the configured
// degree cap; callers may retry with a larger cap.
struct DegreeBoundTooSmall : std::runtime_error {
  explicit DegreeBoundTooSmall(int needed)
      : std::runtime_error("degree bound too small; need at least " + std::to_string(needed)),
        needed(needed) {}
  int needed;
};

template <class F>
struct GB {
  FreeCtx<F> ctx;
  std::vector<ModVec<F>> g;                 // monic, interreduced, ascending lead order
  std::vector<std::vector<Poly<F>>> rep;    // rep[l][t]: g[l] = sum_t rep[l][t] * input_t
  int ninputs = 0;
  bool tracked = false;
  int certified = 0;
  bool complete = false;

  struct NFQ {
    ModVec<F> rem;
    std::vector<Poly<F>> q;  // over g: v = sum q[l]*g[l] + rem
  };

  // Full normal form: every term of the remainder is irreducible.
  NFQ nf_with_quotients(const ModVec<F>& v) const {
    NFQ out;
    out.q.assign(g.size(), Poly<F>{});
    ModVec<F> work = v, rem;
    while (!work.is_zero()) {
      const auto& lt = work.lt();
      int hit = -1;
      for (size_t l = 0; l < g.size(); ++l) {
        const auto& blt = g[l].lt();
        if (blt.comp == lt.comp && divides(blt.m, lt.m)) { hit = static_cast<int>(l); break; }
      }
      if (hit < 0) {
        rem.t.push_back(lt);
        work.t.erase(work.t.begin());
        continue;
      }
      Monomial u = quot(lt.m, g[hit].lt().m);
      typename F::Elem c = lt.c;  // basis is monic
      work = ctx.sub(work, ctx.mul_term(g[hit], u, c));
      out.q[hit] = ctx.ring().add(out.q[hit], ctx.ring().term(u, c));
    }
    out.rem = rem;
    return out;
  }

  ModVec<F> nf(const ModVec<F>& v) const { return nf_with_quotients(v).rem; }
  bool contains(const ModVec<F>& v) const { return nf(v).is_zero(); }

  // v as a combination of the original inputs (requires tracking);
  // nullopt when v does not reduce to zero.
  std::optional<std::vector<Poly<F>>> express_over_inputs(const ModVec<F>& v) const {
    NFQ d = nf_with_quotients(v);
    if (!d.rem.is_zero()) return std::nullopt;
    std::vector<Poly<F>> out(ninputs);
    const auto& R = ctx.ring();
    for (size_t l = 0; l < g.size(); ++l) {
      if (d.q[l].is_zero()) continue;
      for (int t = 0; t < ninputs; ++t)
        if (!rep[l][t].is_zero()) out[t] = R.add(out[t], R.mul(d.q[l], rep[l][t]));
    }
    return out;
  }

  // Standard monomials m*e_comp of total degree d (not divisible by any
  // lead term), in descending module order.  Requires certification at d.
  std::vector<std::pair<Monomial, int>> std_monomials(int d) const {
    if (d > certified && !complete) throw DegreeBoundTooSmall(d);
    std::vector<std::pair<Monomial, int>> out;
    for (int j = 0; j < ctx.rank(); ++j) {
      int md = d - ctx.gen_degs()[j];
      if (md < 0) continue;
      for (const auto& m : ctx.ring().monomials_of_weight(md)) {
        bool red = false;
        for (const auto& b : g) {
          if (b.lt().comp == j && divides(b.lt().m, m)) { red = true; break; }
        }
        if (!red) out.push_back({m, j});
      }
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
      return ctx.cmp(a.first, a.second, b.first, b.second) > 0;
    });
    return out;
  }
};

template <class F>
GB<F> buchberger(const FreeCtx<F>& ctx, const std::vector<ModVec<F>>& inputs, int bound,
                 bool track = false) {
  const auto& K = ctx.field();
  const auto& R = ctx.ring();

  struct Entry {
    ModVec<F> v;
    std::vector<Poly<F>> rep;
  };
  std::vector<Entry> basis;
  bool complete = true;

  // Pair queue keyed by (degree, lcm exponents, i, j): normal strategy,
  // ties broken structurally for determinism.
  using Key = std::tuple<int, std::array<std::uint8_t, kMaxVars>, int, int>;
  std::set<Key> pairs;
  auto enqueue = [&](int i, int j) {
    const auto& a = basis[i].v.lt();
    const auto& b = basis[j].v.lt();
    if (a.comp != b.comp) return;
    Monomial l = lcm(a.m, b.m);
    int deg = ctx.term_degree(l, a.comp);
    if (deg > bound) { complete = false; return; }
    pairs.insert({deg, l.e, i, j});
  };

  auto head_reduce = [&](ModVec<F> v, std::vector<Poly<F>>* q) {
    for (;;) {
      if (v.is_zero()) return v;
      const auto& lt = v.lt();
      int hit = -1;
      for (size_t l = 0; l < basis.size(); ++l) {
        const auto& blt = basis[l].v.lt();
        if (blt.comp == lt.comp && divides(blt.m, lt.m)) { hit = static_cast<int>(l); break; }
      }
      if (hit < 0) return v;
      Monomial u = quot(lt.m, basis[hit].v.lt().m);
      typename F::Elem c = lt.c;
      v = ctx.sub(v, ctx.mul_term(basis[hit].v, u, c));
      if (q) (*q)[hit] = R.add((*q)[hit], R.term(u, c));
    }
  };

  auto rep_combo = [&](const std::vector<Poly<F>>& q) {
    std::vector<Poly<F>> acc(inputs.size());
    for (size_t l = 0; l < q.size(); ++l) {
      if (q[l].is_zero()) continue;
      for (size_t t = 0; t < inputs.size(); ++t)
        if (!basis[l].rep[t].is_zero()) acc[t] = R.add(acc[t], R.mul(q[l], basis[l].rep[t]));
    }
    return acc;
  };

  auto insert = [&](ModVec<F> v, std::vector<Poly<F>> rep) {
    typename F::Elem inv = K.inv(v.lt().c);
    v = ctx.scale(v, inv);
    for (auto& p : rep) p = R.scale(p, inv);
    int idx = static_cast<int>(basis.size());
    basis.push_back({std::move(v), std::move(rep)});
    for (int i = 0; i < idx; ++i) enqueue(i, idx);
  };

  for (size_t t = 0; t < inputs.size(); ++t) {
    if (inputs[t].is_zero()) continue;
    std::vector<Poly<F>> q(basis.size());
    ModVec<F> v = head_reduce(inputs[t], track ? &q : nullptr);
    if (v.is_zero()) continue;
    std::vector<Poly<F>> rep;
    if (track) {
      rep = rep_combo(q);
      for (auto& p : rep) p = R.neg(p);
      rep[t] = R.add(rep[t], R.one());
    }
    insert(std::move(v), std::move(rep));
  }

  while (!pairs.empty()) {
    auto it = pairs.begin();
    auto [deg, lcme, i, j] = *it;
    (void)deg;
    pairs.erase(it);
    Monomial l;
    l.e = lcme;
    Monomial ui = quot(l, basis[i].v.lt().m);
    Monomial uj = quot(l, basis[j].v.lt().m);
    ModVec<F> s = ctx.sub(ctx.mul_term(basis[i].v, ui, K.one()), ctx.mul_term(basis[j].v, uj, K.one()));
    std::vector<Poly<F>> q(basis.size());
    s = head_reduce(std::move(s), track ? &q : nullptr);
    if (s.is_zero()) continue;
    std::vector<Poly<F>> rep;
    if (track) {
      rep = rep_combo(q);
      for (auto& p : rep) p = R.neg(p);
      for (size_t t = 0; t < inputs.size(); ++t) {
        rep[t] = R.add(rep[t], R.mul(R.term(ui, K.one()), basis[i].rep[t]));
        rep[t] = R.sub(rep[t], R.mul(R.term(uj, K.one()), basis[j].rep[t]));
      }
    }
    insert(std::move(s), std::move(rep));
  }

  // Interreduce to the canonical reduced basis: discard elements whose
  // lead is divisible by another lead, then fully reduce tails.
  std::vector<int> order(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return ctx.cmp(basis[a].v.lt().m, basis[a].v.lt().comp, basis[b].v.lt().m, basis[b].v.lt().comp) < 0;
  });
  std::vector<int> kept;
  for (int idx : order) {
    const auto& lt = basis[idx].v.lt();
    bool red = false;
    for (int kidx : kept) {
      const auto& blt = basis[kidx].v.lt();
      if (blt.comp == lt.comp && divides(blt.m, lt.m)) { red = true; break; }
    }
    if (!red) kept.push_back(idx);
  }

  GB<F> gb;
  gb.ctx = ctx;
  gb.ninputs = static_cast<int>(inputs.size());
  gb.tracked = track;
  gb.certified = bound;
  gb.complete = complete;
  for (int idx : kept) {
    gb.g.push_back(basis[idx].v);
    if (track) gb.rep.push_back(basis[idx].rep);
  }
  for (size_t l = 0; l < gb.g.size(); ++l) {
    ModVec<F> head = gb.ctx.term(gb.g[l].lt().m, gb.g[l].lt().comp, gb.g[l].lt().c);
    ModVec<F> work = ctx.sub(gb.g[l], head), rem;
    std::vector<Poly<F>> q(gb.g.size());
    while (!work.is_zero()) {
      const auto& lt = work.lt();
      int hit = -1;
      for (size_t m = 0; m < gb.g.size(); ++m) {
        if (m == l) continue;
        const auto& blt = gb.g[m].lt();
        if (blt.comp == lt.comp && divides(blt.m, lt.m)) { hit = static_cast<int>(m); break; }
      }
      if (hit < 0) {
        rem.t.push_back(lt);
        work.t.erase(work.t.begin());
        continue;
      }
      Monomial u = quot(lt.m, gb.g[hit].lt().m);
      typename F::Elem c = lt.c;
      work = ctx.sub(work, ctx.mul_term(gb.g[hit], u, c));
      q[hit] = R.add(q[hit], R.term(u, c));
    }
    gb.g[l] = ctx.add(head, rem);
    if (track)
      for (size_t m = 0; m < gb.g.size(); ++m) {
        if (q[m].is_zero()) continue;
        for (size_t t = 0; t < inputs.size(); ++t)
          if (!gb.rep[m][t].is_zero()) gb.rep[l][t] = R.sub(gb.rep[l][t], R.mul(q[m], gb.rep[m][t]));
      }
  }
  return gb;
}

// Generators of the syzygy module of `inputs` in degrees <= bound, as rows
// of polynomial coefficients (row[t] multiplies input_t).  Following
// Schreyer: pair syzygies of the reduced basis, pulled back to the inputs
// through the tracked expressions, plus input-redundancy relations.
template <class F>
struct SyzygyResult {
  std::vector<std::vector<Poly<F>>> rows;
  bool complete = false;    // rows generate the whole syzygy module
  int complete_through = 0; // ... and in any case all of it in degrees <= this
};

template <class F>
SyzygyResult<F> syzygies(const FreeCtx<F>& ctx, const std::vector<ModVec<F>>& inputs, int bound) {
  const auto& K = ctx.field();
  const auto& R = ctx.ring();
  GB<F> gb = buchberger(ctx, inputs, bound, true);
  SyzygyResult<F> out;
  out.complete = gb.complete;
  out.complete_through = gb.complete ? kInfDeg : bound;

  auto push_row = [&](std::vector<Poly<F>> row) {
    for (const auto& p : row)
      if (!p.is_zero()) {
        out.rows.push_back(std::move(row));
        return;
      }
  };

  // tau_ij for every same-component pair of the reduced basis, in input
  // coordinates: u_i*rep_i - u_j*rep_j - sum q_l*rep_l.
  const int nb = static_cast<int>(gb.g.size());
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      const auto& a = gb.g[i].lt();
      const auto& b = gb.g[j].lt();
      if (a.comp != b.comp) continue;
      Monomial l = lcm(a.m, b.m);
      // with a full basis every pair reduces, so take them all regardless
      // of the bound; a truncated basis only certifies pairs below it
      if (!gb.complete && ctx.term_degree(l, a.comp) > bound) continue;
      Monomial ui = quot(l, a.m), uj = quot(l, b.m);
      ModVec<F> s = ctx.sub(ctx.mul_term(gb.g[i], ui, K.one()), ctx.mul_term(gb.g[j], uj, K.one()));
      auto d = gb.nf_with_quotients(s);
      if (!d.rem.is_zero()) throw std::logic_error("S-pair below certified degree did not reduce to zero");
      std::vector<Poly<F>> row(inputs.size());
      for (int l2 = 0; l2 < nb; ++l2) {
        if (d.q[l2].is_zero()) continue;
        for (size_t t = 0; t < inputs.size(); ++t)
          if (!gb.rep[l2][t].is_zero()) row[t] = R.sub(row[t], R.mul(d.q[l2], gb.rep[l2][t]));
      }
      for (size_t t = 0; t < inputs.size(); ++t) {
        row[t] = R.add(row[t], R.mul(R.term(ui, K.one()), gb.rep[i][t]));
        row[t] = R.sub(row[t], R.mul(R.term(uj, K.one()), gb.rep[j][t]));
      }
      push_row(std::move(row));
    }

  // Input redundancy: e_t - (expression of input_t over the inputs).
  for (size_t t = 0; t < inputs.size(); ++t) {
    if (inputs[t].is_zero()) {
      std::vector<Poly<F>> row(inputs.size());
      row[t] = R.one();
      push_row(std::move(row));
      continue;
    }
    auto expr = gb.express_over_inputs(inputs[t]);
    if (!expr) { out.complete = false; continue; }
    std::vector<Poly<F>> row = std::move(*expr);
    for (auto& p : row) p = R.neg(p);
    row[t] = R.add(row[t], R.one());
    push_row(std::move(row));
  }
  return out;
}

}  // namespace dopkit

#endif
