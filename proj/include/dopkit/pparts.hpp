// Modules of principal parts ("jets") with their exact finite
// presentations, the doubled-variable algebra with its diagonal powers,
// ideal powers, and graded canonical modules.
#ifndef DOPKIT_PPARTS_HPP
#define DOPKIT_PPARTS_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dopkit/homology.hpp"

namespace dopkit {

// Pascal-triangle binomials evaluated in the field; characteristic-safe.
template <class F>
class BinomialTable {
 public:
  using Elem = typename F::Elem;

  explicit BinomialTable(const F& K) : K_(&K) {}

  const Elem& get(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("binomial out of range");
    while (static_cast<int>(rows_.size()) <= n) {
      int r = static_cast<int>(rows_.size());
      std::vector<Elem> row(r + 1, K_->one());
      for (int j = 1; j < r; ++j) row[j] = K_->add(rows_[r - 1][j - 1], rows_[r - 1][j]);
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

 private:
  const F* K_;
  std::vector<std::vector<Elem>> rows_;
};

// Coefficients of f(x+u) grouped by the u-exponent: pairs (gamma, c_gamma)
// with |gamma| <= maxtot, sorted by the structural order on gamma.
template <class F>
std::vector<std::pair<Monomial, Poly<F>>> taylor_shift(const PolyRing<F>& R,
                                                       const Poly<F>& f, int maxtot) {
  const auto& K = R.field();
  BinomialTable<F> bin(K);
  std::map<Monomial, Poly<F>> acc;
  int m = R.nvars();
  for (const auto& [a, c] : f.t) {
    // walk all gamma <= a componentwise with |gamma| <= maxtot
    std::vector<int> g(m, 0);
    for (;;) {
      int tot = 0;
      for (int i = 0; i < m; ++i) tot += g[i];
      if (tot <= maxtot) {
        typename F::Elem coef = c;
        Monomial xm = a, gm = Monomial::unit();
        for (int i = 0; i < m; ++i) {
          coef = K.mul(coef, bin.get(a.e[i], g[i]));
          xm.e[i] = static_cast<std::uint8_t>(a.e[i] - g[i]);
          gm.e[i] = static_cast<std::uint8_t>(g[i]);
        }
        auto& p = acc[gm];
        p = R.add(p, R.term(xm, coef));
      }
      // next gamma in odometer order
      int i = 0;
      while (i < m && g[i] == a.e[i]) { g[i] = 0; ++i; }
      if (i == m) break;
      ++g[i];
    }
  }
  std::vector<std::pair<Monomial, Poly<F>>> out;
  for (auto& [gm, p] : acc)
    if (!p.is_zero()) out.push_back({gm, std::move(p)});
  return out;
}

// All exponent vectors over m variables with plain total <= n, grouped by
// total ascending and lexicographically within each total.
inline std::vector<Monomial> exponents_up_to(int m, int n) {
  std::vector<Monomial> out;
  out.push_back(Monomial::unit());
  for (int t = 1; t <= n; ++t) {
    struct Rec {
      int m;
      std::vector<Monomial>* sink;
      void go(Monomial acc, int pos, int left) {
        if (pos == m - 1) {
          acc.e[pos] = static_cast<std::uint8_t>(left);
          sink->push_back(acc);
          return;
        }
        for (int k = left; k >= 0; --k) {
          Monomial a = acc;
          a.e[pos] = static_cast<std::uint8_t>(k);
          go(a, pos + 1, left - k);
        }
      }
    } rec{m, &out};
    rec.go(Monomial::unit(), 0, t);
  }
  return out;
}

// P^n(M): generators e_{alpha,t} over the generators of M, alpha running
// over u-exponents with |alpha| <= n.  Relations are the truncations of
// u^beta * r(x+u) for the defining relations r (of both the ideal and M),
// which presents the module exactly; the plain ideal rows arrive through
// the presentation's implicit block.
template <class F>
struct PrincipalParts {
  int order = 0;
  std::shared_ptr<const Algebra<F>> alg;
  std::vector<Monomial> alphas;          // |alpha| <= order, ascending total then lex
  std::map<Monomial, int> alpha_pos;
  std::vector<int> src_degs;             // generator degrees of the underlying module
  Presentation<F> mod;                   // left module structure

  int gen_index(int apos, int t) const {
    return apos * static_cast<int>(src_degs.size()) + t;
  }

  // d: M -> P^n(M), f*e_t |-> sum_gamma c_gamma(x) e_{gamma,t}.  Additive
  // and degree-preserving but only linear over the base field.
  ModVec<F> universal(const ModVec<F>& v) const {
    const auto& ring = alg->ring();
    ModVec<F> out = mod.ctx().zero();
    for (const auto& te : v.t) {
      Poly<F> single = ring.term(te.m, te.c);
      for (const auto& [gamma, cg] : taylor_shift(ring, single, order)) {
        int ap = alpha_pos.at(gamma);
        out = mod.ctx().add(out, mod.ctx().from_poly(cg, gen_index(ap, te.comp)));
      }
    }
    return out;
  }

  // Right multiplication by x_i (through the second factor):
  // e_{alpha,t} -> x_i e_{alpha,t} + e_{alpha+eps_i,t}, the overflow term
  // truncated away.  A degree-w_i endomorphism of the left structure.
  GradedMap<F> right_multiplication(int i) const {
    const auto& K = alg->field();
    std::vector<ModVec<F>> cols;
    for (size_t a = 0; a < alphas.size(); ++a)
      for (size_t t = 0; t < src_degs.size(); ++t) {
        int idx = gen_index(static_cast<int>(a), static_cast<int>(t));
        ModVec<F> col = mod.ctx().term(Monomial::var(i, 1), idx, K.one());
        Monomial up = mul(alphas[a], Monomial::var(i, 1));
        if (up.total() <= order)
          col = mod.ctx().add(col, mod.ctx().unit(gen_index(alpha_pos.at(up),
                                                            static_cast<int>(t))));
        cols.push_back(std::move(col));
      }
    return GradedMap<F>(mod, mod, std::move(cols), alg->ring().weights()[i]);
  }

  // The truncation surjection onto a lower order.
  GradedMap<F> truncation_to(const PrincipalParts& lower) const {
    if (lower.order > order || lower.src_degs != src_degs)
      throw std::invalid_argument("truncation_to: incompatible targets");
    std::vector<ModVec<F>> cols;
    for (size_t a = 0; a < alphas.size(); ++a)
      for (size_t t = 0; t < src_degs.size(); ++t) {
        if (alphas[a].total() <= lower.order)
          cols.push_back(lower.mod.ctx().unit(
              lower.gen_index(lower.alpha_pos.at(alphas[a]), static_cast<int>(t))));
        else
          cols.push_back(lower.mod.ctx().zero());
      }
    return GradedMap<F>(mod, lower.mod, std::move(cols), 0);
  }
};

template <class F>
PrincipalParts<F> principal_parts(const Presentation<F>& M, int n) {
  if (!M.is_exact())
    throw std::invalid_argument("principal parts need an exact presentation");
  auto alg = M.alg_ptr();
  const auto& ring = alg->ring();
  int m = ring.nvars();
  int mt = M.ngens();

  PrincipalParts<F> pp{n, alg, exponents_up_to(m, n), {}, M.gen_degs(),
                       Presentation<F>::free_module(alg, {})};
  for (size_t a = 0; a < pp.alphas.size(); ++a)
    pp.alpha_pos[pp.alphas[a]] = static_cast<int>(a);

  std::vector<int> degs;
  for (const auto& al : pp.alphas)
    for (int t = 0; t < mt; ++t) degs.push_back(ring.weight(al) + M.gen_deg(t));

  FreeCtx<F> ctx(&ring, degs);
  std::vector<ModVec<F>> rels;

  // truncations of u^beta * g(x+u) e_t for ideal generators g
  for (const auto& g : alg->ideal()) {
    auto exp = taylor_shift(ring, g, n);
    for (const auto& beta : pp.alphas)
      for (int t = 0; t < mt; ++t) {
        ModVec<F> row = ctx.zero();
        for (const auto& [gamma, cg] : exp) {
          Monomial gb = mul(gamma, beta);
          if (gb.total() > n) continue;
          row = ctx.add(row, ctx.from_poly(cg, pp.gen_index(pp.alpha_pos[gb], t)));
        }
        if (!row.is_zero()) rels.push_back(std::move(row));
      }
  }

  // truncations of u^beta * r(x+u) for the module relations r
  for (const auto& r : M.rels()) {
    std::vector<std::pair<int, std::vector<std::pair<Monomial, Poly<F>>>>> comps;
    for (int t = 0; t < mt; ++t) {
      Poly<F> phi = M.ctx().component(r, t);
      if (!phi.is_zero()) comps.push_back({t, taylor_shift(ring, phi, n)});
    }
    for (const auto& beta : pp.alphas) {
      ModVec<F> row = ctx.zero();
      for (const auto& [t, exp] : comps)
        for (const auto& [gamma, cg] : exp) {
          Monomial gb = mul(gamma, beta);
          if (gb.total() > n) continue;
          row = ctx.add(row, ctx.from_poly(cg, pp.gen_index(pp.alpha_pos[gb], t)));
        }
      if (!row.is_zero()) rels.push_back(std::move(row));
    }
  }

  pp.mod = Presentation<F>(alg, degs, std::move(rels), kInfDeg);
  return pp;
}

template <class F>
PrincipalParts<F> principal_parts_of_ring(std::shared_ptr<const Algebra<F>> alg, int n) {
  Presentation<F> cyc(alg, {0}, {});
  return principal_parts(cyc, n);
}

// Doubled-variable algebra K[x,u]/(I(x) + I(x+u)) together with the
// quotient by the n+1 power of the diagonal ideal (u).
template <class F>
struct EnvelopingData {
  std::shared_ptr<const Algebra<F>> env;
  Presentation<F> diag_power;  // cyclic, relations u^alpha with |alpha| = n+1
  int order = 0;
};

template <class F>
EnvelopingData<F> enveloping_diagonal_power(std::shared_ptr<const Algebra<F>> R, int n) {
  const auto& ring = R->ring();
  int m = ring.nvars();
  if (2 * m > kMaxVars)
    throw std::invalid_argument("doubled ring would exceed the variable limit");

  std::vector<std::string> names = ring.names();
  std::vector<int> weights = ring.weights();
  for (int i = 0; i < m; ++i) {
    names.push_back(ring.names()[i] + "'");
    weights.push_back(ring.weights()[i]);
  }
  PolyRing<F> T(ring.field(), names, weights);

  auto pair_mono = [m](const Monomial& xa, const Monomial& ub) {
    Monomial w = Monomial::unit();
    for (int i = 0; i < m; ++i) {
      w.e[i] = xa.e[i];
      w.e[m + i] = ub.e[i];
    }
    return w;
  };

  std::vector<Poly<F>> gens;
  for (const auto& g : R->ideal()) {
    Poly<F> first, second;
    for (const auto& [a, c] : g.t)
      first = T.add(first, T.term(pair_mono(a, Monomial::unit()), c));
    for (const auto& [gamma, cg] : taylor_shift(ring, g, *ring.homogeneous_degree(g)))
      for (const auto& [a, c] : cg.t)
        second = T.add(second, T.term(pair_mono(a, gamma), c));
    gens.push_back(std::move(first));
    gens.push_back(std::move(second));
  }
  auto env = std::make_shared<Algebra<F>>(T, std::move(gens));

  std::vector<ModVec<F>> rels;
  FreeCtx<F> ctx(&env->ring(), std::vector<int>{0});
  for (const auto& al : exponents_up_to(m, n + 1))
    if (al.total() == n + 1)
      rels.push_back(ctx.term(pair_mono(Monomial::unit(), al), 0,
                              R->field().one()));
  EnvelopingData<F> out{env, Presentation<F>(env, {0}, std::move(rels)), n};
  return out;
}

// Generators of J^t: all t-fold products of the given generators.
template <class F>
std::vector<Poly<F>> ideal_power_gens(const PolyRing<F>& R, const std::vector<Poly<F>>& J,
                                      int t) {
  if (t == 0) return {R.one()};
  std::vector<Poly<F>> out;
  struct Rec {
    const PolyRing<F>* R;
    const std::vector<Poly<F>>* J;
    std::vector<Poly<F>>* out;
    void go(size_t from, int left, const Poly<F>& acc) {
      if (left == 0) {
        out->push_back(acc);
        return;
      }
      for (size_t j = from; j < J->size(); ++j) go(j, left - 1, R->mul(acc, (*J)[j]));
    }
  } rec{&R, &J, &out};
  rec.go(0, t, R.one());
  return out;
}

// R/(f_1..f_k) as a cyclic module over R.
template <class F>
Presentation<F> cyclic_quotient(std::shared_ptr<const Algebra<F>> alg,
                                const std::vector<Poly<F>>& fs) {
  FreeCtx<F> ctx(&alg->ring(), std::vector<int>{0});
  std::vector<ModVec<F>> rels;
  for (const auto& f : fs)
    if (!f.is_zero()) rels.push_back(ctx.from_poly(f, 0));
  return Presentation<F>(alg, {0}, std::move(rels));
}

struct NotCohenMacaulay : std::runtime_error {
  explicit NotCohenMacaulay(const std::string& what) : std::runtime_error(what) {}
};

// The module itself, with scalars restricted to the ambient polynomial
// ring (the ideal rows become explicit relations).
template <class F>
Presentation<F> restrict_to_poly_ring(const Presentation<F>& M) {
  auto salg = std::make_shared<Algebra<F>>(M.ring(), std::vector<Poly<F>>{});
  return Presentation<F>(salg, M.gen_degs(), M.full_rels(), M.complete_through());
}

// Graded canonical module of a Cohen-Macaulay algebra: the top Ext of R
// against the ambient ring, twisted so the polynomial ring itself gets
// its generator in degree sum-of-weights.  Computed as the cokernel of
// the transposed last map of a minimal resolution over the ambient ring.
template <class F>
Presentation<F> canonical_module(std::shared_ptr<const Algebra<F>> R, int bound) {
  int c = R->ring().nvars() - R->dimension();
  int s = R->sum_weights();
  if (c == 0) {
    if (!R->ideal().empty())
      throw NotCohenMacaulay("codimension zero with a nonzero defining ideal");
    return Presentation<F>(R, {s}, {});
  }
  Presentation<F> rs = cyclic_quotient(
      std::make_shared<const Algebra<F>>(R->ring(), std::vector<Poly<F>>{}),
      R->ideal());
  Resolution<F> res = resolution(rs, c + 1, bound);
  if (!res.complete) throw DegreeBoundTooSmall(res.bound + 1);
  if (!res.maps[c].empty())
    throw NotCohenMacaulay("resolution is longer than the codimension");
  if (res.maps[c - 1].empty())
    throw NotCohenMacaulay("resolution is shorter than the codimension");

  const auto& last = res.maps[c - 1];  // columns of F_c -> F_{c-1}
  std::vector<int> dual_degs;
  for (int d : res.degs[c]) dual_degs.push_back(-d);
  FreeCtx<F> dctx(&R->ring(), dual_degs);
  std::vector<ModVec<F>> rows;
  for (size_t t = 0; t < res.degs[c - 1].size(); ++t) {
    ModVec<F> row = dctx.zero();
    for (size_t l = 0; l < last.size(); ++l) {
      Poly<F> p = res.ctx_at(c - 1).component(last[l], static_cast<int>(t));
      if (!p.is_zero()) row = dctx.add(row, dctx.from_poly(p, static_cast<int>(l)));
    }
    if (!row.is_zero()) rows.push_back(std::move(row));
  }
  Presentation<F> raw(R, dual_degs, std::move(rows));
  return raw.twist(-s);
}

}  // namespace dopkit

#endif
