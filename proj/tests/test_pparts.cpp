#include <doctest.h>

#include "dopkit/pparts.hpp"
#include "helpers.hpp"

using namespace th;
using dopkit::FreeCtx;
using dopkit::Monomial;
using dopkit::Presentation;

using QPres = Presentation<Rationals>;

namespace {

int total_dim(const QPres& m, int up_to) {
  int s = 0;
  for (int d = 0; d <= up_to; ++d) s += m.hilbert(d);
  return s;
}

}  // namespace

TEST_CASE("taylor shift: binomial expansion of x^2") {
  QRing R = qring({"x"});
  auto sh = dopkit::taylor_shift(R, qp(R, "x^2"), 2);
  REQUIRE(sh.size() == 3);
  // entries are (gamma, coefficient of u^gamma in f(x+u))
  for (const auto& [g, c] : sh) {
    if (g.total() == 0) CHECK(R.str(c) == "x^2");
    if (g.total() == 1) CHECK(R.str(c) == "2*x");
    if (g.total() == 2) CHECK(R.str(c) == "1");
  }
  CHECK(dopkit::taylor_shift(R, qp(R, "x^2"), 1).size() == 2);
  CHECK(dopkit::taylor_shift(R, qp(R, "x^2"), 0).size() == 1);
}

TEST_CASE("taylor shift: cross terms over two variables") {
  QRing R = qring({"x", "y"});
  auto sh = dopkit::taylor_shift(R, qp(R, "x y"), 2);
  // (x+u)(y+v) = xy + x v + y u + u v
  REQUIRE(sh.size() == 4);
  for (const auto& [g, c] : sh) {
    if (g == Monomial::unit()) CHECK(R.str(c) == "x*y");
    if (g == Monomial::var(0, 1)) CHECK(R.str(c) == "y");
    if (g == Monomial::var(1, 1)) CHECK(R.str(c) == "x");
    if (g == dopkit::mul(Monomial::var(0, 1), Monomial::var(1, 1))) CHECK(R.str(c) == "1");
  }
}

TEST_CASE("exponent enumeration is graded and starts at the unit") {
  auto es = dopkit::exponents_up_to(2, 2);
  REQUIRE(es.size() == 6);
  CHECK(es[0] == Monomial::unit());
  for (size_t i = 1; i < es.size(); ++i) CHECK(es[i - 1].total() <= es[i].total());
}

TEST_CASE("principal parts of K[x] are free of rank n+1") {
  auto S = qalg({"x"}, {});
  for (int n = 0; n <= 3; ++n) {
    auto pp = dopkit::principal_parts_of_ring(S, n);
    CHECK(pp.mod.ngens() == n + 1);
    for (int j = 0; j <= n; ++j) {
      CHECK(pp.mod.gen_deg(j) == j);
      CHECK(pp.mod.min_gens(j) == 1);
    }
    CHECK(pp.mod.rels().empty());
  }
}

TEST_CASE("universal map: coefficients of the shifted polynomial") {
  auto S = qalg({"x"}, {});
  auto pp = dopkit::principal_parts_of_ring(S, 2);
  FreeCtx<Rationals> c1(&S->ring(), {0});
  auto img = pp.universal(c1.from_poly(qp(S->ring(), "x^2"), 0));
  REQUIRE(img.t.size() == 3);
  CHECK(pp.mod.ctx().component(img, pp.gen_index(0, 0)) == qp(S->ring(), "x^2"));
  // truncation really truncates: order 1 drops the u^2 coefficient
  auto pp1 = dopkit::principal_parts_of_ring(S, 1);
  auto img1 = pp1.universal(c1.from_poly(qp(S->ring(), "x^2"), 0));
  CHECK(img1.t.size() == 2);
}

TEST_CASE("universal map intertwines the two module structures") {
  auto S = qalg({"x"}, {});
  auto pp = dopkit::principal_parts_of_ring(S, 2);
  FreeCtx<Rationals> c1(&S->ring(), {0});
  auto rmx = pp.right_multiplication(0);
  CHECK(rmx.well_defined());
  // d(x * f) = (right mult by x)(d f)
  for (const char* fs : {"x^2", "x^3", "1"}) {
    auto f = qp(S->ring(), fs);
    auto lhs = pp.universal(c1.from_poly(S->ring().mul(qp(S->ring(), "x"), f), 0));
    auto rhs = rmx.apply(pp.universal(c1.from_poly(f, 0)));
    CHECK(pp.mod.ctx().str(pp.mod.nf(lhs)) == pp.mod.ctx().str(pp.mod.nf(rhs)));
  }
}

TEST_CASE("universal map intertwines over a quotient algebra") {
  auto R = qalg({"a", "b", "c"}, {"b^2 - a c"});
  auto pp = dopkit::principal_parts_of_ring(R, 1);
  FreeCtx<Rationals> c1(&R->ring(), {0});
  for (int i = 0; i < 3; ++i) {
    auto rm = pp.right_multiplication(i);
    CHECK(rm.well_defined());
    for (const char* fs : {"a", "b^2", "a c"}) {
      auto f = qp(R->ring(), fs);
      auto lhs = pp.universal(c1.from_poly(R->ring().mul(R->ring().var(i), f), 0));
      auto rhs = rm.apply(pp.universal(c1.from_poly(f, 0)));
      CHECK(pp.mod.ctx().str(pp.mod.nf(lhs)) == pp.mod.ctx().str(pp.mod.nf(rhs)));
    }
  }
}

TEST_CASE("principal parts of the square-zero artinian algebra") {
  auto R = qalg({"x", "y"}, {"x^2", "x y", "y^2"});
  // second-order parts fill out all of R (x) R, of K-dimension 9
  auto p2 = dopkit::principal_parts_of_ring(R, 2);
  CHECK(total_dim(p2.mod, 6) == 9);
  CHECK(p2.mod.hilbert(3) == 0);
  // first-order parts lose the three diagonal-square classes
  auto p1 = dopkit::principal_parts_of_ring(R, 1);
  CHECK(total_dim(p1.mod, 6) == 6);
  // third order adds nothing new
  auto p3 = dopkit::principal_parts_of_ring(R, 3);
  CHECK(total_dim(p3.mod, 6) == 9);
}

TEST_CASE("truncation surjections compose with the universal maps") {
  auto R = qalg({"x", "y"}, {"x^2", "x y", "y^2"});
  auto p2 = dopkit::principal_parts_of_ring(R, 2);
  auto p1 = dopkit::principal_parts_of_ring(R, 1);
  auto tr = p2.truncation_to(p1);
  CHECK(tr.well_defined());
  FreeCtx<Rationals> c1(&R->ring(), {0});
  for (const char* fs : {"x", "x y", "1"}) {
    auto f = c1.from_poly(qp(R->ring(), fs), 0);
    CHECK(p1.mod.ctx().str(p1.mod.nf(tr.apply(p2.universal(f)))) ==
          p1.mod.ctx().str(p1.mod.nf(p1.universal(f))));
  }
}

TEST_CASE("principal parts respect module presentations") {
  // P^1 of K[x]/(x^2) over K[x]: relations truncate the shifted x^2
  auto S = qalg({"x"}, {});
  QPres M = qcyclic(S, {"x^2"});
  auto pp = dopkit::principal_parts(M, 1);
  CHECK(pp.mod.ngens() == 2);
  // dimensions: degree 0 -> e_0; degree 1 -> x e_0, e_1; degree 2 -> the
  // relation x^2 e_0 + 2x e_1 kills one of x^2 e0 (dead), x e_1 ...
  CHECK(pp.mod.hilbert(0) == 1);
  CHECK(pp.mod.hilbert(1) == 2);
  CHECK(pp.mod.min_gens(0) == 1);
  CHECK(pp.mod.min_gens(1) == 1);
}

TEST_CASE("enveloping algebra obeys the product rule on Hilbert functions") {
  auto R = qalg({"a", "b", "c"}, {"b^2 - a c"});
  auto env = dopkit::enveloping_diagonal_power(R, 1);
  CHECK(env.env->ring().nvars() == 6);
  for (int t = 0; t <= 4; ++t) {
    int expect = 0;
    for (int a = 0; a <= t; ++a) expect += R->hilbert(a) * R->hilbert(t - a);
    CHECK(env.env->hilbert(t) == expect);
  }
  CHECK(env.diag_power.hilbert(0) == 1);
}

TEST_CASE("enveloping diagonal power of the artinian algebra is everything") {
  auto R = qalg({"x", "y"}, {"x^2", "x y", "y^2"});
  auto env = dopkit::enveloping_diagonal_power(R, 2);  // u^3 = 0 already
  int total = 0, diag_total = 0;
  for (int d = 0; d <= 6; ++d) {
    total += env.env->hilbert(d);
    diag_total += env.diag_power.hilbert(d);
  }
  CHECK(total == 9);
  CHECK(diag_total == 9);
}

TEST_CASE("ideal powers") {
  QRing R = qring({"x", "y"});
  auto gens = dopkit::ideal_power_gens(R, {qp(R, "x"), qp(R, "y")}, 2);
  REQUIRE(gens.size() == 3);  // x^2, x y, y^2
  CHECK(dopkit::ideal_power_gens(R, {qp(R, "x"), qp(R, "y")}, 3).size() == 4);
  auto unit = dopkit::ideal_power_gens(R, {qp(R, "x")}, 0);
  REQUIRE(unit.size() == 1);
  CHECK(R.str(unit[0]) == "1");
}

TEST_CASE("canonical module of a polynomial ring") {
  auto S = qalg({"x", "y"}, {});
  auto w = dopkit::canonical_module(S, 20);
  REQUIRE(w.gen_degs() == std::vector<int>{2});
  CHECK(w.rels().empty());
  for (int d = 0; d <= 5; ++d) CHECK(w.hilbert(d) == S->hilbert(d - 2));
}

TEST_CASE("canonical module of the quadric cone is R(-1)") {
  auto R = qalg({"a", "b", "c"}, {"b^2 - a c"});
  auto w = dopkit::canonical_module(R, 20);
  REQUIRE(w.gen_degs() == std::vector<int>{1});
  for (int d = 0; d <= 5; ++d) CHECK(w.hilbert(d) == R->hilbert(d - 1));
}

TEST_CASE("canonical module of the elliptic cone is R itself") {
  auto R = qalg({"x", "y", "z"}, {"x^3 + y^3 + z^3"});
  auto w = dopkit::canonical_module(R, 20);
  REQUIRE(w.gen_degs() == std::vector<int>{0});
  for (int d = 0; d <= 5; ++d) CHECK(w.hilbert(d) == R->hilbert(d));
}

TEST_CASE("canonical module rejects a non-Cohen-Macaulay algebra") {
  auto R = qalg({"x", "y"}, {"x^2", "x y"});
  CHECK_THROWS_AS((void)dopkit::canonical_module(R, 20), dopkit::NotCohenMacaulay);
}

TEST_CASE("restriction of scalars to the ambient polynomial ring") {
  auto R = qalg({"x"}, {"x^3"});
  QPres M = qcyclic(R, {});
  auto res = dopkit::restrict_to_poly_ring(M);
  CHECK(res.alg().is_polynomial_ring());
  for (int d = 0; d <= 5; ++d) CHECK(res.hilbert(d) == M.hilbert(d));
}
