#include <doctest.h>

#include <set>

#include "dopkit/groebner.hpp"
#include "helpers.hpp"

using namespace th;
using dopkit::buchberger;
using dopkit::DegreeBoundTooSmall;
using dopkit::FreeCtx;
using dopkit::ModVec;
using dopkit::syzygies;

TEST_CASE("groebner: reduced basis of (x^2 - y^2, x*y)") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  auto f1 = ctx.from_poly(qp(R, "x^2 - y^2"), 0);
  auto f2 = ctx.from_poly(qp(R, "x y"), 0);
  auto gb = buchberger(ctx, {f1, f2}, 10);

  CHECK(gb.complete);
  CHECK(gb.g.size() == 3);
  std::set<std::string> leads;
  for (const auto& b : gb.g) leads.insert(R.mono_str(b.lt().m));
  CHECK(leads == std::set<std::string>{"x^2", "x*y", "y^3"});

  CHECK(gb.contains(ctx.from_poly(qp(R, "y^3"), 0)));
  CHECK(gb.contains(ctx.from_poly(qp(R, "x y^2"), 0)));
  CHECK(gb.contains(ctx.from_poly(qp(R, "x^3"), 0)));
  CHECK_FALSE(gb.contains(ctx.from_poly(qp(R, "y^2"), 0)));

  CHECK(gb.std_monomials(0).size() == 1);
  CHECK(gb.std_monomials(1).size() == 2);
  CHECK(gb.std_monomials(2).size() == 1);
  CHECK(gb.std_monomials(3).empty());
}

TEST_CASE("groebner: normal form is additive after reduction") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  auto gb = buchberger(ctx,
                       {ctx.from_poly(qp(R, "x^2 - y^2"), 0), ctx.from_poly(qp(R, "x y"), 0)},
                       12);
  auto u = ctx.from_poly(qp(R, "x^3 + x^2 y + y^3"), 0);
  auto v = ctx.from_poly(qp(R, "x^2 y - 2 y^3 + x y^2"), 0);
  CHECK(ctx.str(gb.nf(ctx.add(u, v))) == ctx.str(gb.nf(ctx.add(gb.nf(u), gb.nf(v)))));
}

TEST_CASE("groebner: expression over the inputs recombines exactly") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  auto f1 = ctx.from_poly(qp(R, "x^2 - y^2"), 0);
  auto f2 = ctx.from_poly(qp(R, "x y"), 0);
  auto gb = buchberger(ctx, {f1, f2}, 10, /*track=*/true);

  auto target = ctx.from_poly(qp(R, "y^3"), 0);
  auto expr = gb.express_over_inputs(target);
  REQUIRE(expr.has_value());
  auto recomb = ctx.add(ctx.poly_mul((*expr)[0], f1), ctx.poly_mul((*expr)[1], f2));
  CHECK(ctx.str(recomb) == ctx.str(target));

  CHECK_FALSE(gb.express_over_inputs(ctx.from_poly(qp(R, "y^2"), 0)).has_value());
}

TEST_CASE("groebner: cross pairs with coprime leads still matter for modules") {
  // f = x e0 + y e1 and g = y e0 have coprime lead monomials on the same
  // component; their S-vector y^2 e1 does not reduce to zero, so skipping
  // such pairs (as one may for ideals) would be wrong here.
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0, 0});
  auto f = ctx.add(ctx.from_poly(qp(R, "x"), 0), ctx.from_poly(qp(R, "y"), 1));
  auto g = ctx.from_poly(qp(R, "y"), 0);
  auto gb = buchberger(ctx, {f, g}, 10);
  CHECK(gb.g.size() == 3);
  CHECK(gb.contains(ctx.from_poly(qp(R, "y^2"), 1)));
  CHECK_FALSE(gb.contains(ctx.from_poly(qp(R, "y"), 1)));
}

TEST_CASE("groebner: truncated basis reports its certification") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  auto gb = buchberger(ctx,
                       {ctx.from_poly(qp(R, "x^2 - y^2"), 0), ctx.from_poly(qp(R, "x y"), 0)},
                       2);
  CHECK_FALSE(gb.complete);
  CHECK(gb.certified == 2);
  CHECK(gb.std_monomials(2).size() == 1);
  CHECK_THROWS_AS((void)gb.std_monomials(3), DegreeBoundTooSmall);
}

TEST_CASE("groebner: syzygies of the Koszul pair") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  std::vector<ModVec<Rationals>> inputs = {ctx.from_poly(qp(R, "x"), 0),
                                           ctx.from_poly(qp(R, "y"), 0)};
  auto syz = syzygies(ctx, inputs, 10);
  CHECK(syz.complete);
  REQUIRE(!syz.rows.empty());

  // every row is a genuine syzygy
  for (const auto& row : syz.rows) {
    REQUIRE(row.size() == 2);
    auto comb = ctx.add(ctx.poly_mul(row[0], inputs[0]), ctx.poly_mul(row[1], inputs[1]));
    CHECK(comb.is_zero());
  }

  // ... and (y, -x) lies in their span
  FreeCtx<Rationals> ctx2(&R, {1, 1});
  std::vector<ModVec<Rationals>> rows2;
  for (const auto& row : syz.rows)
    rows2.push_back(ctx2.add(ctx2.from_poly(row[0], 0), ctx2.from_poly(row[1], 1)));
  auto span = buchberger(ctx2, rows2, 10);
  auto koszul = ctx2.sub(ctx2.from_poly(qp(R, "y"), 0), ctx2.from_poly(qp(R, "x"), 1));
  CHECK(span.contains(koszul));
}

TEST_CASE("groebner: syzygies catch redundant inputs") {
  QRing R = qring({"x", "y"});
  FreeCtx<Rationals> ctx(&R, {0});
  // duplicate generator: e0 - e1 must appear among the syzygies
  std::vector<ModVec<Rationals>> inputs = {ctx.from_poly(qp(R, "x"), 0),
                                           ctx.from_poly(qp(R, "x"), 0)};
  auto syz = syzygies(ctx, inputs, 10);
  CHECK(syz.complete);
  FreeCtx<Rationals> ctx2(&R, {1, 1});
  std::vector<ModVec<Rationals>> rows2;
  for (const auto& row : syz.rows)
    rows2.push_back(ctx2.add(ctx2.from_poly(row[0], 0), ctx2.from_poly(row[1], 1)));
  auto span = buchberger(ctx2, rows2, 10);
  CHECK(span.contains(ctx2.sub(ctx2.unit(0), ctx2.unit(1))));
}
