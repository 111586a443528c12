#include <doctest.h>

#include "dopkit/linalg.hpp"

using dopkit::Mat;
using dopkit::PrimeField;
using dopkit::Rationals;

namespace {

template <class F>
Mat<F> from_rows(const F& K, std::vector<std::vector<long>> rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr ? static_cast<int>(rows[0].size()) : 0;
  Mat<F> m(nr, nc, K);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m.at(i, j) = K.from_long(rows[i][j]);
  return m;
}

}  // namespace

TEST_CASE("linalg: rref, rank, kernel over the rationals") {
  Rationals Q;
  auto A = from_rows(Q, {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(dopkit::rank(Q, A) == 2);

  Mat<Rationals> ker = dopkit::kernel_basis(Q, A);
  REQUIRE(ker.nc == 1);
  // every kernel column is an actual solution
  auto prod = dopkit::mat_mul(Q, A, ker);
  for (auto& e : prod.a) CHECK(Q.is_zero(e));

  auto I = dopkit::identity<Rationals>(3, Q);
  CHECK(dopkit::rank(Q, I) == 3);
  CHECK(dopkit::kernel_basis(Q, I).nc == 0);
}

TEST_CASE("linalg: solve") {
  Rationals Q;
  auto A = from_rows(Q, {{1, 1}, {1, -1}});
  auto sol = dopkit::solve(Q, A, {Q.from_long(4), Q.from_long(2)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == Q.from_long(3));
  CHECK((*sol)[1] == Q.from_long(1));

  auto B = from_rows(Q, {{1, 1}, {2, 2}});
  CHECK_FALSE(dopkit::solve(Q, B, {Q.from_long(0), Q.from_long(1)}).has_value());
}

TEST_CASE("linalg: subquotient basis and expression") {
  Rationals Q;
  // Z = span{e1, e2}, B = span{e1} inside Q^3: quotient has dimension 1
  auto Z = from_rows(Q, {{1, 0}, {0, 1}, {0, 0}});
  auto B = from_rows(Q, {{1}, {0}, {0}});
  auto sq = dopkit::make_subquotient(Q, Z, B);
  CHECK(sq.dim() == 1);
  REQUIRE(sq.rep_cols == std::vector<int>{1});

  // w = 3 e1 + e2 = (boundary) + 1 * rep
  auto c = dopkit::express_in_subquotient(Q, sq, {Q.from_long(3), Q.from_long(1), Q.zero()});
  REQUIRE(c.size() == 1);
  CHECK(c[0] == Q.from_long(1));
}

TEST_CASE("linalg: subquotient where boundaries mix coordinates") {
  PrimeField F(5);
  // Z = all of F^2, B = span{(1,1)}
  auto Z = from_rows(F, {{1, 0}, {0, 1}});
  auto B = from_rows(F, {{1}, {1}});
  auto sq = dopkit::make_subquotient(F, Z, B);
  CHECK(sq.dim() == 1);
  // (1,1) is a boundary: expresses to zero
  auto c = dopkit::express_in_subquotient(F, sq, {F.one(), F.one()});
  REQUIRE(c.size() == 1);
  CHECK(F.is_zero(c[0]));
}

TEST_CASE("linalg: rank tracker matches batch rank") {
  Rationals Q;
  dopkit::RankTracker<Rationals> t(Q);
  CHECK(t.add({Q.from_long(1), Q.from_long(2), Q.from_long(3)}));
  CHECK_FALSE(t.add({Q.from_long(2), Q.from_long(4), Q.from_long(6)}));
  CHECK(t.add({Q.from_long(0), Q.from_long(1), Q.from_long(1)}));
  CHECK_FALSE(t.add({Q.from_long(1), Q.from_long(3), Q.from_long(4)}));
  CHECK(t.add({Q.from_long(0), Q.from_long(0), Q.from_long(1)}));
  CHECK(t.rank() == 3);
  CHECK_FALSE(t.add({Q.zero(), Q.zero(), Q.zero()}));
}
