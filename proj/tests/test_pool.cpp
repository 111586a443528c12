#include <doctest.h>

#include <numeric>
#include <stdexcept>

#include "dopkit/cohomology.hpp"
#include "dopkit/pool.hpp"
#include "dopkit/reduction.hpp"
#include "helpers.hpp"

using namespace th;
using dopkit::ColimitTable;
using dopkit::parallel_map;
using dopkit::pool_workers;

namespace {

struct WorkerGuard {
  int old;
  explicit WorkerGuard(int w) : old(pool_workers()) { pool_workers() = w; }
  ~WorkerGuard() { pool_workers() = old; }
};

bool same_table(const ColimitTable& a, const ColimitTable& b) {
  if (a.stages != b.stages || a.all_stable != b.all_stable) return false;
  if (a.cells.size() != b.cells.size()) return false;
  for (size_t j = 0; j < a.cells.size(); ++j) {
    const auto& x = a.cells[j];
    const auto& y = b.cells[j];
    if (x.k != y.k || x.history != y.history || x.stable != y.stable || x.dim != y.dim ||
        x.stable_stage != y.stable_stage)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parallel map preserves index order and propagates the first error") {
  WorkerGuard g(8);
  auto v = parallel_map<int>(100, [](int i) { return i * i; });
  for (int i = 0; i < 100; ++i) CHECK(v[static_cast<size_t>(i)] == i * i);

  CHECK_THROWS_WITH(parallel_map<int>(50,
                                      [](int i) -> int {
                                        if (i % 7 == 3) throw std::runtime_error("job " + std::to_string(i));
                                        return i;
                                      }),
                    "job 3");
}

TEST_CASE("operator tables are identical under one and eight workers") {
  auto run = [] {
    auto A = th::qalg({"a", "b", "c"}, {"b^2 - a c"});
    auto R = th::qcyclic(A, {});
    dopkit::DiffOps<dopkit::Rationals> ops(R, R, 3, -1, 1);
    std::vector<int> dims;
    for (int n = 0; n <= 3; ++n)
      for (int k = -1; k <= 1; ++k) dims.push_back(ops.dim(n, k));
    return dims;
  };
  std::vector<int> d1, d8;
  {
    WorkerGuard g(1);
    d1 = run();
  }
  {
    WorkerGuard g(8);
    d8 = run();
  }
  CHECK(d1 == d8);
}

TEST_CASE("colimit tables are identical under one and eight workers") {
  auto run = [] {
    auto A = th::qalg({"x"}, {});
    auto R = th::qcyclic(A, {});
    return dopkit::local_cohomology(A, {th::qp(A->ring(), "x")}, R, 1, -3, 1, 8, 30);
  };
  ColimitTable t1, t8;
  {
    WorkerGuard g(1);
    t1 = run();
  }
  {
    WorkerGuard g(8);
    t8 = run();
  }
  CHECK(same_table(t1, t8));

  auto runs = [] {
    auto A = th::qalg({"a", "b", "c"}, {"b^2 - a c"});
    auto R = th::qcyclic(A, {});
    return dopkit::svdb_table(R, R, 0, -1, 1, 4, 25);
  };
  ColimitTable s1, s8;
  {
    WorkerGuard g(1);
    s1 = runs();
  }
  {
    WorkerGuard g(8);
    s8 = runs();
  }
  CHECK(same_table(s1, s8));
}

TEST_CASE("torsion scans are identical under one and eight workers") {
  auto rf = dopkit::parse_ring_file("field ZZ; vars x:1 y:1 z:1; rel x^3 + y^3 + z^3;");
  auto run = [&] { return dopkit::torsion_scan(rf, {2, 3, 5}, 2, 0, 0, 8); };
  dopkit::TorsionReport r1, r8;
  {
    WorkerGuard g(1);
    r1 = run();
  }
  {
    WorkerGuard g(8);
    r8 = run();
  }
  REQUIRE(r1.slices.size() == r8.slices.size());
  for (size_t j = 0; j < r1.slices.size(); ++j) {
    const auto& a = r1.slices[j];
    const auto& b = r8.slices[j];
    CHECK(a.p == b.p);
    CHECK(a.bad == b.bad);
    CHECK(a.diagnostic == b.diagnostic);
    REQUIRE(a.cells.size() == b.cells.size());
    for (size_t c = 0; c < a.cells.size(); ++c) {
      CHECK(a.cells[c].dim_q == b.cells[c].dim_q);
      CHECK(a.cells[c].dim_p == b.cells[c].dim_p);
      CHECK(a.cells[c].verdict == b.cells[c].verdict);
    }
  }
  CHECK(r1.witness_primes == r8.witness_primes);
  CHECK(r1.bad_primes == r8.bad_primes);
}
