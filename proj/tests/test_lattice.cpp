#include <numeric>
#include <random>

#include "doctest.h"
#include "prymlab/lattice.hpp"
#include "oracles.hpp"

using namespace prymlab;
using namespace prymlab::lattice;

TEST_CASE("snf small examples") {
  auto id = snf(IntMatrix::identity(3));
  CHECK(id.D == IntMatrix::identity(3));
  auto d = snf(IntMatrix{{2, 0}, {0, 3}});
  CHECK(d.D == IntMatrix{{1, 0}, {0, 6}});
  auto z = snf(IntMatrix(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.D.is_zero());
}

TEST_CASE("snf agrees with the gcd-of-minors oracle") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = 1 + int(rng() % 8), c = 1 + int(rng() % 8);
    auto rows = oracle::random_rows(rng, r, c, 9);
    IntMatrix m = IntMatrix::from_rows(rows);
    auto s = snf(m);
    REQUIRE(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    auto expect = oracle::invariant_factors(rows);
    REQUIRE(expect.size() == s.divisors.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(s.divisors[i] == Int(std::to_string(expect[i])));
  }
}

TEST_CASE("kernel, image, intersect") {
  auto k = kernel(IntMatrix{{1, 1}});
  CHECK(same_lattice(k, IntMatrix{{1}, {-1}}));
  auto im = image(IntMatrix{{2, 0}, {0, 2}});
  CHECK(saturation_index(im) == 4);
  auto e1 = IntMatrix{{1}, {0}}, e2 = IntMatrix{{0}, {1}};
  CHECK(intersect(e1, e2).cols() == 0);
  CHECK(same_lattice(sum(e1, e2), IntMatrix::identity(2)));
}

TEST_CASE("saturate") {
  CHECK(same_lattice(saturate(IntMatrix{{2}, {0}}), IntMatrix{{1}, {0}}));
  IntMatrix prim{{1, 0}, {2, 1}, {0, 3}};
  CHECK(same_lattice(saturate(prim), prim));
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto m = IntMatrix::from_rows(oracle::random_rows(rng, 6, 3, 5));
    auto s = saturate(m);
    CHECK(same_lattice(saturate(s), s));
    CHECK(s.cols() == snf(m).rank);
    CHECK(contains(s, m));
  }
}

TEST_CASE("solve") {
  IntMatrix b{{2, 0}, {0, 3}, {1, 1}};
  auto x = solve(b, IntMatrix{{4}, {-3}, {1}});
  REQUIRE(x);
  CHECK(*x == IntMatrix{{2}, {-1}});
  CHECK_FALSE(solve(b, IntMatrix{{1}, {0}, {0}}));
}

TEST_CASE("ptype") {
  CHECK(ptype_of_gram(IntMatrix{{0, 2}, {-2, 0}}) == PolType{{2}});
  IntMatrix j{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  CHECK(ptype_of_gram(j) == PolType{{1, 1}});
  PolarizedLattice sub{j, IntMatrix{{1, 0}, {0, 0}, {0, 2}, {0, 0}}};
  CHECK(ptype(sub) == PolType{{2}});
  PolarizedLattice degenerate{j, IntMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}}};
  try {
    ptype(degenerate);
    FAIL("expected DegenerateForm");
  } catch (const DegenerateForm& e) {
    CHECK(e.radical().cols() == 2);
  }
  CHECK_THROWS_AS(ptype_of_gram(IntMatrix{{0}}), DegenerateForm);
}

TEST_CASE("dual_type") {
  CHECK(dual_type(PolType{{1, 2}}) == PolType{{1, 2}});
  CHECK(dual_type(PolType{{1, 1, 4}}) == PolType{{1, 4, 4}});
  CHECK(dual_type(PolType{{1, 1, 1}}) == PolType{{1, 1, 1}});
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    auto chain = oracle::random_chain(rng);
    CHECK(dual_type(dual_type(chain)) == chain);
  }
  CHECK(scale_type(PolType{{1, 2}}, 2, 1) == PolType{{2, 4}});
  CHECK_THROWS(scale_type(PolType{{1, 2}}, 1, 2));
}
