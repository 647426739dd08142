#include <bit>

#include "doctest.h"
#include "prymlab/corr.hpp"
#include "prymlab/errors.hpp"

using namespace prymlab;
using namespace prymlab::corr;

namespace {

long long scalar(const IdentityResult& r, const std::string& name) {
  for (const auto& [k, v] : r.scalars)
    if (k == name) return v.get_si();
  FAIL("missing scalar " << name);
  return 0;
}

void require_pass(const IdentityResult& r) {
  INFO(r.name << " n=" << r.n << " level=" << r.level << " failed: " << r.failed);
  CHECK(r.pass);
}

cover::MonodromyDatum d3_datum(int count_l, std::uint64_t seed) { return cover::random_simple(3, 0, count_l, seed); }

}  // namespace

TEST_CASE("fiber matrices are equivariant and shaped") {
  CHECK_THROWS_AS(FiberMatrix::make(3, OrbitKind::Spinor, OrbitKind::Spinor, IntMatrix::identity(4)), DomainError);
  IntMatrix bad = IntMatrix::identity(8);
  bad(0, 1) = 1;
  CHECK_THROWS_AS(FiberMatrix::make(3, OrbitKind::Spinor, OrbitKind::Spinor, bad), DomainError);
  for (int n = 2; n <= 5; ++n) {
    auto fam = make_S_family(n);
    CHECK(fam.S0.degree() == n);
    CHECK(fam.S1.degree() == n);
    CHECK(fam.S.degree() == 2 * n + 2 * n * n);
    CHECK(fam.T.degree() == 2 * n);
    // S0 + S1 = T and -S = 2 S1 - (n+2) T
    CHECK(fam.S0.entries + fam.S1.entries == fam.T.entries);
    CHECK(Int(-1) * fam.S.entries == 2L * fam.S1.entries - static_cast<long>(n + 2) * fam.T.entries);
    CHECK(Int(-1) * fam.S.entries != 2L * fam.S1.entries - static_cast<long>(n + 1) * fam.T.entries);
  }
}

TEST_CASE("D and D_i") {
  const long degrees[] = {0, 0, 1, 5, 17};
  for (int n = 2; n <= 6; ++n) {
    auto D = make_D(n);
    const long expected = (1L << (n - 1)) * (n - 2) + 1;
    if (n <= 4) CHECK(expected == degrees[n]);
    CHECK(D.degree() == expected);
    IntMatrix sum(D.entries.rows(), D.entries.cols());
    for (int i = 0; i < n; ++i) sum = sum + static_cast<long>(i) * make_Di(n, i).entries;
    CHECK(sum == D.entries);
    // brute force entry check
    for (unsigned a = 0; a < (1u << n); a += 3)
      for (unsigned b = 0; b < (1u << n); ++b)
        CHECK(D.entries(a, b) == (a == b ? 0 : std::popcount(a ^ b) - 1));
  }
  // rank 2: D is the complement permutation
  CHECK(make_D(2).entries == minus_identity(2, OrbitKind::Spinor).entries);
  CHECK_THROWS_AS(make_Di(3, 3), DomainError);
}

TEST_CASE("orbit grams") {
  for (int n = 2; n <= 6; ++n) {
    auto g = orbit_gram(n, Weight::Spinor, -2);
    CHECK(g.q == (1L << (n - 1)));
    CHECK(g.gram == make_D(n).entries - IntMatrix::identity(std::size_t{1} << n));
    auto v = orbit_gram(n, Weight::Vector, -2);
    CHECK(v.q == 4);
    // 2(I - E) + T2
    IntMatrix expect = IntMatrix::constant(2 * n, 2 * n, 1) - 2L * IntMatrix::identity(2 * n) +
                       2L * minus_identity(n, OrbitKind::Vector).entries;
    CHECK(v.gram == expect);
  }
  CHECK_THROWS_AS(orbit_gram(3, Weight::Spinor, -1), DomainError);
  CHECK_THROWS_AS(orbit_gram(3, Weight::Spinor, 2), DomainError);
}

TEST_CASE("catalog at fiber level") {
  CHECK(find_identity("f").name == "quadratic");
  CHECK(find_identity("quadratic").letter == 'f');
  CHECK_THROWS_AS(find_identity("nope"), DomainError);
  CHECK_THROWS_AS(check_identity("parity_pushforward", 4), DomainError);
  CHECK_THROWS_AS(check_identity("antidiagonal_q8", 3), DomainError);
  for (int n = 2; n <= 6; ++n)
    for (const auto& info : identity_catalog()) {
      if (!applies(info, n)) continue;
      auto r = check_identity(info.name, n);
      require_pass(r);
    }
}

TEST_CASE("solved scalars match closed forms") {
  for (int n = 2; n <= 6; ++n) {
    const long long N = 1LL << n;
    auto a = check_identity("trace_lemma", n);
    CHECK(scalar(a, "a(S0)") == n);
    CHECK(scalar(a, "b(S0)") == N / 2);
    CHECK(scalar(a, "a(S1)") == n);
    CHECK(scalar(a, "a(S)") == 2 * n + 2 * n * n);
    CHECK(scalar(a, "b(S)") == N + n * N);
    CHECK(scalar(check_identity("s0t_s0", n), "f1") == n - 1);
    CHECK(scalar(check_identity("quadratic", n), "m") == (N / 4) * (n - 1) * (n - 2));
    auto iso = check_identity("isogeny_scalars", n);
    CHECK(scalar(iso, "d1") == 2LL * n * n * n + 4LL * n * n + 4LL * n - 4);
    CHECK(scalar(iso, "d2") == N * (n + 1) * (n + 1) + N / 2);
  }
  for (int n : {3, 5}) CHECK(scalar(check_identity("parity_pushforward", n), "M") == (1LL << (n - 2)) * (n - 2));
}

TEST_CASE("homology level on random data") {
  struct Case {
    int n, ds, dl;
    std::uint64_t seed;
  };
  const Case cases[] = {{2, 4, 2, 1}, {2, 2, 4, 2}, {3, 2, 4, 3}, {3, 4, 4, 4}, {4, 2, 6, 5}, {4, 0, 8, 6}};
  for (const auto& c : cases) {
    HomologyEvaluator ev(cover::random_simple(c.n, c.ds, c.dl, c.seed));
    for (const auto& info : identity_catalog()) {
      if (!applies(info, c.n) || info.name == "d3_antidiagonal") continue;
      require_pass(check_identity(info.name, c.n, ev));
    }
  }
}

TEST_CASE("D3 antidiagonal identity on split data") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    HomologyEvaluator ev(d3_datum(6, seed));
    CHECK(ev.model(OrbitKind::Spinor).component_count() == 2);
    require_pass(check_identity("d3_antidiagonal", 3, ev));
    require_pass(check_identity("sigma_trace", 3, ev));
  }
}

TEST_CASE("homology evaluator rejects mismatches") {
  HomologyEvaluator ev(cover::random_simple(2, 4, 2, 7));
  CHECK_THROWS_AS(ev.op(make_D(3)), DomainError);
  auto r = check_identity("quadratic", 2, ev);
  CHECK(r.level == "homology");
}
