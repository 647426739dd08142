#include "doctest.h"
#include "prymlab/cover.hpp"
#include "prymlab/errors.hpp"

using namespace prymlab;
using namespace prymlab::cover;
using weyl::OrbitKind;
using weyl::Root;
using weyl::RootKind;

namespace {

const OrbitKind kAllKinds[] = {OrbitKind::Vector, OrbitKind::Spinor, OrbitKind::PairClass, OrbitKind::Parity,
                               OrbitKind::SpinorClass};

// Closed form for the spinor cover genus, evaluated independently of predict().
long long spinor_genus_formula(int n, long long ds, long long dl) {
  // 2g - 2 = -2 * 2^n + ds * 2^(n-1) + dl * 2^(n-2)
  const long long two_g_minus_2 = -2 * (1LL << n) + ds * (1LL << (n - 1)) + dl * (1LL << (n - 2));
  return two_g_minus_2 / 2 + 1;
}

}  // namespace

TEST_CASE("validate") {
  auto s1 = weyl::reflection(Root::short_root(1), 2);
  MonodromyDatum ok{2, 0, {s1, s1}, {}};
  CHECK_FALSE(validate(ok));
  MonodromyDatum bad{2, 0, {s1}, {}};
  auto v = validate(bad);
  REQUIRE(v);
  CHECK(v->lhs == s1);

  auto a = weyl::SignedPerm::from_images({2, 1}), b = weyl::SignedPerm::from_images({-1, -2});
  MonodromyDatum handle{2, 1, {}, {{a, b}}};
  CHECK_FALSE(validate(handle));
  auto c = weyl::reflection(Root::short_root(1), 2);
  MonodromyDatum noncommuting{2, 1, {}, {{a, c}}};
  CHECK(validate(noncommuting));

  MonodromyDatum mixed{2, 0, {s1, weyl::reflection(Root::short_root(1), 3)}, {}};
  CHECK_THROWS_AS(validate(mixed), DomainError);
}

TEST_CASE("induce and components") {
  auto d2 = random_simple(2, 4, 4, 11);
  auto x = induce(d2, OrbitKind::Spinor);
  CHECK(x.degree() == 4);
  CHECK(is_connected(x));
  CHECK(induce(random_simple(3, 4, 6, 1), OrbitKind::Spinor).degree() == 8);
  CHECK(induce(d2, OrbitKind::Parity).degree() == 2);

  auto dd = random_simple(3, 0, 10, 4);
  auto parts = components(induce(dd, OrbitKind::Spinor));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].size() == 4);

  auto id = weyl::SignedPerm::identity(3);
  MonodromyDatum trivial{3, 1, {id}, {{id, id}}};
  CHECK(components(induce(trivial, OrbitKind::Vector)).size() == 6);
}

TEST_CASE("induced perms satisfy the product relation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (int n = 2; n <= 4; ++n) {
      auto d = random_simple(n, 2 * static_cast<int>(seed % 3), 2 * n, seed);
      for (auto kind : kAllKinds) {
        auto c = induce(d, kind);
        Perm prod(c.degree());
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = static_cast<int>(i);
        for (const auto& p : c.perms) prod = compose(prod, p);
        CHECK(is_identity(prod));
      }
    }
}

TEST_CASE("ramification on the spinor cover") {
  const int n = 3;
  auto e1 = weyl::reflection(Root::short_root(1), n);
  auto e12 = weyl::reflection(Root::long_root(1, 2), n);
  auto id = weyl::SignedPerm::identity(n);
  MonodromyDatum d{n, 0, {e1, e1, e12, e12, id}, {}};
  auto r = ramification(induce(d, OrbitKind::Spinor));
  CHECK(r.points[0].cycle_type == std::vector<int>{2, 2, 2, 2});
  CHECK(r.points[2].cycle_type == std::vector<int>{2, 2, 1, 1, 1, 1});
  CHECK(r.points[4].cycle_type == std::vector<int>(8, 1));
  CHECK(r.short_points.size() == 2);
  CHECK(r.long_points.size() == 2);
  CHECK_FALSE(r.simple);
}

TEST_CASE("genus by Riemann-Hurwitz") {
  auto d = random_simple(3, 4, 6, 2);
  CHECK(genus(induce(d, OrbitKind::Vector)) == 3);
  CHECK(genus(induce(d, OrbitKind::PairClass)) == 1);
  CHECK(genus(induce(d, OrbitKind::Spinor)) == 7);
  auto dd = random_simple(3, 0, 10, 4);
  CHECK_THROWS_AS(genus(induce(dd, OrbitKind::Spinor)), DomainError);
  CHECK(component_genera(induce(dd, OrbitKind::Spinor)) == std::vector<long long>{2, 2});
}

TEST_CASE("spinor genus matches the closed form") {
  for (int n = 2; n <= 4; ++n)
    for (int ds = 2; ds <= 6; ds += 2)
      for (int dl = 2 * n - 2; dl <= 2 * n + 2; dl += 2) {
        auto d = random_simple(n, ds, dl, static_cast<std::uint64_t>(100 * n + 10 * ds + dl));
        auto x = induce(d, OrbitKind::Spinor);
        CHECK(genus(x) == spinor_genus_formula(n, ds, dl));
        CHECK(predict(n, ds, dl, 0).g_x == spinor_genus_formula(n, ds, dl));
      }
}

TEST_CASE("predict") {
  auto p = predict(3, 4, 6, 0);
  CHECK(p.g_c == 3);
  CHECK(p.g_c_prime == 1);
  CHECK(p.g_x == 7);
  CHECK(p.types[0].chain() == lattice::PolType{{1, 2}});
  CHECK(p.types[1].chain() == lattice::PolType{{2, 4}});

  auto b2 = predict(2, 4, 4, 0);
  CHECK(b2.types[0].chain() == lattice::PolType{{1, 2}});
  CHECK(b2.types[1].chain() == lattice::PolType{{1, 2}});

  CHECK(predict(4, 4, 8, 0).types[1].chain() == lattice::PolType{{4, 8}});
  CHECK(predict(4, 2, 8, 0).types[1].chain() == lattice::PolType{{4}});
  CHECK(predict(4, 0, 12, 0).types[1].chain() == lattice::PolType{{4, 4}});
  CHECK(predict(3, 0, 10, 0).types[1].chain() == lattice::PolType{{2, 2}});

  auto out = predict(3, 4, 2, 0);
  CHECK_FALSE(out.types[1].in_regime);
  CHECK_THROWS_AS(out.types[1].chain(), DomainError);

  for (int ds = 4; ds <= 10; ds += 2)
    for (int dl = 4; dl <= 10; dl += 2)
      for (int g = 0; g <= 2; ++g) {
        auto q = predict(3, ds, dl, g);
        CHECK(q.dim_p_x_delta == q.dim_p_x_xprime - q.dim_p_ytilde);
        CHECK(q.types[0].dimension() == q.dim_p_c);
        CHECK(q.types[1].dimension() == q.dim_p_x_delta);
      }
}

TEST_CASE("random_simple") {
  auto b2 = random_simple(2, 4, 4, 77);
  CHECK_FALSE(validate(b2));
  CHECK(weyl::classify_subgroup(b2.gens).tag == weyl::GroupClass::FullB);
  auto d3 = random_simple(3, 0, 10, 78);
  auto tag = weyl::classify_subgroup(d3.gens).tag;
  CHECK((tag == weyl::GroupClass::FullD || tag == weyl::GroupClass::NormalizerG1));
  CHECK_THROWS_AS(random_simple(2, 1, 4, 1), GenerationFailure);
  CHECK_THROWS_AS(random_simple(3, 2, 3, 1), GenerationFailure);
  CHECK_THROWS_AS(random_simple(4, 2, 4, 1), GenerationFailure);
  // determinism
  CHECK(datum_to_json(random_simple(4, 4, 8, 5)) == datum_to_json(random_simple(4, 4, 8, 5)));
  auto r = ramification(induce(random_simple(4, 4, 8, 5), OrbitKind::Spinor));
  CHECK(r.simple);
  CHECK(r.short_points.size() == 4);
  CHECK(r.long_points.size() == 8);
}

TEST_CASE("splitmix64 reference stream") {
  // published first output for seed 0
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
}

TEST_CASE("JSON round trip and errors") {
  auto d = random_simple(3, 4, 6, 9);
  auto back = parse_datum(datum_to_json(d));
  CHECK(back.gens == d.gens);
  CHECK(back.n == 3);
  try {
    parse_datum("{\n  \"n\": 3,\n  \"generators\": [[1, 2,]\n}");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_datum("{\"n\": 2, \"generators\": [[1, 1]]}"), InputError);
  CHECK_THROWS_AS(parse_datum("{\"generators\": []}"), InputError);
}
