#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "prymlab/errors.hpp"
#include "prymlab/weyl.hpp"

using namespace prymlab;
using namespace prymlab::weyl;

namespace {

SignedPerm random_element(std::mt19937_64& rng, int n) {
  std::vector<int> img(n);
  for (int j = 0; j < n; ++j) img[j] = j + 1;
  std::shuffle(img.begin(), img.end(), rng);
  for (auto& x : img)
    if (rng() & 1) x = -x;
  return SignedPerm::from_images(img);
}

}  // namespace

TEST_CASE("reflections") {
  CHECK(reflection(Root::short_root(1), 2) == SignedPerm::from_images({-1, 2}));
  CHECK(reflection(Root::long_root(1, 2, 1, -1), 2) == SignedPerm::from_images({2, 1}));
  CHECK(reflection(Root::long_root(1, 2, 1, 1), 3) == SignedPerm::from_images({-2, -1, 3}));
  CHECK_THROWS_AS(reflection(Root::long_root(1, 1), 3), DomainError);
  CHECK_THROWS_AS(reflection(Root::short_root(4), 3), DomainError);
  for (int n = 1; n <= 5; ++n)
    for (const auto& s : all_reflections(n)) {
      CHECK((s * s).is_identity());
      CHECK(reflection_kind(s).has_value());
    }
  CHECK(reflections(3, RootKind::Short).size() == 3);
  CHECK(reflections(3, RootKind::Long).size() == 6);
  CHECK_FALSE(reflection_kind(SignedPerm::from_images({2, 3, 1})).has_value());
  CHECK_FALSE(reflection_kind(SignedPerm::from_images({-1, -2, 3})).has_value());
}

TEST_CASE("from_images rejects non-bijections") {
  CHECK_THROWS_AS(SignedPerm::from_images({1, -1}), DomainError);
  CHECK_THROWS_AS(SignedPerm::from_images({1, 3}), DomainError);
}

TEST_CASE("spinor action examples") {
  const int n = 3;
  auto e1 = reflection(Root::short_root(1), n);
  auto e12 = reflection(Root::long_root(1, 2), n);
  CHECK(act(e1, OrbitLabel::spinor_mask(n, 0)) == OrbitLabel::spinor_mask(n, 1));
  std::vector<int> one{1}, two{2};
  CHECK(act(e12, OrbitLabel::spinor(n, one)) == OrbitLabel::spinor(n, two));
  CHECK(act(e1, OrbitLabel::parity(n, 0)) == OrbitLabel::parity(n, 1));
}

TEST_CASE("act is a group action") {
  std::mt19937_64 rng(2024);
  const OrbitKind kinds[] = {OrbitKind::Vector, OrbitKind::Spinor, OrbitKind::PairClass, OrbitKind::Parity,
                             OrbitKind::SpinorClass};
  int checked = 0;
  for (int t = 0; t < 2000; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    auto w = random_element(rng, n), v = random_element(rng, n);
    for (auto kind : kinds) {
      auto labels = orbit_labels(kind, n);
      const auto& x = labels[rng() % labels.size()];
      CHECK(act(w * v, x) == act(w, act(v, x)));
      CHECK(label_index(x) < orbit_size(kind, n));
      ++checked;
    }
  }
  CHECK(checked == 10000);
}

TEST_CASE("parity under D_n and short reflections") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& s : reflections(n, RootKind::Long))
      for (const auto& x : orbit_labels(OrbitKind::Spinor, n)) {
        auto y = act(s, x);
        CHECK(y.subset().size() % 2 == x.subset().size() % 2);
      }
    for (const auto& s : reflections(n, RootKind::Short))
      for (const auto& x : orbit_labels(OrbitKind::Spinor, n)) {
        auto y = act(s, x);
        CHECK(y.subset().size() % 2 != x.subset().size() % 2);
      }
  }
}

TEST_CASE("orbit labels are canonically ordered") {
  auto v = orbit_labels(OrbitKind::Vector, 3);
  REQUIRE(v.size() == 6);
  CHECK(v[0].value == 1);
  CHECK(v[1].value == -1);
  CHECK(v[5].value == -3);
  for (auto kind : {OrbitKind::Vector, OrbitKind::Spinor, OrbitKind::PairClass, OrbitKind::Parity,
                    OrbitKind::SpinorClass}) {
    auto labels = orbit_labels(kind, 4);
    for (std::size_t i = 0; i < labels.size(); ++i) CHECK(label_index(labels[i]) == i);
  }
}

TEST_CASE("classify_subgroup") {
  const int n = 3;
  auto all = all_reflections(n);
  auto b = classify_subgroup(all);
  CHECK(b.tag == GroupClass::FullB);
  CHECK(b.order == 48);

  auto longs = reflections(n, RootKind::Long);
  auto d = classify_subgroup(longs);
  CHECK(d.tag == GroupClass::FullD);
  CHECK(d.order == 24);

  std::vector<SignedPerm> norm{reflection(Root::long_root(1, 2), n), reflection(Root::long_root(2, 3), n),
                               SignedPerm::minus_identity(n)};
  auto nz = classify_subgroup(norm);
  CHECK(nz.tag == GroupClass::NormalizerG1);
  CHECK(nz.order == 12);

  std::vector<SignedPerm> g1{reflection(Root::long_root(1, 2), n), reflection(Root::long_root(2, 3), n)};
  CHECK(classify_subgroup(g1).tag == GroupClass::G1Conjugate);

  std::vector<SignedPerm> small{reflection(Root::short_root(1), n)};
  CHECK(classify_subgroup(small).tag == GroupClass::Intransitive);

  std::vector<SignedPerm> big(all_reflections(7));
  CHECK_THROWS_AS(classify_subgroup(big), UnsupportedError);
}

TEST_CASE("classification is invariant under conjugation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    std::vector<SignedPerm> gens;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(random_element(rng, n));
    if (t % 3 == 0) gens = {reflection(Root::long_root(1, 2), n), SignedPerm::minus_identity(n)};
    auto c = random_element(rng, n);
    std::vector<SignedPerm> conj;
    for (const auto& g : gens) conj.push_back(c * g * c.inverse());
    auto a = classify_subgroup(gens), b = classify_subgroup(conj);
    CHECK(a.tag == b.tag);
    CHECK(a.order == b.order);
  }
}

TEST_CASE("S4 to D3") {
  // transpositions of S4 go to long reflections, and the map is a homomorphism
  std::vector<int> t12{2, 1, 3, 4}, t34{1, 2, 4, 3}, c{2, 3, 4, 1};
  auto a = s4_to_d3(t12), b = s4_to_d3(t34);
  CHECK(reflection_kind(a) == RootKind::Long);
  CHECK(reflection_kind(b) == RootKind::Long);
  std::vector<int> p(4), q(4), pq(4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    std::iota(p.begin(), p.end(), 1);
    std::iota(q.begin(), q.end(), 1);
    std::shuffle(p.begin(), p.end(), rng);
    std::shuffle(q.begin(), q.end(), rng);
    for (int i = 0; i < 4; ++i) pq[i] = p[q[i] - 1];
    CHECK(s4_to_d3(pq) == s4_to_d3(p) * s4_to_d3(q));
    CHECK(s4_to_d3(p).in_d());
  }
  CHECK_FALSE(s4_to_d3(c).is_identity());
}
