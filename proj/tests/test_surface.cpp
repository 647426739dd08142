#include "doctest.h"
#include "prymlab/errors.hpp"
#include "prymlab/lattice.hpp"
#include "prymlab/surface.hpp"

using namespace prymlab;
using namespace prymlab::surface;
using cover::induce;
using cover::random_simple;
using weyl::OrbitKind;

namespace {

cover::MonodromyDatum hyperelliptic(int branch_points) {
  auto s = weyl::reflection(weyl::Root::short_root(1), 1);
  return {1, 0, std::vector<weyl::SignedPerm>(branch_points, s), {}};
}

void check_principal(const HomologyModel& h) {
  CHECK(lattice::is_alternating(h.gram()));
  if (h.rank() > 0) CHECK(abs(lattice::determinant(h.gram())) == 1);
}

// S0(e_A) = Σ_{j∉A} f_{-j} + Σ_{j∈A} f_j, spinor rows, vector columns
IntMatrix s0_entries(int n) {
  IntMatrix m(std::size_t{1} << n, 2 * n);
  for (unsigned a = 0; a < (1u << n); ++a)
    for (int j = 1; j <= n; ++j) m(a, 2 * (j - 1) + ((a >> (j - 1) & 1u) ? 0 : 1)) = 1;
  return m;
}

IntMatrix vector_sigma(int n) {
  IntMatrix m(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) m(i, i ^ 1) = 1;
  return m;
}

}  // namespace

TEST_CASE("double covers of the line") {
  auto e = build(induce(hyperelliptic(4), OrbitKind::Vector));
  CHECK(e.rank() == 2);
  CHECK((e.gram() == IntMatrix{{0, 1}, {-1, 0}} || e.gram() == IntMatrix{{0, -1}, {1, 0}}));
  auto g2 = build(induce(hyperelliptic(6), OrbitKind::Vector));
  CHECK(g2.rank() == 4);
  check_principal(g2);
  auto line = build(induce(hyperelliptic(2), OrbitKind::Vector));
  CHECK(line.rank() == 0);
}

TEST_CASE("B3 spinor cover has rank 14") {
  auto h = build(induce(random_simple(3, 4, 6, 3), OrbitKind::Spinor));
  CHECK(h.rank() == 14);
  check_principal(h);
}

TEST_CASE("random covers: principal gram, rank 2g, coordinates") {
  const OrbitKind kinds[] = {OrbitKind::Vector, OrbitKind::Spinor, OrbitKind::PairClass, OrbitKind::SpinorClass,
                             OrbitKind::Parity};
  int built = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    auto d = random_simple(n, 2 + 2 * static_cast<int>(seed % 2), 2 * n, seed);
    for (auto kind : kinds) {
      auto c = induce(d, kind);
      if (!cover::is_connected(c)) continue;
      auto h = build(c);
      ++built;
      CHECK(h.rank() == 2 * static_cast<std::size_t>(cover::genus(c)));
      check_principal(h);
      for (std::size_t j = 0; j < h.rank(); ++j) {
        auto col = h.coordinates(h.basis()[j]);
        for (std::size_t i = 0; i < h.rank(); ++i) CHECK(col(i, 0) == (i == j ? 1 : 0));
      }
      for (std::size_t s = 0; s < h.degree(); ++s) CHECK(h.coordinates(h.face_boundary(s)).is_zero());
      // a mixed cycle: the intersection route and the tree route agree
      Chain z(h.edge_count(), 0);
      for (std::size_t j = 0; j < h.rank(); ++j)
        for (std::size_t e = 0; e < z.size(); ++e) z[e] += static_cast<long long>(j % 3) * h.basis()[j][e];
      for (std::size_t s = 0; s < h.degree(); s += 2)
        for (std::size_t e = 0; e < z.size(); ++e) z[e] += 3 * h.face_boundary(s)[e];
      auto c1 = h.coordinates(z);
      CHECK(h.intersections(z) == c1.transpose() * h.gram());
    }
  }
  CHECK(built >= 40);
}

TEST_CASE("disconnected covers") {
  auto d = random_simple(3, 0, 10, 4);
  auto x = induce(d, OrbitKind::Spinor);
  CHECK_THROWS_AS(build(x), UnsupportedError);
  auto h = build_disjoint(x);
  CHECK(h.component_count() == 2);
  CHECK(h.rank() == 8);
  check_principal(h);
  cover::MonodromyDatum g1{1, 1, {}, {{weyl::SignedPerm::identity(1), weyl::SignedPerm::identity(1)}}};
  CHECK_THROWS_AS(build(induce(g1, OrbitKind::Vector)), UnsupportedError);
}

TEST_CASE("induced maps") {
  const int n = 3;
  auto d = random_simple(n, 4, 6, 21);
  auto xc = induce(d, OrbitKind::Spinor), cc = induce(d, OrbitKind::Vector);
  auto x = build(xc), c = build(cc);

  auto id = induced_map(c, c, IntMatrix::identity(2 * n));
  CHECK(id == IntMatrix::identity(c.rank()));

  auto iota = induced_map(c, c, vector_sigma(n));
  CHECK(iota * iota == IntMatrix::identity(c.rank()));
  CHECK_FALSE(iota == IntMatrix::identity(c.rank()));

  // trace correspondences vanish over P^1
  CHECK(induced_map(x, c, IntMatrix::constant(8, 6, 1)).is_zero());
  CHECK(induced_map(x, x, IntMatrix::constant(8, 8, 1)).is_zero());

  // functoriality: spinor -> vector -> spinor
  auto s0 = s0_entries(n);
  auto down = induced_map(x, c, s0);
  auto up = induced_map(c, x, s0.transpose());
  CHECK(induced_map(x, x, s0 * s0.transpose()) == up * down);
  CHECK(induced_map(c, c, s0.transpose() * s0) == down * up);

  // adjointness for the intersection forms
  CHECK(down.transpose() * c.gram() == x.gram() * up);

  // the image of T (spinor -> vector) lies in the ι-invariant part
  auto t = induced_map(x, c, IntMatrix::constant(8, 6, 1));
  CHECK(((IntMatrix::identity(c.rank()) - iota) * t).is_zero());

  IntMatrix bad = IntMatrix::identity(6);
  bad(0, 0) = 2;
  CHECK_THROWS_AS(induced_map(c, c, bad), DomainError);
  auto other = build(induce(random_simple(n, 4, 6, 22), OrbitKind::Vector));
  CHECK_THROWS_AS(induced_map(c, other, IntMatrix::identity(6)), DomainError);
}
