#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prymlab/lattice.hpp"
#include "prymlab/weyl.hpp"

/// Monodromy data over a genus-g base and the covers they induce on W-orbits.
namespace prymlab::cover {

using weyl::OrbitKind;
using weyl::SignedPerm;

/// Permutation of {0, ..., d-1} as an image list.
using Perm = std::vector<int>;

/// (p * q)[i] == p[q[i]]
Perm compose(const Perm& p, const Perm& q);
Perm inverse(const Perm& p);
bool is_identity(const Perm& p);
/// Cycle lengths, largest first, fixed points included.
std::vector<int> cycle_type(const Perm& p);

struct Handle {
  SignedPerm alpha;
  SignedPerm beta;
};

/// Images of the loops γ_1..γ_k around the branch points and of the handle
/// generators α_i, β_i, subject to γ_1···γ_k = [α_1,β_1]···[α_g,β_g].
struct MonodromyDatum {
  int n = 0;
  int base_genus = 0;
  std::vector<SignedPerm> gens;
  std::vector<Handle> handles;
};

struct Violation {
  std::string message;
  /// γ_1···γ_k and the commutator product, when the relation itself fails.
  std::optional<SignedPerm> lhs, rhs;
};

/// Structural and relation check. Throws DomainError on rank mismatch.
std::optional<Violation> validate(const MonodromyDatum& datum);
/// Throws InputError carrying the violation message.
void require_valid(const MonodromyDatum& datum);

struct CoverModel {
  MonodromyDatum datum;
  OrbitKind orbit = OrbitKind::Vector;
  std::vector<Perm> perms;
  std::vector<std::pair<Perm, Perm>> handle_perms;
  std::vector<weyl::OrbitLabel> labels;

  std::size_t degree() const { return labels.size(); }
};

CoverModel induce(const MonodromyDatum& datum, OrbitKind orbit);

/// Orbits of the monodromy group on the fiber, each sorted, ordered by least element.
std::vector<std::vector<int>> components(const CoverModel& cover);
bool is_connected(const CoverModel& cover);

struct BranchRamification {
  std::vector<int> cycle_type;
  std::optional<weyl::RootKind> reflection;
};

struct RamificationReport {
  std::vector<BranchRamification> points;
  std::vector<std::size_t> short_points;
  std::vector<std::size_t> long_points;
  bool simple = false;
};

/// On the spinor cover, also asserts that a short (long) reflection acts by
/// 2^(n-1) (2^(n-2)) disjoint transpositions.
RamificationReport ramification(const CoverModel& cover);

/// Riemann–Hurwitz genus of a connected cover. Throws DomainError listing the
/// components otherwise.
long long genus(const CoverModel& cover);
/// Genus of each component, in the order of components().
std::vector<long long> component_genera(const CoverModel& cover);

/// A predicted polarization type given as (multiplier, count) pairs.
struct PredictedType {
  std::string name;
  std::vector<std::pair<long long, long long>> parts;
  bool in_regime = true;
  std::string note;

  lattice::PolType chain() const;
  long long dimension() const;
};

struct Prediction {
  int n = 0;
  long long ds = 0, dl = 0, gy = 0;
  long long g_c_prime = 0, g_c = 0, g_x = 0;
  long long dim_p_c = 0;        // P(C,C′)
  long long dim_p_x_delta = 0;  // P(X,δ), isogenous to P(C,C′)
  long long dim_p_x_xprime = 0; // P(X,X′), X′ = X/σ
  long long dim_p_ytilde = 0;   // P(Ỹ,Y)
  std::vector<PredictedType> types;
};

/// Closed-form genera, dimensions and polarization types for a simple
/// B_n covering with |D_s| = ds, |D_l| = dl over a base of genus gy.
Prediction predict(int n, long long ds, long long dl, long long gy);

/// splitmix64: the same seed gives the same stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, bound), unbiased.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

inline constexpr long kMaxRejections = 1'000'000;

/// Random genus-0 datum with count_s short and count_l long reflections,
/// product identity and connected vector cover. Throws GenerationFailure.
MonodromyDatum random_simple(int n, int count_s, int count_l, std::uint64_t seed);

/// JSON schema: {"n", "base_genus", "generators": [[..]..], "handles": [[[..],[..]]..]}.
/// Throws InputError with line and column on malformed text.
MonodromyDatum parse_datum(std::string_view json_text);
std::string datum_to_json(const MonodromyDatum& datum);

}  // namespace prymlab::cover
