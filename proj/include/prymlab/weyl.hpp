#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

/// Weyl groups of type B_n / D_n as signed permutations of {±1, ..., ±n}.
namespace prymlab::weyl {

inline constexpr int kMaxRank = 8;
inline constexpr int kMaxEnumerationRank = 6;

/// Element of W(B_n): a bijection of {±1, ..., ±n} commuting with negation.
/// Only the images of 1..n are stored; the image of -j is -image(j).
class SignedPerm {
 public:
  SignedPerm() = default;

  static SignedPerm identity(int n);
  static SignedPerm minus_identity(int n);
  /// Images of 1..n, e.g. {-1, 2, 3}. Throws DomainError unless this is a signed permutation.
  static SignedPerm from_images(std::span<const int> images);
  static SignedPerm from_images(std::initializer_list<int> images) {
    return from_images(std::span<const int>(images.begin(), images.size()));
  }

  int rank() const { return rank_; }
  /// Image of a signed index in [-n, -1] ∪ [1, n].
  int operator()(int signed_index) const;
  std::vector<int> images() const;

  /// Composition: (w * v)(x) == w(v(x)).
  SignedPerm operator*(const SignedPerm& v) const;
  SignedPerm inverse() const;
  bool is_identity() const;
  /// Number of j with image(j) < 0. Even exactly on W(D_n).
  int sign_changes() const;
  bool in_d() const { return sign_changes() % 2 == 0; }
  std::uint64_t key() const;
  std::string to_string() const;

  friend bool operator==(const SignedPerm&, const SignedPerm&) = default;
  friend auto operator<=>(const SignedPerm&, const SignedPerm&) = default;

 private:
  std::uint8_t rank_ = 0;
  std::array<std::int8_t, kMaxRank> img_{};
};

/// Commutator w v w^-1 v^-1.
SignedPerm commutator(const SignedPerm& w, const SignedPerm& v);

enum class RootKind { Short, Long };

/// A root ±ε_j (short) or ±ε_j ± ε_k (long).
struct Root {
  RootKind kind = RootKind::Short;
  int j = 1;
  int k = 0;
  int sign_j = 1;
  int sign_k = 1;

  static Root short_root(int j, int sign = 1) { return {RootKind::Short, j, 0, sign, 1}; }
  /// sign_j ε_j + sign_k ε_k
  static Root long_root(int j, int k, int sign_j = 1, int sign_k = -1) {
    return {RootKind::Long, j, k, sign_j, sign_k};
  }
  std::string to_string() const;
};

/// The reflection s_α acting on {±1, ..., ±n}.
SignedPerm reflection(const Root& root, int n);
/// Root kind of w if w is a reflection.
std::optional<RootKind> reflection_kind(const SignedPerm& w);
/// All distinct reflections of the given kind, in a fixed order.
std::vector<SignedPerm> reflections(int n, RootKind kind);
/// Generators of W(B_n): all s_{ε_j} and s_{ε_j - ε_k}.
std::vector<SignedPerm> all_reflections(int n);

/// The W-orbits the library builds coverings from.
enum class OrbitKind {
  Vector,       // ±ε_j, size 2n (ω_1)
  Spinor,       // λ_A for A ⊆ {1..n}, size 2^n (ω_n)
  PairClass,    // {ε_j, -ε_j}, size n
  Parity,       // parity of |A|, size 2
  SpinorClass,  // {λ_A, λ_{complement A}}, size 2^(n-1)
};

std::string to_string(OrbitKind kind);
OrbitKind parse_orbit_kind(const std::string& name);
std::size_t orbit_size(OrbitKind kind, int n);

/// One element of an orbit. `value` is: the signed index (Vector), the subset
/// bitmask with bit j-1 for j ∈ A (Spinor), the index j (PairClass), 0 / 1 for
/// even / odd (Parity), or the bitmask of the representative not containing n
/// (SpinorClass).
struct OrbitLabel {
  OrbitKind kind = OrbitKind::Vector;
  int rank = 1;
  int value = 1;

  static OrbitLabel vector(int n, int signed_index);
  static OrbitLabel spinor(int n, std::span<const int> subset);
  static OrbitLabel spinor_mask(int n, unsigned mask);
  static OrbitLabel pair_class(int n, int j);
  static OrbitLabel parity(int n, int odd);
  static OrbitLabel spinor_class(int n, unsigned mask);

  /// Sorted subset A (Spinor / SpinorClass representative).
  std::vector<int> subset() const;
  std::string to_string() const;

  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
};

/// Canonical fiber ordering: Vector 1,-1,...,n,-n; Spinor / SpinorClass by
/// bitmask; PairClass 1..n; Parity even, odd.
std::vector<OrbitLabel> orbit_labels(OrbitKind kind, int n);
std::size_t label_index(const OrbitLabel& label);

/// The left action of W(B_n) on orbit labels.
OrbitLabel act(const SignedPerm& w, const OrbitLabel& x);
/// perm[i] = index of w · labels[i] in the canonical ordering.
std::vector<int> orbit_permutation(const SignedPerm& w, OrbitKind kind);

enum class GroupClass { FullB, FullD, NormalizerG1, G1Conjugate, Other, Intransitive };
std::string to_string(GroupClass c);

struct SubgroupInfo {
  GroupClass tag = GroupClass::Other;
  std::uint64_t order = 0;
  bool transitive = false;
};

/// Enumerates the generated subgroup and classifies it. Rank must be ≤ 6.
SubgroupInfo classify_subgroup(std::span<const SignedPerm> gens);
/// All elements of the generated subgroup (rank ≤ 6).
std::vector<SignedPerm> enumerate_subgroup(std::span<const SignedPerm> gens);

/// The isomorphism S_4 ≅ W(D_3) induced by the action of S_4 on 2-subsets of
/// {1,2,3,4}: ε_1 ~ {1,2}, ε_2 ~ {1,3}, ε_3 ~ {1,4}, -ε_j ~ complement.
/// `perm` lists the images of 1..4.
SignedPerm s4_to_d3(std::span<const int> perm);

}  // namespace prymlab::weyl
