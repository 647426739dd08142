#include "prymlab/weyl.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "prymlab/errors.hpp"

namespace prymlab::weyl {

namespace {

void check_rank(int n) {
  if (n < 1 || n > kMaxRank)
    throw DomainError("rank " + std::to_string(n) + " outside [1, " + std::to_string(kMaxRank) + "]");
}

int sign_of(int x) { return x < 0 ? -1 : 1; }

}  // namespace

SignedPerm SignedPerm::identity(int n) {
  check_rank(n);
  SignedPerm w;
  w.rank_ = static_cast<std::uint8_t>(n);
  for (int j = 0; j < n; ++j) w.img_[j] = static_cast<std::int8_t>(j + 1);
  return w;
}

SignedPerm SignedPerm::minus_identity(int n) {
  SignedPerm w = identity(n);
  for (int j = 0; j < n; ++j) w.img_[j] = static_cast<std::int8_t>(-(j + 1));
  return w;
}

SignedPerm SignedPerm::from_images(std::span<const int> images) {
  const int n = static_cast<int>(images.size());
  check_rank(n);
  std::array<bool, kMaxRank + 1> seen{};
  SignedPerm w;
  w.rank_ = static_cast<std::uint8_t>(n);
  for (int j = 0; j < n; ++j) {
    const int x = images[j];
    const int a = std::abs(x);
    if (a < 1 || a > n || seen[a]) {
      std::ostringstream os;
      os << "not a signed permutation of rank " << n << ": image of " << (j + 1) << " is " << x;
      throw DomainError(os.str());
    }
    seen[a] = true;
    w.img_[j] = static_cast<std::int8_t>(x);
  }
  return w;
}

int SignedPerm::operator()(int signed_index) const {
  const int a = std::abs(signed_index);
  if (a < 1 || a > rank_) throw DomainError("signed index " + std::to_string(signed_index) + " out of range");
  return signed_index > 0 ? img_[a - 1] : -img_[a - 1];
}

std::vector<int> SignedPerm::images() const { return {img_.begin(), img_.begin() + rank_}; }

SignedPerm SignedPerm::operator*(const SignedPerm& v) const {
  if (rank_ != v.rank_) throw DomainError("composition of signed permutations of different ranks");
  SignedPerm w;
  w.rank_ = rank_;
  for (int j = 0; j < rank_; ++j) w.img_[j] = static_cast<std::int8_t>((*this)(v.img_[j]));
  return w;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm w;
  w.rank_ = rank_;
  for (int j = 0; j < rank_; ++j) {
    const int x = img_[j];
    w.img_[std::abs(x) - 1] = static_cast<std::int8_t>(sign_of(x) * (j + 1));
  }
  return w;
}

bool SignedPerm::is_identity() const {
  for (int j = 0; j < rank_; ++j)
    if (img_[j] != j + 1) return false;
  return true;
}

int SignedPerm::sign_changes() const {
  int c = 0;
  for (int j = 0; j < rank_; ++j) c += img_[j] < 0;
  return c;
}

std::uint64_t SignedPerm::key() const {
  std::uint64_t k = rank_;
  for (int j = 0; j < rank_; ++j) k = k * 17 + static_cast<std::uint64_t>(img_[j] + kMaxRank);
  return k;
}

std::string SignedPerm::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int j = 0; j < rank_; ++j) os << (j ? ", " : "") << int(img_[j]);
  os << ']';
  return os.str();
}

SignedPerm commutator(const SignedPerm& w, const SignedPerm& v) { return w * v * w.inverse() * v.inverse(); }

std::string Root::to_string() const {
  auto term = [](int sign, int idx) { return std::string(sign < 0 ? "-" : "") + "e" + std::to_string(idx); };
  if (kind == RootKind::Short) return term(sign_j, j);
  return term(sign_j, j) + (sign_k < 0 ? "-" : "+") + "e" + std::to_string(k);
}

SignedPerm reflection(const Root& root, int n) {
  check_rank(n);
  auto bad = [&] { return DomainError("invalid root " + root.to_string() + " for rank " + std::to_string(n)); };
  if (root.j < 1 || root.j > n || std::abs(root.sign_j) != 1) throw bad();
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  if (root.kind == RootKind::Short) {
    img[root.j - 1] = -root.j;
  } else {
    if (root.k < 1 || root.k > n || root.k == root.j || std::abs(root.sign_k) != 1) throw bad();
    // ε_j - ε_k swaps j and k; ε_j + ε_k sends j -> -k, k -> -j
    const int s = -root.sign_j * root.sign_k;
    img[root.j - 1] = s * root.k;
    img[root.k - 1] = s * root.j;
  }
  return SignedPerm::from_images(img);
}

std::optional<RootKind> reflection_kind(const SignedPerm& w) {
  const int n = w.rank();
  std::vector<int> moved;
  for (int j = 1; j <= n; ++j)
    if (w(j) != j) moved.push_back(j);
  if (moved.size() == 1 && w(moved[0]) == -moved[0]) return RootKind::Short;
  if (moved.size() == 2) {
    const int a = moved[0], b = moved[1];
    if (std::abs(w(a)) == b && w(b) == sign_of(w(a)) * a) return RootKind::Long;
  }
  return std::nullopt;
}

std::vector<SignedPerm> reflections(int n, RootKind kind) {
  std::vector<SignedPerm> out;
  if (kind == RootKind::Short) {
    for (int j = 1; j <= n; ++j) out.push_back(reflection(Root::short_root(j), n));
  } else {
    for (int j = 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        out.push_back(reflection(Root::long_root(j, k, 1, -1), n));
        out.push_back(reflection(Root::long_root(j, k, 1, 1), n));
      }
  }
  return out;
}

std::vector<SignedPerm> all_reflections(int n) {
  auto out = reflections(n, RootKind::Short);
  auto longs = reflections(n, RootKind::Long);
  out.insert(out.end(), longs.begin(), longs.end());
  return out;
}

std::string to_string(OrbitKind kind) {
  switch (kind) {
    case OrbitKind::Vector: return "vector";
    case OrbitKind::Spinor: return "spinor";
    case OrbitKind::PairClass: return "pair";
    case OrbitKind::Parity: return "parity";
    case OrbitKind::SpinorClass: return "spinor_class";
  }
  return "?";
}

OrbitKind parse_orbit_kind(const std::string& name) {
  for (auto k : {OrbitKind::Vector, OrbitKind::Spinor, OrbitKind::PairClass, OrbitKind::Parity,
                 OrbitKind::SpinorClass})
    if (to_string(k) == name) return k;
  throw DomainError("unknown orbit kind '" + name + "' (vector, spinor, pair, parity, spinor_class)");
}

std::size_t orbit_size(OrbitKind kind, int n) {
  check_rank(n);
  switch (kind) {
    case OrbitKind::Vector: return 2 * static_cast<std::size_t>(n);
    case OrbitKind::Spinor: return std::size_t{1} << n;
    case OrbitKind::PairClass: return static_cast<std::size_t>(n);
    case OrbitKind::Parity: return 2;
    case OrbitKind::SpinorClass: return std::size_t{1} << (n - 1);
  }
  return 0;
}

OrbitLabel OrbitLabel::vector(int n, int signed_index) {
  check_rank(n);
  if (signed_index == 0 || std::abs(signed_index) > n) throw DomainError("vector label out of range");
  return {OrbitKind::Vector, n, signed_index};
}

OrbitLabel OrbitLabel::spinor(int n, std::span<const int> subset) {
  unsigned mask = 0;
  for (int j : subset) {
    if (j < 1 || j > n) throw DomainError("spinor subset element out of range");
    mask |= 1u << (j - 1);
  }
  return spinor_mask(n, mask);
}

OrbitLabel OrbitLabel::spinor_mask(int n, unsigned mask) {
  check_rank(n);
  if (mask >> n) throw DomainError("spinor mask out of range");
  return {OrbitKind::Spinor, n, static_cast<int>(mask)};
}

OrbitLabel OrbitLabel::pair_class(int n, int j) {
  check_rank(n);
  if (j < 1 || j > n) throw DomainError("pair class index out of range");
  return {OrbitKind::PairClass, n, j};
}

OrbitLabel OrbitLabel::parity(int n, int odd) {
  check_rank(n);
  return {OrbitKind::Parity, n, odd & 1};
}

OrbitLabel OrbitLabel::spinor_class(int n, unsigned mask) {
  check_rank(n);
  if (mask >> n) throw DomainError("spinor class mask out of range");
  const unsigned full = (1u << n) - 1;
  if (mask & (1u << (n - 1))) mask = full ^ mask;
  return {OrbitKind::SpinorClass, n, static_cast<int>(mask)};
}

std::vector<int> OrbitLabel::subset() const {
  std::vector<int> out;
  if (kind != OrbitKind::Spinor && kind != OrbitKind::SpinorClass) return out;
  for (int j = 1; j <= rank; ++j)
    if (value & (1 << (j - 1))) out.push_back(j);
  return out;
}

std::string OrbitLabel::to_string() const {
  std::ostringstream os;
  auto braces = [&] {
    os << '{';
    auto s = subset();
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << '}';
  };
  switch (kind) {
    case OrbitKind::Vector: os << value; break;
    case OrbitKind::Spinor: braces(); break;
    case OrbitKind::PairClass: os << "±" << value; break;
    case OrbitKind::Parity: os << (value ? "odd" : "even"); break;
    case OrbitKind::SpinorClass: os << "~"; braces(); break;
  }
  return os.str();
}

std::vector<OrbitLabel> orbit_labels(OrbitKind kind, int n) {
  std::vector<OrbitLabel> out;
  switch (kind) {
    case OrbitKind::Vector:
      for (int j = 1; j <= n; ++j) {
        out.push_back(OrbitLabel::vector(n, j));
        out.push_back(OrbitLabel::vector(n, -j));
      }
      break;
    case OrbitKind::Spinor:
      for (unsigned m = 0; m < (1u << n); ++m) out.push_back(OrbitLabel::spinor_mask(n, m));
      break;
    case OrbitKind::PairClass:
      for (int j = 1; j <= n; ++j) out.push_back(OrbitLabel::pair_class(n, j));
      break;
    case OrbitKind::Parity:
      out.push_back(OrbitLabel::parity(n, 0));
      out.push_back(OrbitLabel::parity(n, 1));
      break;
    case OrbitKind::SpinorClass:
      for (unsigned m = 0; m < (1u << (n - 1)); ++m) out.push_back(OrbitLabel::spinor_class(n, m));
      break;
  }
  return out;
}

std::size_t label_index(const OrbitLabel& x) {
  switch (x.kind) {
    case OrbitKind::Vector: return 2 * static_cast<std::size_t>(std::abs(x.value) - 1) + (x.value < 0);
    case OrbitKind::Spinor: return static_cast<std::size_t>(x.value);
    case OrbitKind::PairClass: return static_cast<std::size_t>(x.value - 1);
    case OrbitKind::Parity: return static_cast<std::size_t>(x.value);
    case OrbitKind::SpinorClass: return static_cast<std::size_t>(x.value);
  }
  return 0;
}

namespace {

// w · λ_A: coordinate of ε_j in λ_A is -1/2 for j ∈ A; pushed through w.
unsigned act_on_mask(const SignedPerm& w, unsigned mask) {
  unsigned out = 0;
  for (int j = 1; j <= w.rank(); ++j) {
    const int s = (mask >> (j - 1) & 1u) ? -1 : 1;
    const int img = w(j);
    if (s * sign_of(img) < 0) out |= 1u << (std::abs(img) - 1);
  }
  return out;
}

}  // namespace

OrbitLabel act(const SignedPerm& w, const OrbitLabel& x) {
  const int n = w.rank();
  if (x.rank != n) throw DomainError("orbit label rank does not match the group element");
  switch (x.kind) {
    case OrbitKind::Vector: return OrbitLabel::vector(n, w(x.value));
    case OrbitKind::Spinor: return OrbitLabel::spinor_mask(n, act_on_mask(w, static_cast<unsigned>(x.value)));
    case OrbitKind::PairClass: return OrbitLabel::pair_class(n, std::abs(w(x.value)));
    case OrbitKind::Parity: return OrbitLabel::parity(n, x.value ^ (w.sign_changes() & 1));
    case OrbitKind::SpinorClass:
      return OrbitLabel::spinor_class(n, act_on_mask(w, static_cast<unsigned>(x.value)));
  }
  return x;
}

std::vector<int> orbit_permutation(const SignedPerm& w, OrbitKind kind) {
  const auto labels = orbit_labels(kind, w.rank());
  std::vector<int> perm(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) perm[i] = static_cast<int>(label_index(act(w, labels[i])));
  return perm;
}

std::string to_string(GroupClass c) {
  switch (c) {
    case GroupClass::FullB: return "FullB";
    case GroupClass::FullD: return "FullD";
    case GroupClass::NormalizerG1: return "NormalizerG1";
    case GroupClass::G1Conjugate: return "G1Conjugate";
    case GroupClass::Other: return "Other";
    case GroupClass::Intransitive: return "Intransitive";
  }
  return "?";
}

std::vector<SignedPerm> enumerate_subgroup(std::span<const SignedPerm> gens) {
  if (gens.empty()) throw DomainError("classify_subgroup: no generators");
  const int n = gens.front().rank();
  for (const auto& g : gens)
    if (g.rank() != n) throw DomainError("classify_subgroup: generators of different ranks");
  if (n > kMaxEnumerationRank)
    throw UnsupportedError("subgroup enumeration supports rank ≤ " + std::to_string(kMaxEnumerationRank));
  std::vector<SignedPerm> elems{SignedPerm::identity(n)};
  std::unordered_set<std::uint64_t> seen{elems.front().key()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      SignedPerm h = g * elems[i];
      if (seen.insert(h.key()).second) elems.push_back(h);
    }
  }
  return elems;
}

namespace {

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Number of orbits of the generated group on {±1..±n}, via union-find.
int signed_orbit_count(std::span<const SignedPerm> gens, int n, std::vector<int>* orbit_of = nullptr) {
  std::vector<int> parent(2 * n);
  std::iota(parent.begin(), parent.end(), 0);
  auto idx = [n](int s) { return s > 0 ? s - 1 : n - s - 1; };
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : gens)
    for (int s = -n; s <= n; ++s) {
      if (s == 0) continue;
      int a = find(idx(s)), b = find(idx(g(s)));
      if (a != b) parent[a] = b;
    }
  int count = 0;
  for (int i = 0; i < 2 * n; ++i) count += find(i) == i;
  if (orbit_of) {
    orbit_of->assign(2 * n, 0);
    for (int i = 0; i < 2 * n; ++i) (*orbit_of)[i] = find(i);
  }
  return count;
}

// Is there a sign choice O = {s_j j} with every generator preserving {O, -O}?
bool preserves_some_half_split(std::span<const SignedPerm> gens, int n) {
  for (unsigned signs = 0; signs < (1u << (n - 1)); ++signs) {
    auto in_o = [&](int x) {
      const int j = std::abs(x);
      const int s = (signs >> (j - 1) & 1u) ? -1 : 1;
      return sign_of(x) == s;
    };
    bool ok = true;
    for (const auto& g : gens) {
      // g must map O entirely into O or entirely into -O
      const bool first = in_o(g(in_o(1) ? 1 : -1));
      for (int j = 1; j <= n && ok; ++j) {
        const int x = in_o(j) ? j : -j;
        if (in_o(g(x)) != first) ok = false;
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

SubgroupInfo classify_subgroup(std::span<const SignedPerm> gens) {
  const auto elems = enumerate_subgroup(gens);
  const int n = gens.front().rank();
  SubgroupInfo info;
  info.order = elems.size();
  std::vector<int> orbit_of;
  const int orbits = signed_orbit_count(gens, n, &orbit_of);
  info.transitive = orbits == 1;

  const std::uint64_t full = factorial(n) << n;
  if (info.order == full) {
    info.tag = GroupClass::FullB;
    return info;
  }
  const bool all_even = std::all_of(elems.begin(), elems.end(), [](const SignedPerm& w) { return w.in_d(); });
  if (n >= 2 && all_even && info.order == full / 2) {
    info.tag = GroupClass::FullD;
    return info;
  }
  if (info.transitive) {
    // the stabilizer of a split {O, -O} has order 2 n!
    if (n >= 2 && info.order == 2 * factorial(n) && preserves_some_half_split(gens, n)) {
      info.tag = GroupClass::NormalizerG1;
    } else {
      info.tag = GroupClass::Other;
    }
    return info;
  }
  // two orbits O, -O of size n with the group equal to Stab(O)
  if (orbits == 2 && info.order == factorial(n)) {
    const int root1 = orbit_of[0];
    bool split = true;
    for (int j = 1; j <= n && split; ++j) {
      // j and -j must lie in different orbits
      if (orbit_of[j - 1] == orbit_of[n + j - 1]) split = false;
    }
    (void)root1;
    if (split) {
      info.tag = GroupClass::G1Conjugate;
      return info;
    }
  }
  info.tag = GroupClass::Intransitive;
  return info;
}

SignedPerm s4_to_d3(std::span<const int> perm) {
  if (perm.size() != 4) throw DomainError("s4_to_d3 expects the images of 1..4");
  std::array<bool, 5> seen{};
  for (int x : perm) {
    if (x < 1 || x > 4 || seen[x]) throw DomainError("s4_to_d3: not a permutation of 1..4");
    seen[x] = true;
  }
  // signed index of the 2-subset {a, b}
  auto signed_pair = [](int a, int b) {
    if (a > b) std::swap(a, b);
    if (a == 1) return b - 1;  // {1,2} -> 1, {1,3} -> 2, {1,4} -> 3
    // complements: {3,4} -> -1, {2,4} -> -2, {2,3} -> -3
    const int other = 10 - a - b - 1;  // the element of {2,3,4} not in {a,b}
    return -(other - 1);
  };
  std::vector<int> img(3);
  for (int j = 1; j <= 3; ++j) img[j - 1] = signed_pair(perm[0], perm[j]);
  return SignedPerm::from_images(img);
}

}  // namespace prymlab::weyl
