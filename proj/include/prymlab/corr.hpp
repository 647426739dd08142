#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prymlab/cover.hpp"
#include "prymlab/matrix.hpp"
#include "prymlab/surface.hpp"
#include "prymlab/weyl.hpp"

/// Correspondences between the covers attached to W-orbits, given as
/// W-equivariant integer matrices on fibers, and the identities they satisfy.
namespace prymlab::corr {

using weyl::OrbitKind;

/// entries(i, j) is the coefficient of target sheet j in the image of source
/// sheet i. As an operator on column vectors the matrix is entriesᵀ, so
/// composition of correspondences is the product of their op() matrices.
struct FiberMatrix {
  int n = 0;
  OrbitKind src = OrbitKind::Spinor;
  OrbitKind dst = OrbitKind::Spinor;
  IntMatrix entries;

  /// Checks shape and W(B_n)-equivariance; throws DomainError otherwise.
  static FiberMatrix make(int n, OrbitKind src, OrbitKind dst, IntMatrix entries);
  IntMatrix op() const { return entries.transpose(); }
  /// The transposed correspondence.
  FiberMatrix transposed() const { return {n, dst, src, entries.transpose()}; }
  /// Sum of each row; constant for equivariant matrices.
  Int degree() const;
};

bool is_equivariant(const FiberMatrix& m);

FiberMatrix identity(int n, OrbitKind kind);
/// All-ones matrix between two orbits (T, T₁, T₂).
FiberMatrix trace(int n, OrbitKind src, OrbitKind dst);
/// σ on the spinor orbit (A ↦ complement) or ι on the vector orbit (j ↦ -j).
FiberMatrix minus_identity(int n, OrbitKind kind);
/// Quotient maps: spinor to parity or spinor classes, vector to pair classes.
FiberMatrix projection(int n, OrbitKind src, OrbitKind dst);
/// Π(A, B) = (-1)^(|A|+|B|) on the spinor orbit.
FiberMatrix parity_sign(int n);

/// D(x_A) = Σ_{B≠A} (|A Δ B| - 1) x_B.
FiberMatrix make_D(int n);
/// D_i(x_A) = Σ_{|A Δ B| = i+1} x_B.
FiberMatrix make_Di(int n, int i);

struct SFamily {
  FiberMatrix S, S0, S1, T, T1, T2;
};
/// S₀(e_A) = Σ_{j∉A} f_{-j} + Σ_{j∈A} f_j, S₁ = S₀ followed by ι,
/// S = 2S₀ + nT; T, T₁, T₂ the trace correspondences.
SFamily make_S_family(int n);

enum class Weight { Vector, Spinor };

struct OrbitGram {
  Weight weight = Weight::Spinor;
  int n = 0;
  long scale = -2;
  /// (ℓ_i, ℓ_j) = (λ_i | λ_j - λ_i) - 1 in the canonical orbit order.
  IntMatrix gram;
  /// -|orbit| (λ|λ) / n
  Int q;
};

/// Form (ε_j | ε_k) = scale·δ_jk with scale < 0. Throws DomainError when the
/// products are not integral.
OrbitGram orbit_gram(int n, Weight weight, long scale);

/// Turns fiber matrices into operators, either on fibers or on H_1.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual IntMatrix op(const FiberMatrix& m) const = 0;
  virtual IntMatrix id(OrbitKind kind) const = 0;
  virtual std::string level() const = 0;
};

class FiberEvaluator : public Evaluator {
 public:
  explicit FiberEvaluator(int n) : n_(n) {}
  IntMatrix op(const FiberMatrix& m) const override { return m.op(); }
  IntMatrix id(OrbitKind kind) const override;
  std::string level() const override { return "fiber"; }

 private:
  int n_;
};

/// Operators on H_1 of the covers of a genus-0 datum; disconnected covers
/// contribute the direct sum of their components.
class HomologyEvaluator : public Evaluator {
 public:
  explicit HomologyEvaluator(cover::MonodromyDatum datum);
  IntMatrix op(const FiberMatrix& m) const override;
  IntMatrix id(OrbitKind kind) const override;
  std::string level() const override { return "homology"; }
  const surface::HomologyModel& model(OrbitKind kind) const;

 private:
  cover::MonodromyDatum datum_;
  mutable std::map<OrbitKind, std::shared_ptr<surface::HomologyModel>> models_;
};

struct IdentityResult {
  std::string name;
  char letter = '?';
  int n = 0;
  std::string level;
  bool pass = false;
  /// Scalars solved for at fiber level, e.g. a, b, m.
  std::vector<std::pair<std::string, Int>> scalars;
  /// First failing equation with both sides.
  std::string failed;
  std::optional<IntMatrix> lhs, rhs;
};

struct IdentityInfo {
  std::string name;
  char letter;
  int min_n, max_n;
  bool odd_only;
  std::string summary;
};

/// The catalog (a)-(k) plus the isogeny degree scalars.
const std::vector<IdentityInfo>& identity_catalog();
/// Lookup by name or letter; throws DomainError for unknown names.
const IdentityInfo& find_identity(const std::string& name);
bool applies(const IdentityInfo& info, int n);

/// Throws DomainError if n is outside the identity's range.
IdentityResult check_identity(const std::string& name, int n);
IdentityResult check_identity(const std::string& name, int n, const Evaluator& level);

}  // namespace prymlab::corr
