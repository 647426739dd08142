#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prymlab/errors.hpp"
#include "prymlab/matrix.hpp"

/// Exact integer lattice algebra. Sublattices of Z^m are given by basis
/// matrices whose columns are the generators.
namespace prymlab::lattice {

/// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;
  /// The nonzero diagonal entries of D, in order.
  std::vector<Int> divisors;
};

SmithForm snf(const IntMatrix& m);

/// Column Hermite form: M * V == H, V unimodular, the first `rank` columns of H
/// are in lower echelon form and the rest are zero.
struct ColumnEchelon {
  IntMatrix H;
  IntMatrix V;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};

ColumnEchelon column_echelon(const IntMatrix& m);

/// Exact determinant (fraction-free elimination).
Int determinant(const IntMatrix& m);

/// Basis of the column span. Not saturated.
IntMatrix image(const IntMatrix& m);
/// Basis of {x : M x = 0}. Always saturated.
IntMatrix kernel(const IntMatrix& m);
/// Smallest primitive sublattice containing the columns of `basis`.
IntMatrix saturate(const IntMatrix& basis);
IntMatrix intersect(const IntMatrix& a, const IntMatrix& b);
IntMatrix sum(const IntMatrix& a, const IntMatrix& b);

/// Integer coordinates x with basis * x == v (v may hold several columns).
std::optional<IntMatrix> solve(const IntMatrix& basis, const IntMatrix& v);
bool contains(const IntMatrix& outer, const IntMatrix& inner);
bool same_lattice(const IntMatrix& a, const IntMatrix& b);
/// Canonical basis (column Hermite form); equal lattices give equal matrices.
IntMatrix canonical_basis(const IntMatrix& basis);
/// [saturate(L) : L] for a full-column-rank basis of L.
Int saturation_index(const IntMatrix& basis);

/// Elementary divisor chain d_1 | ... | d_p of a polarization.
struct PolType {
  std::vector<long long> chain;

  std::size_t size() const { return chain.size(); }
  bool operator==(const PolType&) const = default;
  std::string to_string() const;
};

/// A sublattice of an ambient lattice carrying an alternating form.
struct PolarizedLattice {
  /// Alternating form on the ambient lattice.
  IntMatrix gram;
  /// Columns span the sublattice.
  IntMatrix basis;

  std::size_t ambient_rank() const { return gram.rows(); }
  std::size_t rank() const { return basis.cols(); }
  IntMatrix restricted_gram() const { return basis.transpose() * gram * basis; }
};

/// Raised by ptype for odd rank or a degenerate restricted form.
class DegenerateForm : public DomainError {
 public:
  DegenerateForm(const std::string& what, IntMatrix radical)
      : DomainError(what), radical_(std::move(radical)) {}
  /// Basis of the radical, in ambient coordinates.
  const IntMatrix& radical() const { return radical_; }

 private:
  IntMatrix radical_;
};

PolarizedLattice saturate(const PolarizedLattice& sub);
PolType ptype(const PolarizedLattice& sub);
/// Type of the Smith divisors of an alternating matrix given directly.
PolType ptype_of_gram(const IntMatrix& alternating);
PolType dual_type(const PolType& t);
bool is_valid_chain(const PolType& t);
/// Multiply every entry by numerator / denominator; throws if not integral.
PolType scale_type(const PolType& t, long long numerator, long long denominator);

bool is_alternating(const IntMatrix& g);

}  // namespace prymlab::lattice
