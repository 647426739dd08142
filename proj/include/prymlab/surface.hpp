#pragma once

#include <cstdint>
#include <vector>

#include "prymlab/cover.hpp"
#include "prymlab/matrix.hpp"

/// First homology with intersection form of a cover of the sphere.
///
/// The base sphere is cut along arcs from a base point y to the branch points
/// b_1..b_k. Over it the cover is a cell complex with one face per sheet, one
/// edge e(i,t) per branch index i and sheet t (the lift of the arc to b_i
/// starting on sheet t), the vertices y_t, and one vertex per cycle of the
/// i-th monodromy permutation. Cycles are integer combinations of these
/// edges.
namespace prymlab::surface {

/// Coefficients on the edges, indexed by edge_index(i, t).
using Chain = std::vector<long long>;

class HomologyModel {
 public:
  const cover::CoverModel& cover() const { return cover_; }
  std::size_t degree() const { return d_; }
  std::size_t branch_count() const { return k_; }
  std::size_t edge_count() const { return k_ * d_; }
  std::size_t edge_index(std::size_t branch, std::size_t sheet) const { return branch * d_ + sheet; }

  /// 2g (summed over components for disjoint models).
  std::size_t rank() const { return basis_.size(); }
  /// Intersection numbers of the basis cycles.
  const IntMatrix& gram() const { return gram_; }
  const std::vector<Chain>& basis() const { return basis_; }
  std::size_t component_count() const { return components_; }

  bool is_cycle(const Chain& z) const;
  /// Basis coordinates (2g x 1) of a cycle. Throws InternalError if z is not a cycle.
  IntMatrix coordinates(const Chain& z) const;
  /// Intersection numbers (z . b_j)_j of a cycle with the basis, as a row.
  IntMatrix intersections(const Chain& z) const;
  /// Boundary of the face of sheet s.
  Chain face_boundary(std::size_t s) const;

 private:
  friend HomologyModel build_model(const cover::CoverModel&, bool);

  cover::CoverModel cover_;
  std::size_t d_ = 0, k_ = 0, components_ = 0;
  std::vector<int> head_;                 // edge -> branch vertex id (offset by d)
  std::size_t vertex_count_ = 0;
  std::vector<int> face_plus_, face_minus_;  // edge -> face with coefficient +1 / -1
  std::vector<std::size_t> basis_edges_;     // leftover edge of each basis cycle
  std::vector<char> is_cotree_;
  // faces in dual-forest order with the edge to their parent (or -1 for roots)
  std::vector<int> dual_order_, dual_parent_edge_;
  std::vector<Chain> basis_;
  std::vector<Chain> crossing_;  // push-off crossing vector of each basis cycle
  IntMatrix gram_;
};

/// Homology of a connected cover of P^1. Throws UnsupportedError for
/// positive base genus or a disconnected cover.
HomologyModel build(const cover::CoverModel& cover);
/// Same, allowing several components; H_1 is then the direct sum.
HomologyModel build_disjoint(const cover::CoverModel& cover);

/// True if M[π(i)][π′(j)] == M[i][j] for every generator.
bool is_equivariant(const cover::CoverModel& src, const cover::CoverModel& dst, const IntMatrix& fiber);

/// Map on H_1 induced by the fiber matrix (rows: src sheets, cols: dst sheets):
/// the lift of an arc on sheet i goes to Σ_j fiber[i][j] times its lift on
/// sheet j. Column c holds the dst coordinates of the image of src basis cycle c.
/// Throws DomainError if the fiber matrix is not equivariant.
IntMatrix induced_map(const HomologyModel& src, const HomologyModel& dst, const IntMatrix& fiber);

}  // namespace prymlab::surface
