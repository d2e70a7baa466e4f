#pragma once

#include <string>
#include <vector>

#include "bmoment/cone.hpp"
#include "bmoment/extended.hpp"
#include "bmoment/graph.hpp"
#include "bmoment/report.hpp"

namespace bmoment {

/// Half-space of R_G.  VertexLocal constraints have normals outside t_Z and
/// cut a single interior stratum t* x {v}; Global constraints have normals
/// inside t_Z and cut every stratum, exceptional ones included.
struct HalfSpace {
  enum class Kind { VertexLocal, Global };

  Kind kind = Kind::Global;
  std::string vertex;  // VertexLocal only
  LatticeVector normal;
  Rat bound;

  static HalfSpace vertex_local(std::string v, LatticeVector n, Rat b) {
    return {Kind::VertexLocal, std::move(v), std::move(n), std::move(b)};
  }
  static HalfSpace global(LatticeVector n, Rat b) {
    return {Kind::Global, {}, std::move(n), std::move(b)};
  }
};

/// A finite intersection of half-spaces over a validated all-nonzero graph.
class BPolytope {
 public:
  BPolytope(WeightedAdjacencyGraph graph, std::vector<HalfSpace> halfspaces);

  const WeightedAdjacencyGraph& graph() const { return graph_; }
  const std::vector<HalfSpace>& halfspaces() const { return halfspaces_; }
  const ChartAtlas& atlas() const { return atlas_; }
  const ModularWeightClass& weight_class() const { return class_; }

  /// Constraint rows (normal, bound) active on one interior stratum:
  /// all Globals plus the VertexLocals at that vertex.
  std::vector<std::pair<VecQ, Rat>> stratum_constraints(const std::string& vertex) const;

  /// Globals expressed in kernel-basis coordinates, the constraint system of
  /// the polytope "at infinity" on t_Z*.
  std::vector<std::pair<VecQ, Rat>> exceptional_constraints() const;

 private:
  WeightedAdjacencyGraph graph_;
  std::vector<HalfSpace> halfspaces_;
  ModularWeightClass class_;
  ChartAtlas atlas_;
};

/// Membership.  Interior points check Globals and their stratum's
/// VertexLocals.  Exceptional points check Globals in kernel coordinates and,
/// for each VertexLocal at an incident vertex with normal X = X' + m X_e,
/// require m > 0: the closure condition as r -> -infinity.
bool contains(const BPolytope& p, const ExtendedPoint& pt);

/// Vertices per interior stratum, brute-force route (all k-subsets of
/// constraint equalities, feasibility-filtered).  Requires a valid
/// b-polytope; sorted by (vertex id, coordinates).
std::vector<std::pair<std::string, Covector>> vertices(const BPolytope& p);

/// Incremental double-description route; must agree with vertices().
std::vector<std::pair<std::string, Covector>> vertices_incremental(const BPolytope& p);

/// Generators of the recession cone of the stratum-v polyhedron, computed
/// from the constraint normals. Lines contribute both signs. Primitive,
/// sorted.
std::vector<Covector> recession_cone(const BPolytope& p, const std::string& vertex);

/// Validity:
///   stratum_nonempty     every interior stratum polyhedron is nonempty
///   recession_matches_weights  each stratum recedes exactly along the
///                        incident weight directions (towards the exceptional
///                        strata, the -w_e rays), nowhere else
///   exceptional_nonempty_bounded  the Globals cut a nonempty bounded set on
///                        t_Z*, so the polytope meets every exceptional stratum
ValidationReport is_b_polytope(const WeightedAdjacencyGraph& graph,
                               const std::vector<HalfSpace>& halfspaces);
ValidationReport is_b_polytope(const BPolytope& p);

/// Symplectic-cut truncation at r >= -level for the strata adjacent to an
/// edge: each stratum's constraints plus the cut row <-X_e, xi> <= level.
struct TruncatedStratum {
  std::string vertex;
  std::vector<std::pair<VecQ, Rat>> constraints;
};
std::vector<TruncatedStratum> truncate(const BPolytope& p, const std::string& edge,
                                       const Rat& level);

}  // namespace bmoment
