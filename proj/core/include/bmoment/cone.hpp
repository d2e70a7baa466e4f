#pragma once

#include <vector>

#include "bmoment/linalg.hpp"

namespace bmoment {

/// Generator description of a polyhedral cone: span(lineality) + cone(rays).
/// Rays are extreme modulo the lineality space and primitive-normalized.
struct ConeGenerators {
  std::vector<VecZ> lineality;
  std::vector<VecZ> rays;

  bool trivial() const { return lineality.empty() && rays.empty(); }
};

/// Extreme-ray description of {y : a y <= 0} via incremental double
/// description: constraints are inserted one at a time, new rays are formed
/// from (+,-) pairs, and non-extreme rays are pruned by an exact rank test.
ConeGenerators dd_cone(const MatQ& a);

/// Generator description of the polyhedron {x : a x <= b} from the
/// homogenization {(t, x) : a x <= b t, t >= 0}.
struct PolyhedronGenerators {
  bool feasible = false;
  std::vector<VecQ> vertices;  // sorted lexicographically
  ConeGenerators recession;
  bool pointed() const { return recession.lineality.empty(); }
};
PolyhedronGenerators dd_polyhedron(const MatQ& a, const VecQ& b);

/// Oracle route: vertices from all dim-subsets of active constraint
/// equalities, filtered by feasibility. Sorted lexicographically.
std::vector<VecQ> vertices_bruteforce(const MatQ& a, const VecQ& b);

/// Exact membership of g in cone(generators) via Caratheodory subsets.
bool in_cone(const std::vector<VecZ>& generators, const VecZ& g);

/// Equality of the cones span(L1)+cone(R1) and span(L2)+cone(R2).
bool cone_equal(const ConeGenerators& a, const ConeGenerators& b);

}  // namespace bmoment
