#pragma once

#include <map>
#include <string>

#include "bmoment/graph.hpp"

namespace bmoment {

/// A point of the extended codomain R_G = t* x V  ⊔  t_Z* x E.
/// Interior points carry a full covector xi and a vertex; exceptional points
/// carry a covector eta on the kernel-basis coordinates and an edge.
struct ExtendedPoint {
  enum class Kind { Interior, Exceptional };

  Kind kind = Kind::Interior;
  Covector coords;       // xi (dim k) or eta (dim k-1)
  std::string location;  // vertex id or edge id

  static ExtendedPoint interior(Covector xi, std::string vertex) {
    return {Kind::Interior, std::move(xi), std::move(vertex)};
  }
  static ExtendedPoint exceptional(Covector eta, std::string edge) {
    return {Kind::Exceptional, std::move(eta), std::move(edge)};
  }
  bool operator==(const ExtendedPoint& o) const {
    return kind == o.kind && coords == o.coords && location == o.location;
  }
};

/// One-sided log coordinate chart near an exceptional stratum:
/// u = sign * exp(r / period), with r the X_e-component of xi.
struct LogChart {
  std::string edge;
  std::string side_vertex;
  int sign = +1;  // which sign of the transverse coordinate this side carries
  LatticeVector direction;  // X_e, pairs positively with the edge weight
  Rat period;               // <X_e, w_e>, the modular period

  double transverse(double r) const;
};

/// Chart data for every edge of a validated all-nonzero graph, sharing one
/// fixed kernel basis for the whole session.
struct ChartAtlas {
  KernelLattice kernel;  // canonical basis of t_Z
  struct EdgeChart {
    LatticeVector direction;
    Rat period;
    std::array<LogChart, 2> sides;  // sides follow edge-endpoint order; ends[0] is u > 0
  };
  std::map<std::string, EdgeChart> charts;

  const EdgeChart& chart(const std::string& edge) const;
};

/// Builds the atlas; requires validate_nonzero_structure to pass.
ChartAtlas build_atlas(const WeightedAdjacencyGraph& g);

struct Decomposition {
  Covector eta;  // restriction of xi to the kernel basis, dim k-1
  Rat r;         // <X_e, xi>
};

/// Splits xi along t ≅ t_Z x <X_e>: eta_j = <b_j, xi>, r = <X_e, xi>.
Decomposition decompose(const ChartAtlas& atlas, const Covector& xi, const std::string& edge);

/// Inverse of decompose: the unique xi with the given kernel coordinates and
/// X_e-component.
Covector reconstruct(const ChartAtlas& atlas, const Covector& eta, const Rat& r,
                     const std::string& edge);

/// The exceptional point (eta, e): the limit of interior points whose
/// decomposition has r -> -infinity at fixed eta.
ExtendedPoint limit_at_infinity(const Covector& eta, const std::string& edge);

}  // namespace bmoment
