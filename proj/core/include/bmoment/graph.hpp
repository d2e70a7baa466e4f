#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmoment/lattice.hpp"
#include "bmoment/report.hpp"

namespace bmoment {

/// Weighted adjacency graph of a b-manifold: a vertex per component of M\Z,
/// an edge per connected component of Z, edge weights the modular weights.
/// Self-loops and parallel edges are allowed; the graph must be connected.
struct WeightedAdjacencyGraph {
  struct Edge {
    std::string id;
    std::array<std::string, 2> ends;
    Covector weight;
  };

  std::size_t torus_dim = 0;
  std::vector<std::string> vertices;
  std::vector<Edge> edges;

  WeightedAdjacencyGraph() = default;
  WeightedAdjacencyGraph(std::size_t k, std::vector<std::string> vs, std::vector<Edge> es);

  bool has_vertex(const std::string& id) const;
  const Edge* find_edge(const std::string& id) const;
  /// Edge indices incident to a vertex; self-loops appear twice.
  std::vector<std::size_t> incidences(const std::string& vertex) const;
  std::size_t degree(const std::string& vertex) const { return incidences(vertex).size(); }
};

/// Outcome of the modular-weight dichotomy.
struct ModularWeightClass {
  enum class Tag { AllZero, AllNonzero };

  Tag tag = Tag::AllZero;
  /// Edge set empty: a plain symplectic manifold, no exceptional hypersurface.
  bool no_exceptional_hypersurface = false;
  /// Kernel of the reference edge weight (AllNonzero only).
  std::optional<KernelLattice> common_kernel;
  /// Lexicographically smallest edge id; scalars are relative to its weight.
  std::string reference_edge;
  /// w_e = scalar * w_ref; absent when the weight is not proportional to the
  /// reference (such graphs fail validate_nonzero_structure).
  std::map<std::string, std::optional<Rat>> edge_scalars;

  bool all_nonzero() const { return tag == Tag::AllNonzero; }
};

/// Classifies weights as all-zero or all-nonzero.  A mix of both is the
/// configuration the dichotomy theorem excludes; it throws MixedWeightsError.
ModularWeightClass classify(const WeightedAdjacencyGraph& g);

/// Structural checks for the all-nonzero case:
///   degree_le_2            every vertex has at most two incident edge ends
///   negative_proportionality  weights at a shared vertex are negative multiples
///   line_or_even_circle    the graph is a path or an even cycle
///   shared_kernel          all edge weights have the same kernel t_Z
ValidationReport validate_nonzero_structure(const WeightedAdjacencyGraph& g);

/// The shared kernel lattice t_Z of all edge weights.
/// Throws KernelsDifferError when the kernels disagree.
KernelLattice common_kernel(const WeightedAdjacencyGraph& g);

}  // namespace bmoment
