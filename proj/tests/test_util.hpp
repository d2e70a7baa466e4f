#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "bmoment/graph.hpp"
#include "bmoment/lattice.hpp"

namespace bmoment::test {

inline Covector cv(std::initializer_list<long> coords) {
  VecQ v;
  for (long c : coords) v.emplace_back(c);
  return Covector(std::move(v));
}

inline Covector cvr(std::initializer_list<Rat> coords) { return Covector(VecQ(coords)); }

inline LatticeVector lv(std::initializer_list<long> coords) {
  VecZ v;
  for (long c : coords) v.emplace_back(c);
  return LatticeVector(std::move(v));
}

inline Rat small_rat(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 19) - 9;
  const long den = 1 + static_cast<long>(rng() % 9);
  return Rat(num, den);
}

inline Covector random_covector(std::mt19937_64& rng, std::size_t k, bool nonzero = false) {
  while (true) {
    VecQ v(k);
    bool any = false;
    for (auto& x : v) {
      x = small_rat(rng);
      any = any || x != 0;
    }
    if (!nonzero || any) return Covector(std::move(v));
  }
}

/// Path graph v0 - e0 - v1 - e1 - v2 ... with the given weights.
inline WeightedAdjacencyGraph path_graph(std::size_t k, const std::vector<Covector>& weights) {
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i <= weights.size(); ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<WeightedAdjacencyGraph::Edge> edges;
  for (std::size_t i = 0; i < weights.size(); ++i)
    edges.push_back({"e" + std::to_string(i),
                     {"v" + std::to_string(i), "v" + std::to_string(i + 1)},
                     weights[i]});
  return WeightedAdjacencyGraph(k, std::move(vertices), std::move(edges));
}

/// Cycle graph with |weights| vertices and edges.
inline WeightedAdjacencyGraph cycle_graph(std::size_t k, const std::vector<Covector>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
  std::vector<WeightedAdjacencyGraph::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({"e" + std::to_string(i),
                     {"v" + std::to_string(i), "v" + std::to_string((i + 1) % n)},
                     weights[i]});
  return WeightedAdjacencyGraph(k, std::move(vertices), std::move(edges));
}

}  // namespace bmoment::test
