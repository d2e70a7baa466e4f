#include "bmoment/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bmoment/errors.hpp"

namespace bmoment {

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// w2 = lambda * w1 for nonzero covectors, when proportional.
std::optional<Rat> proportionality(const Covector& w1, const Covector& w2) {
  Rat lambda(0);
  for (std::size_t i = 0; i < w1.dim(); ++i) {
    if (w1.coords[i] != 0) {
      lambda = w2.coords[i] / w1.coords[i];
      break;
    }
  }
  for (std::size_t i = 0; i < w1.dim(); ++i)
    if (w2.coords[i] != lambda * w1.coords[i]) return std::nullopt;
  return lambda;
}

}  // namespace

WeightedAdjacencyGraph::WeightedAdjacencyGraph(std::size_t k, std::vector<std::string> vs,
                                               std::vector<Edge> es)
    : torus_dim(k), vertices(std::move(vs)), edges(std::move(es)) {
  if (torus_dim == 0) throw ValidationError("torus dimension must be >= 1");
  if (vertices.empty()) throw ValidationError("graph needs at least one vertex");

  std::set<std::string> vset(vertices.begin(), vertices.end());
  if (vset.size() != vertices.size()) throw ValidationError("duplicate vertex id");
  std::set<std::string> eset;
  std::map<std::string, std::size_t> vindex;
  for (std::size_t i = 0; i < vertices.size(); ++i) vindex[vertices[i]] = i;

  UnionFind uf(vertices.size());
  for (const auto& e : edges) {
    if (!eset.insert(e.id).second) throw ValidationError("duplicate edge id '" + e.id + "'");
    for (const auto& end : e.ends)
      if (!vset.count(end))
        throw ValidationError("edge '" + e.id + "' references unknown vertex '" + end + "'");
    if (e.weight.dim() != torus_dim)
      throw DimensionMismatchError("edge '" + e.id + "' weight dimension != torus_dim");
    uf.unite(vindex[e.ends[0]], vindex[e.ends[1]]);
  }

  for (std::size_t i = 1; i < vertices.size(); ++i)
    if (uf.find(i) != uf.find(0))
      throw ValidationError("graph is disconnected (M is assumed connected)");
}

bool WeightedAdjacencyGraph::has_vertex(const std::string& id) const {
  return std::find(vertices.begin(), vertices.end(), id) != vertices.end();
}

const WeightedAdjacencyGraph::Edge* WeightedAdjacencyGraph::find_edge(const std::string& id) const {
  for (const auto& e : edges)
    if (e.id == id) return &e;
  return nullptr;
}

std::vector<std::size_t> WeightedAdjacencyGraph::incidences(const std::string& vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].ends[0] == vertex) out.push_back(i);
    if (edges[i].ends[1] == vertex) out.push_back(i);
  }
  return out;
}

ModularWeightClass classify(const WeightedAdjacencyGraph& g) {
  ModularWeightClass out;

  if (g.edges.empty()) {
    out.tag = ModularWeightClass::Tag::AllZero;
    out.no_exceptional_hypersurface = true;
    return out;
  }

  std::vector<std::string> zero_edges, nonzero_edges;
  for (const auto& e : g.edges)
    (e.weight.zero() ? zero_edges : nonzero_edges).push_back(e.id);

  if (!zero_edges.empty() && !nonzero_edges.empty()) {
    std::string msg =
        "graph mixes zero and nonzero modular weights; the dichotomy theorem "
        "(weights are all zero or all nonzero) excludes this for b-symplectic "
        "manifolds. zero: ";
    for (const auto& id : zero_edges) msg += id + " ";
    msg += "nonzero: ";
    for (const auto& id : nonzero_edges) msg += id + " ";
    throw MixedWeightsError(msg);
  }

  if (nonzero_edges.empty()) {
    out.tag = ModularWeightClass::Tag::AllZero;
    return out;
  }

  out.tag = ModularWeightClass::Tag::AllNonzero;
  out.reference_edge = *std::min_element(nonzero_edges.begin(), nonzero_edges.end());
  const Covector& ref = g.find_edge(out.reference_edge)->weight;
  out.common_kernel = kernel_lattice(ref);
  for (const auto& e : g.edges) out.edge_scalars[e.id] = proportionality(ref, e.weight);
  return out;
}

ValidationReport validate_nonzero_structure(const WeightedAdjacencyGraph& g) {
  const ModularWeightClass cls = classify(g);
  if (!cls.all_nonzero())
    throw PreconditionError("validate_nonzero_structure requires an all-nonzero graph");

  ValidationReport report;

  Condition degree{"degree_le_2", true, {}, "every vertex has at most 2 incident edge ends"};
  for (const auto& v : g.vertices)
    if (g.degree(v) > 2) {
      degree.pass = false;
      degree.offenders.push_back(v);
    }
  report.conditions.push_back(degree);

  Condition prop{"negative_proportionality", true, {},
                 "weights of edges sharing a vertex are negative multiples of each other"};
  for (const auto& v : g.vertices) {
    const auto inc = g.incidences(v);
    for (std::size_t a = 0; a < inc.size(); ++a)
      for (std::size_t b = a + 1; b < inc.size(); ++b) {
        const auto& e1 = g.edges[inc[a]];
        const auto& e2 = g.edges[inc[b]];
        const auto lambda = proportionality(e1.weight, e2.weight);
        if (!lambda || *lambda >= 0) {
          prop.pass = false;
          prop.offenders.push_back(v + ":" + e1.id + "/" + e2.id);
        }
      }
  }
  report.conditions.push_back(prop);

  Condition shape{"line_or_even_circle", true, {},
                  "graph is a line, or a circle with an even number of vertices"};
  const bool degrees_ok = degree.pass;
  if (!degrees_ok) {
    shape.pass = false;
    shape.detail += " (a vertex of degree > 2 fits neither shape)";
  } else if (g.edges.size() == g.vertices.size()) {
    if (g.vertices.size() % 2 != 0) {
      shape.pass = false;
      shape.detail = "circle with an odd number of vertices";
      shape.offenders.push_back(std::to_string(g.vertices.size()) + " vertices");
    }
  } else if (g.edges.size() + 1 != g.vertices.size()) {
    // Connected with max degree 2 leaves only |E| = |V| (circle) or |V|-1 (line).
    shape.pass = false;
    shape.detail = "edge/vertex count fits neither a line nor a circle";
  }
  report.conditions.push_back(shape);

  Condition kernels{"shared_kernel", true, {}, "all edge weights share the kernel t_Z"};
  const KernelLattice& ref_kernel = *cls.common_kernel;
  for (const auto& e : g.edges)
    if (!(kernel_lattice(e.weight) == ref_kernel)) {
      kernels.pass = false;
      kernels.offenders.push_back(e.id);
    }
  report.conditions.push_back(kernels);

  if (report.ok()) {
    std::string basis = "t_Z basis:";
    for (const auto& b : ref_kernel.basis) basis += " " + to_string(b);
    report.notes.push_back(basis);
  }
  return report;
}

KernelLattice common_kernel(const WeightedAdjacencyGraph& g) {
  const ModularWeightClass cls = classify(g);
  if (!cls.all_nonzero())
    throw PreconditionError("common_kernel requires an all-nonzero graph");
  KernelLattice ref = kernel_lattice(g.find_edge(cls.reference_edge)->weight);
  for (const auto& e : g.edges)
    if (!(kernel_lattice(e.weight) == ref))
      throw KernelsDifferError("edge '" + e.id + "' has a different weight kernel; no common t_Z");
  return ref;
}

}  // namespace bmoment
