#include "bmoment/bpolytope.hpp"

#include <algorithm>
#include <functional>

#include "bmoment/errors.hpp"

namespace bmoment {

namespace {

MatQ rows_to_matrix(const std::vector<std::pair<VecQ, Rat>>& constraints, std::size_t dim) {
  MatQ a(constraints.size(), dim);
  for (std::size_t i = 0; i < constraints.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) a.at(i, j) = constraints[i].first[j];
  return a;
}

VecQ bounds_of(const std::vector<std::pair<VecQ, Rat>>& constraints) {
  VecQ b(constraints.size());
  for (std::size_t i = 0; i < constraints.size(); ++i) b[i] = constraints[i].second;
  return b;
}

}  // namespace

BPolytope::BPolytope(WeightedAdjacencyGraph graph, std::vector<HalfSpace> halfspaces)
    : graph_(std::move(graph)), halfspaces_(std::move(halfspaces)) {
  class_ = classify(graph_);
  if (!class_.all_nonzero())
    throw ValidationError("b-polytopes are defined over all-nonzero weighted graphs");
  const ValidationReport structure = validate_nonzero_structure(graph_);
  if (!structure.ok())
    throw ValidationError("graph fails nonzero-structure validation; no b-polytope exists");
  atlas_ = build_atlas(graph_);

  const Covector& ref_weight = graph_.find_edge(class_.reference_edge)->weight;
  for (const auto& h : halfspaces_) {
    if (h.normal.dim() != graph_.torus_dim)
      throw DimensionMismatchError("half-space normal dimension != torus_dim");
    if (is_zero(h.normal.coords)) throw ValidationError("half-space normal must be nonzero");
    const bool in_tz = pairing(h.normal, ref_weight) == 0;
    if (h.kind == HalfSpace::Kind::VertexLocal) {
      if (!graph_.has_vertex(h.vertex))
        throw ValidationError("half-space references unknown vertex '" + h.vertex + "'");
      if (in_tz)
        throw ValidationError("vertex-local normal lies in t_Z; use a global half-space");
    } else if (!in_tz) {
      throw ValidationError("global normal must lie in t_Z");
    }
  }
}

std::vector<std::pair<VecQ, Rat>> BPolytope::stratum_constraints(const std::string& vertex) const {
  if (!graph_.has_vertex(vertex)) throw ValidationError("unknown vertex '" + vertex + "'");
  std::vector<std::pair<VecQ, Rat>> rows;
  for (const auto& h : halfspaces_) {
    if (h.kind == HalfSpace::Kind::VertexLocal && h.vertex != vertex) continue;
    rows.emplace_back(to_rational(h.normal.coords), h.bound);
  }
  return rows;
}

std::vector<std::pair<VecQ, Rat>> BPolytope::exceptional_constraints() const {
  const std::size_t rank = atlas_.kernel.rank();
  std::vector<std::pair<VecQ, Rat>> rows;
  for (const auto& h : halfspaces_) {
    if (h.kind != HalfSpace::Kind::Global) continue;
    // Coordinates of the normal in the kernel basis; integral because the
    // kernel is saturated.
    MatQ sys(h.normal.dim(), rank);
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t i = 0; i < h.normal.dim(); ++i)
        sys.at(i, j) = Rat(atlas_.kernel.basis[j].coords[i]);
    // Overdetermined exact solve via augmented elimination.
    MatQ aug(h.normal.dim(), rank + 1);
    for (std::size_t i = 0; i < h.normal.dim(); ++i) {
      for (std::size_t j = 0; j < rank; ++j) aug.at(i, j) = sys.at(i, j);
      aug.at(i, rank) = Rat(h.normal.coords[i]);
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < rank && r < aug.rows; ++c) {
      std::size_t p = r;
      while (p < aug.rows && aug.at(p, c) == 0) ++p;
      if (p == aug.rows) continue;
      for (std::size_t j = 0; j <= rank; ++j) std::swap(aug.at(r, j), aug.at(p, j));
      const Rat inv = Rat(1) / aug.at(r, c);
      for (std::size_t j = c; j <= rank; ++j) aug.at(r, j) *= inv;
      for (std::size_t i = 0; i < aug.rows; ++i) {
        if (i == r || aug.at(i, c) == 0) continue;
        const Rat f = aug.at(i, c);
        for (std::size_t j = c; j <= rank; ++j) aug.at(i, j) -= f * aug.at(r, j);
      }
      pivot_col.push_back(c);
      ++r;
    }
    VecQ coeff(rank, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) coeff[pivot_col[i]] = aug.at(i, rank);
    rows.emplace_back(std::move(coeff), h.bound);
  }
  return rows;
}

bool contains(const BPolytope& p, const ExtendedPoint& pt) {
  const auto& g = p.graph();
  if (pt.kind == ExtendedPoint::Kind::Interior) {
    if (!g.has_vertex(pt.location))
      throw ValidationError("point references vertex '" + pt.location + "' not in the graph");
    if (pt.coords.dim() != g.torus_dim)
      throw DimensionMismatchError("interior point dimension != torus_dim");
    for (const auto& [normal, bound] : p.stratum_constraints(pt.location))
      if (dot(normal, pt.coords.coords) > bound) return false;
    return true;
  }

  const auto* edge = g.find_edge(pt.location);
  if (!edge) throw ValidationError("point references edge '" + pt.location + "' not in the graph");
  if (pt.coords.dim() != p.atlas().kernel.rank())
    throw DimensionMismatchError("exceptional point dimension != rank of t_Z");

  for (const auto& [coeff, bound] : p.exceptional_constraints())
    if (dot(coeff, pt.coords.coords) > bound) return false;

  // Vertex-local constraints at the incident strata decide membership in the
  // r -> -infinity limit: with X = X' + m X_e, the value <X, xi> tends to
  // -infinity when m > 0 (eventually satisfied) and +infinity when m < 0.
  const auto& chart = p.atlas().chart(pt.location);
  for (const auto& h : p.halfspaces()) {
    if (h.kind != HalfSpace::Kind::VertexLocal) continue;
    if (h.vertex != edge->ends[0] && h.vertex != edge->ends[1]) continue;
    const std::size_t k = g.torus_dim;
    MatQ m(k, k);
    VecQ rhs(k);
    for (std::size_t i = 0; i < p.atlas().kernel.rank(); ++i)
      for (std::size_t j = 0; j < k; ++j)
        m.at(j, i) = Rat(p.atlas().kernel.basis[i].coords[j]);
    for (std::size_t j = 0; j < k; ++j) m.at(j, k - 1) = Rat(chart.direction.coords[j]);
    for (std::size_t j = 0; j < k; ++j) rhs[j] = Rat(h.normal.coords[j]);
    const auto sol = solve_square(std::move(m), std::move(rhs));
    if (!sol) throw Error("chart basis unexpectedly singular");
    const Rat m_component = (*sol)[k - 1];
    if (m_component < 0) return false;
    if (m_component == 0) throw Error("vertex-local normal decomposed with zero X_e component");
  }
  return true;
}

namespace {

std::vector<std::pair<std::string, Covector>> collect_vertices(
    const BPolytope& p, const std::function<std::vector<VecQ>(const MatQ&, const VecQ&)>& enumerate) {
  const ValidationReport report = is_b_polytope(p);
  if (!report.ok())
    throw ValidationError("vertex enumeration requires a valid b-polytope: " +
                          [&] {
                            std::string s;
                            for (const auto& c : report.conditions)
                              if (!c.pass) s += c.name + " ";
                            return s;
                          }());
  std::vector<std::pair<std::string, Covector>> out;
  std::vector<std::string> vs = p.graph().vertices;
  std::sort(vs.begin(), vs.end());
  for (const auto& v : vs) {
    const auto rows = p.stratum_constraints(v);
    const MatQ a = rows_to_matrix(rows, p.graph().torus_dim);
    const VecQ b = bounds_of(rows);
    for (auto& x : enumerate(a, b)) out.emplace_back(v, Covector(std::move(x)));
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, Covector>> vertices(const BPolytope& p) {
  return collect_vertices(p, [](const MatQ& a, const VecQ& b) { return vertices_bruteforce(a, b); });
}

std::vector<std::pair<std::string, Covector>> vertices_incremental(const BPolytope& p) {
  return collect_vertices(
      p, [](const MatQ& a, const VecQ& b) { return dd_polyhedron(a, b).vertices; });
}

std::vector<Covector> recession_cone(const BPolytope& p, const std::string& vertex) {
  const auto rows = p.stratum_constraints(vertex);
  MatQ a = rows_to_matrix(rows, p.graph().torus_dim);
  const ConeGenerators cone = dd_cone(a);
  std::vector<VecZ> rays = cone.rays;
  for (const auto& l : cone.lineality) {
    rays.push_back(l);
    VecZ neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    rays.push_back(std::move(neg));
  }
  std::sort(rays.begin(), rays.end());
  std::vector<Covector> out;
  for (auto& r : rays) out.emplace_back(to_rational(r));
  return out;
}

ValidationReport is_b_polytope(const BPolytope& p) {
  const auto& g = p.graph();
  ValidationReport report;

  Condition nonempty{"stratum_nonempty", true, {}, "each interior stratum polyhedron is nonempty"};
  Condition recession{"recession_matches_weights", true, {},
                      "each stratum recession cone is exactly the cone of incident weight "
                      "directions towards the exceptional strata"};
  std::size_t total_vertices = 0;

  for (const auto& v : g.vertices) {
    const auto rows = p.stratum_constraints(v);
    const MatQ a = rows_to_matrix(rows, g.torus_dim);
    const VecQ b = bounds_of(rows);
    const PolyhedronGenerators gen = dd_polyhedron(a, b);
    if (!gen.feasible) {
      nonempty.pass = false;
      nonempty.offenders.push_back(v);
    }
    total_vertices += gen.vertices.size();

    // Expected: cone{ -w_e : e incident to v }. The moment map's r-coordinate
    // tends to -infinity towards each incident exceptional stratum, so the
    // stratum recedes along the negated weight of every incident edge.
    ConeGenerators expected;
    for (const auto idx : g.incidences(v)) {
      VecQ neg = scale(Rat(-1), g.edges[idx].weight.coords);
      VecZ dir = primitive_direction(neg);
      if (std::find(expected.rays.begin(), expected.rays.end(), dir) == expected.rays.end())
        expected.rays.push_back(std::move(dir));
    }
    if (!cone_equal(gen.recession, expected)) {
      recession.pass = false;
      recession.offenders.push_back(v);
    }
  }
  report.conditions.push_back(nonempty);
  report.conditions.push_back(recession);

  Condition at_infinity{"exceptional_nonempty_bounded", true, {},
                        "the global half-spaces cut a nonempty bounded polytope on t_Z*, "
                        "so the set meets every exceptional stratum"};
  const auto eta_rows = p.exceptional_constraints();
  const std::size_t rank = p.atlas().kernel.rank();
  if (rank == 0) {
    // t_Z* is a point; it is always met and bounded.
  } else {
    const MatQ a = rows_to_matrix(eta_rows, rank);
    const VecQ b = bounds_of(eta_rows);
    const PolyhedronGenerators gen = dd_polyhedron(a, b);
    const bool bounded = gen.recession.rays.empty() && gen.recession.lineality.empty();
    if (!gen.feasible || !bounded) {
      at_infinity.pass = false;
      for (const auto& e : g.edges) at_infinity.offenders.push_back(e.id);
      at_infinity.detail = gen.feasible ? "unbounded polytope at infinity" : "empty polytope at infinity";
    }
  }
  report.conditions.push_back(at_infinity);

  if (report.ok() && total_vertices == 0) report.notes.push_back("no vertices");
  return report;
}

ValidationReport is_b_polytope(const WeightedAdjacencyGraph& graph,
                               const std::vector<HalfSpace>& halfspaces) {
  return is_b_polytope(BPolytope(graph, halfspaces));
}

std::vector<TruncatedStratum> truncate(const BPolytope& p, const std::string& edge,
                                       const Rat& level) {
  const auto* e = p.graph().find_edge(edge);
  if (!e) throw ValidationError("unknown edge '" + edge + "'");
  const auto& chart = p.atlas().chart(edge);

  std::vector<std::string> adjacent{e->ends[0]};
  if (e->ends[1] != e->ends[0]) adjacent.push_back(e->ends[1]);

  std::vector<TruncatedStratum> out;
  for (const auto& v : adjacent) {
    TruncatedStratum t;
    t.vertex = v;
    t.constraints = p.stratum_constraints(v);
    VecQ cut(p.graph().torus_dim);
    for (std::size_t j = 0; j < cut.size(); ++j) cut[j] = Rat(-chart.direction.coords[j]);
    t.constraints.emplace_back(std::move(cut), level);  // <-X_e, xi> <= level, i.e. r >= -level
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace bmoment
