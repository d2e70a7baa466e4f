#include "bmoment/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "bmoment/errors.hpp"

namespace bmoment {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
  }
}

Rat rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw ParseError("expected a rational as \"p/q\" string or integer, got " + j.dump());
}

VecQ rational_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
  VecQ v;
  for (const auto& x : j) v.push_back(rational_from_json(x));
  return v;
}

VecZ integer_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of integers, got " + j.dump());
  VecZ v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("expected an integer, got " + x.dump());
    v.push_back(Int(x.get<long long>()));
  }
  return v;
}

std::string id_from_json(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError("expected an id (string or integer), got " + j.dump());
}

json rational_vector_to_json(const VecQ& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(format_rational(x));
  return out;
}

json integer_vector_to_json(const VecZ& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.convert_to<long long>());
  return out;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const json& require(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "' in " + j.dump());
  return *it;
}

}  // namespace

WeightedAdjacencyGraph parse_graph(const std::string& text) {
  const json j = parse_json(text);
  const std::size_t k = require(j, "torus_dim").get<std::size_t>();

  std::vector<std::string> vertices;
  for (const auto& v : require(j, "vertices")) vertices.push_back(id_from_json(v));

  std::vector<WeightedAdjacencyGraph::Edge> edges;
  for (const auto& e : require(j, "edges")) {
    const auto& ends = require(e, "ends");
    if (!ends.is_array() || ends.size() != 2)
      throw ParseError("edge 'ends' must list exactly two vertices");
    edges.push_back({id_from_json(require(e, "id")),
                     {id_from_json(ends[0]), id_from_json(ends[1])},
                     Covector(rational_vector_from_json(require(e, "weight")))});
  }
  return WeightedAdjacencyGraph(k, std::move(vertices), std::move(edges));
}

std::string graph_to_json(const WeightedAdjacencyGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"id", e.id},
                     {"ends", {e.ends[0], e.ends[1]}},
                     {"weight", rational_vector_to_json(e.weight.coords)}});
  const json j{{"torus_dim", g.torus_dim}, {"vertices", g.vertices}, {"edges", edges}};
  return j.dump(2);
}

std::vector<HalfSpace> parse_halfspaces(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ParseError("half-space file must hold a JSON array");
  std::vector<HalfSpace> out;
  for (const auto& h : j) {
    const std::string type = require(h, "type").get<std::string>();
    LatticeVector normal(integer_vector_from_json(require(h, "normal")));
    Rat bound = rational_from_json(require(h, "bound"));
    if (type == "vertex_local")
      out.push_back(HalfSpace::vertex_local(id_from_json(require(h, "vertex")), std::move(normal),
                                            std::move(bound)));
    else if (type == "global")
      out.push_back(HalfSpace::global(std::move(normal), std::move(bound)));
    else
      throw ParseError("half-space type must be 'vertex_local' or 'global', got '" + type + "'");
  }
  return out;
}

std::string halfspaces_to_json(const std::vector<HalfSpace>& hs) {
  json out = json::array();
  for (const auto& h : hs) {
    json e{{"normal", integer_vector_to_json(h.normal.coords)},
           {"bound", format_rational(h.bound)}};
    if (h.kind == HalfSpace::Kind::VertexLocal) {
      e["type"] = "vertex_local";
      e["vertex"] = h.vertex;
    } else {
      e["type"] = "global";
    }
    out.push_back(std::move(e));
  }
  return out.dump(2);
}

ExtendedPoint parse_extended_point(const std::string& text) {
  const json j = parse_json(text);
  const std::string type = require(j, "type").get<std::string>();
  if (type == "interior")
    return ExtendedPoint::interior(Covector(rational_vector_from_json(require(j, "xi"))),
                                   id_from_json(require(j, "vertex")));
  if (type == "exceptional")
    return ExtendedPoint::exceptional(Covector(rational_vector_from_json(require(j, "eta"))),
                                      id_from_json(require(j, "edge")));
  throw ParseError("point type must be 'interior' or 'exceptional', got '" + type + "'");
}

std::string extended_point_to_json(const ExtendedPoint& p) {
  json j;
  if (p.kind == ExtendedPoint::Kind::Interior) {
    j["type"] = "interior";
    j["vertex"] = p.location;
    j["xi"] = rational_vector_to_json(p.coords.coords);
  } else {
    j["type"] = "exceptional";
    j["edge"] = p.location;
    j["eta"] = rational_vector_to_json(p.coords.coords);
  }
  return j.dump(2);
}

ManifoldSpec parse_manifold_spec(const std::string& text) {
  const json j = parse_json(text);
  ManifoldSpec spec;
  spec.family = family_from_name(require(j, "family").get<std::string>());

  if (spec.family == Family::LocalModel) {
    const auto& leaf = require(j, "leaf");
    const auto& interval = require(leaf, "interval");
    if (!interval.is_array() || interval.size() != 2)
      throw ParseError("leaf interval must be [min, max]");
    spec.leaf_min = rational_from_json(interval[0]);
    spec.leaf_max = rational_from_json(interval[1]);
    spec.period = rational_from_json(require(j, "c"));
    spec.eps = rational_from_json(require(j, "eps"));
  }
  if (spec.family == Family::ZeroWeightProduct && j.contains("surface"))
    spec.surface = j["surface"].get<std::string>();

  if (j.contains("cuts")) {
    for (const auto& c : j["cuts"])
      spec.cuts.push_back({require(c, "component").get<std::string>(),
                           c.value("side", 1), require(c, "level").get<double>()});
  }
  return spec;
}

std::string manifold_spec_to_json(const ManifoldSpec& spec) {
  json j{{"family", family_name(spec.family)}};
  if (spec.family == Family::LocalModel) {
    j["leaf"] = {{"interval", {format_rational(spec.leaf_min), format_rational(spec.leaf_max)}}};
    j["c"] = format_rational(spec.period);
    j["eps"] = format_rational(spec.eps);
  }
  if (spec.family == Family::ZeroWeightProduct) j["surface"] = spec.surface;
  if (!spec.cuts.empty()) {
    json cuts = json::array();
    for (const auto& c : spec.cuts)
      cuts.push_back({{"component", c.component}, {"side", c.side}, {"level", c.level}});
    j["cuts"] = cuts;
  }
  return j.dump(2);
}

std::string classification_to_json(const ModularWeightClass& cls) {
  json j;
  j["class"] = cls.all_nonzero() ? "all_nonzero" : "all_zero";
  if (cls.no_exceptional_hypersurface)
    j["note"] = "symplectic (no exceptional hypersurface)";
  if (cls.all_nonzero()) {
    j["reference_edge"] = cls.reference_edge;
    json kernel = json::array();
    for (const auto& b : cls.common_kernel->basis)
      kernel.push_back(integer_vector_to_json(b.coords));
    j["common_kernel"] = kernel;
    json scalars;
    for (const auto& [edge, scalar] : cls.edge_scalars)
      scalars[edge] = scalar ? json(format_rational(*scalar)) : json(nullptr);
    j["edge_scalars"] = scalars;
  }
  return j.dump(2);
}

std::string validation_report_to_json(const ValidationReport& report) {
  json conditions = json::array();
  for (const auto& c : report.conditions)
    conditions.push_back(
        {{"name", c.name}, {"pass", c.pass}, {"offenders", c.offenders}, {"detail", c.detail}});
  const json j{{"ok", report.ok()}, {"conditions", conditions}, {"notes", report.notes}};
  return j.dump(2);
}

std::string vertices_to_json(const std::vector<std::pair<std::string, Covector>>& verts) {
  json out = json::array();
  for (const auto& [vertex, xi] : verts)
    out.push_back({{"vertex", vertex}, {"xi", rational_vector_to_json(xi.coords)}});
  return json{{"vertices", out}}.dump(2);
}

std::string verification_report_to_json(const VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name},
                      {"statement", c.statement},
                      {"pass", c.pass},
                      {"measured", c.measured},
                      {"tolerance", c.tolerance},
                      {"detail", c.detail}});
  const json j{{"suite", report.suite}, {"all_pass", report.all_pass()}, {"checks", checks}};
  return j.dump(2);
}

void write_moment_csv(std::ostream& out, const Manifold& m, const MomentSampleSet& set) {
  for (const auto& name : m.coordinate_names()) out << name << ",";
  for (std::size_t i = 1; i <= m.torus_rank(); ++i) out << "mu_" << i << ",";
  out << "z_flag\n";
  for (const auto& s : set.samples) {
    for (double c : s.point) out << format_double(c) << ",";
    for (double v : s.moment) out << format_double(v) << ",";
    out << (s.diverged ? 1 : 0) << "\n";
  }
}

std::string sample_summary_to_json(const Manifold& m, const MomentSampleSet& set) {
  const std::size_t k = m.torus_rank();
  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  std::size_t flagged = 0;
  for (const auto& s : set.samples) {
    if (s.diverged) ++flagged;
    for (std::size_t i = 0; i < k; ++i) {
      if (!std::isfinite(s.moment[i])) continue;
      lo[i] = std::min(lo[i], s.moment[i]);
      hi[i] = std::max(hi[i], s.moment[i]);
    }
  }

  json j;
  j["samples"] = set.samples.size();
  j["seed"] = set.seed;
  j["z_flagged"] = flagged;
  j["mu_min"] = lo;
  j["mu_max"] = hi;

  // Against the family's own b-polytope, when it has one.
  j["polytope_violations"] = nullptr;
  if (const auto graph = m.known_graph()) {
    if (classify(*graph).all_nonzero()) {
      const BPolytope p(*graph, m.known_halfspaces());
      std::size_t violations = 0;
      for (const auto& s : set.samples) {
        VecQ finite;
        for (double v : s.moment)
          if (std::isfinite(v)) finite.push_back(rational_from_double(v));
        ExtendedPoint pt = s.diverged
                               ? ExtendedPoint::exceptional(Covector(finite), s.component)
                               : ExtendedPoint::interior(Covector(finite), m.stratum_of(s.point));
        if (!contains(p, pt)) ++violations;
      }
      j["polytope_violations"] = violations;
    }
  }
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bmoment
