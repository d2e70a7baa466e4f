#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bmoment/bpolytope.hpp"
#include "bmoment/extended.hpp"
#include "bmoment/graph.hpp"
#include "bmoment/models.hpp"
#include "bmoment/verify.hpp"

namespace bmoment {

// Rationals travel as "p/q" strings to preserve exactness; plain integers are
// accepted on input.  All serialization is deterministic: object keys sorted,
// shortest-round-trip floats.

/// {"torus_dim": k, "vertices": [ids], "edges":
///  [{"id": ..., "ends": [v, v], "weight": ["p/q", ...]}]}
WeightedAdjacencyGraph parse_graph(const std::string& text);
std::string graph_to_json(const WeightedAdjacencyGraph& g);

/// Array of {"type": "vertex_local", "vertex": id, "normal": [ints],
/// "bound": "p/q"} | {"type": "global", "normal": [ints], "bound": "p/q"}.
std::vector<HalfSpace> parse_halfspaces(const std::string& text);
std::string halfspaces_to_json(const std::vector<HalfSpace>& hs);

/// {"type": "interior", "vertex": id, "xi": [...]}
/// | {"type": "exceptional", "edge": id, "eta": [...]}
ExtendedPoint parse_extended_point(const std::string& text);
std::string extended_point_to_json(const ExtendedPoint& p);

/// {"family": "local_model", "leaf": {"interval": ["0/1", "1/1"]},
///  "c": "1/1", "eps": "1/1"} and friends.
ManifoldSpec parse_manifold_spec(const std::string& text);
std::string manifold_spec_to_json(const ManifoldSpec& spec);

std::string classification_to_json(const ModularWeightClass& cls);
std::string validation_report_to_json(const ValidationReport& report);
std::string vertices_to_json(const std::vector<std::pair<std::string, Covector>>& verts);
std::string verification_report_to_json(const VerificationReport& report);

/// CSV: one row per sample: coordinate columns, mu_1..mu_k, z_flag.
void write_moment_csv(std::ostream& out, const Manifold& m, const MomentSampleSet& set);

/// {"samples": n, "mu_min": [...], "mu_max": [...], "z_flagged": n,
///  "polytope_violations": n | null}
std::string sample_summary_to_json(const Manifold& m, const MomentSampleSet& set);

std::string read_file(const std::string& path);

}  // namespace bmoment
