#include "bmoment/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "bmoment/errors.hpp"
#include "bmoment/io.hpp"

namespace bmoment {

namespace {

ManifoldSpec default_local_model() {
  ManifoldSpec spec;
  spec.family = Family::LocalModel;
  spec.leaf_min = Rat(0);
  spec.leaf_max = Rat(1);
  spec.period = Rat(1);
  spec.eps = Rat(1);
  return spec;
}

ManifoldSpec spec_of(Family f) {
  ManifoldSpec spec;
  spec.family = f;
  return spec;
}

BPolytope known_polytope(const Manifold& m) {
  return BPolytope(*m.known_graph(), m.known_halfspaces());
}

Covector random_covector(std::mt19937_64& rng, std::size_t k, bool nonzero) {
  while (true) {
    VecQ c(k);
    bool any = false;
    for (auto& x : c) {
      const long v = static_cast<long>(rng() % 7) - 3;
      x = Rat(v);
      any = any || v != 0;
    }
    if (!nonzero || any) return Covector(std::move(c));
  }
}

struct RandomGraph {
  WeightedAdjacencyGraph graph;
  Covector base_weight;  // direction shared by all weights (nonzero case)
};

// Path or even cycle with weights lambda_i * base, signs alternating along the
// graph so that validate_nonzero_structure holds.
RandomGraph random_structured_graph(std::mt19937_64& rng, bool zero_weights) {
  const std::size_t k = 1 + rng() % 3;
  const bool cycle = rng() % 2 == 0;
  const std::size_t nv = cycle ? (rng() % 2 ? 2 : 4) : 2 + rng() % 4;

  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < nv; ++i) vertices.push_back("v" + std::to_string(i));

  const Covector base = random_covector(rng, k, true);
  std::vector<WeightedAdjacencyGraph::Edge> edges;
  const std::size_t ne = cycle ? nv : nv - 1;
  Rat lambda(1);
  for (std::size_t i = 0; i < ne; ++i) {
    Covector w(zero_weights ? VecQ(k, Rat(0)) : scale(lambda, base.coords));
    edges.push_back({"e" + std::to_string(i),
                     {vertices[i % nv], vertices[(i + 1) % nv]},
                     std::move(w)});
    lambda = -lambda * Rat(1 + static_cast<long>(rng() % 3));
  }
  return {WeightedAdjacencyGraph(k, std::move(vertices), std::move(edges)), base};
}

CheckResult make_check(std::string name, std::string statement, bool pass, double measured,
                       double tolerance, std::string detail = {}) {
  return {std::move(name), std::move(statement), pass, measured, tolerance, std::move(detail)};
}

const char* kDichotomyStatement = "modular weights are all zero or all nonzero";

}  // namespace

std::vector<CheckResult> check_dichotomy(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed);

  std::size_t mixed_rejected = 0;
  const std::size_t mixed_total = 100;
  for (std::size_t i = 0; i < mixed_total; ++i) {
    RandomGraph rg = random_structured_graph(rng, false);
    // Zero out one edge weight to build the impossible mixed configuration.
    auto edges = rg.graph.edges;
    edges[rng() % edges.size()].weight = Covector(VecQ(rg.graph.torus_dim, Rat(0)));
    if (edges.size() == 1) {
      // Need at least one nonzero weight as well.
      edges.push_back(edges[0]);
      edges[1].id = "e_extra";
      edges[1].weight = rg.base_weight;
    }
    WeightedAdjacencyGraph mixed(rg.graph.torus_dim, rg.graph.vertices, std::move(edges));
    try {
      classify(mixed);
    } catch (const MixedWeightsError&) {
      ++mixed_rejected;
    }
  }
  out.push_back(make_check("mixed_graphs_rejected", kDichotomyStatement,
                           mixed_rejected == mixed_total, static_cast<double>(mixed_rejected),
                           static_cast<double>(mixed_total), "MixedWeights raised per graph"));

  std::size_t pure_accepted = 0;
  const std::size_t pure_total = 100;
  for (std::size_t i = 0; i < pure_total; ++i) {
    const bool zero = i % 2 == 0;
    RandomGraph rg = random_structured_graph(rng, zero);
    try {
      const auto cls = classify(rg.graph);
      if (cls.all_nonzero() == !zero) ++pure_accepted;
    } catch (const ValidationError&) {
    }
  }
  out.push_back(make_check("pure_graphs_accepted", kDichotomyStatement,
                           pure_accepted == pure_total, static_cast<double>(pure_accepted),
                           static_cast<double>(pure_total)));

  if (!opt.graph_json.empty()) {
    bool pure = true;
    std::string detail;
    try {
      classify(parse_graph(opt.graph_json));
    } catch (const MixedWeightsError& e) {
      pure = false;
      detail = e.what();
    }
    out.push_back(make_check("input_graph_pure", kDichotomyStatement, pure, pure ? 1 : 0, 1,
                             std::move(detail)));
  }
  return out;
}

std::vector<CheckResult> check_weight_recovery(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  const char* statement = "modular weights are the log coefficients of the Hamiltonians along Z";

  const auto btorus = make_manifold(spec_of(Family::BTorus));
  const double c0 = modular_weight_estimate(*btorus, "theta0", opt.tol)[0];
  const double cpi = modular_weight_estimate(*btorus, "thetapi", opt.tol)[0];
  out.push_back(make_check("btorus_magnitudes", statement,
                           std::fabs(std::fabs(c0) - 1.0) <= opt.tol.weight_fit &&
                               std::fabs(std::fabs(cpi) - 1.0) <= opt.tol.weight_fit,
                           std::max(std::fabs(std::fabs(c0) - 1.0), std::fabs(std::fabs(cpi) - 1.0)),
                           opt.tol.weight_fit));
  out.push_back(make_check("btorus_opposite_signs",
                           "weights of edges sharing a vertex are negative multiples of each other",
                           c0 * cpi < 0, c0 * cpi, 0.0));

  const auto zwp = make_manifold(spec_of(Family::ZeroWeightProduct));
  double worst = 0.0;
  for (const auto& comp : zwp->exceptional_components())
    for (double c : modular_weight_estimate(*zwp, comp, opt.tol))
      worst = std::max(worst, std::fabs(c));
  out.push_back(make_check("zero_weight_product_zero", statement, worst < opt.tol.weight_fit,
                           worst, opt.tol.weight_fit));
  return out;
}

std::vector<CheckResult> check_local_model_image(const SuiteOptions& opt) {
  const char* statement = "the moment map near Z splits as (leaf moment, c log|t|)";
  const auto m = make_manifold(default_local_model());
  const BPolytope p = known_polytope(*m);

  const std::size_t n = opt.samples ? opt.samples : 10000;
  const auto set = image_sample(*m, n, opt.seed);

  std::size_t violations = 0;
  for (const auto& s : set.samples) {
    ExtendedPoint pt =
        s.diverged
            ? ExtendedPoint::exceptional(Covector({rational_from_double(s.moment[0])}),
                                         s.component)
            : ExtendedPoint::interior(Covector({rational_from_double(s.moment[0]),
                                                rational_from_double(s.moment[1])}),
                                      m->stratum_of(s.point));
    if (!contains(p, pt)) ++violations;
  }
  return {make_check("local_model_image_in_polytope", statement, violations == 0,
                     static_cast<double>(violations), 0.0,
                     std::to_string(n) + " samples against the leaf-interval x (-inf, N] polytope")};
}

std::vector<CheckResult> check_convexity(const SuiteOptions& opt) {
  const char* statement = "the moment image of a Hamiltonian torus action is convex";
  std::vector<CheckResult> out;
  const std::size_t n = opt.samples ? opt.samples : 100000;
  const std::size_t pairs = 1000;

  {
    const auto m = make_manifold(default_local_model());
    const auto report =
        convexity_check(image_sample(*m, n, opt.seed).finite_moments(), pairs,
                        opt.tol.hull_delta, opt.seed + 1);
    out.push_back(make_check("local_model_convex", statement, report.violations == 0,
                             static_cast<double>(report.violations), 0.0));
  }
  {
    const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
    const auto report =
        convexity_check(image_sample(*m, n, opt.seed).finite_moments(), pairs,
                        opt.tol.hull_delta, opt.seed + 2);
    out.push_back(make_check("zero_weight_product_convex", statement, report.violations == 0,
                             static_cast<double>(report.violations), 0.0));
  }
  {
    // Two separated clusters: the midpoint test must detect non-convexity.
    std::vector<std::vector<double>> clusters;
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> unit(-0.5, 0.5);
    for (int i = 0; i < 500; ++i) clusters.push_back({unit(rng), unit(rng)});
    for (int i = 0; i < 500; ++i) clusters.push_back({3.0 + unit(rng), unit(rng)});
    const auto report = convexity_check(clusters, pairs, opt.tol.hull_delta, opt.seed + 4);
    out.push_back(make_check("non_convex_fixture_detected", statement, report.violations > 0,
                             static_cast<double>(report.violations), 1.0,
                             "test power: separated clusters must violate"));
  }
  return out;
}

namespace {

CheckResult vertices_match_fixed_points(const std::string& name, const Manifold& m,
                                        const Tolerances& tol) {
  const BPolytope p = known_polytope(m);
  const auto verts = vertices(p);
  const auto fps = fixed_points(m, tol);

  double worst = 0.0;
  bool pass = !fps.diagnostic.empty() ? false : verts.size() == fps.components.size();
  auto moment_distance = [](const std::vector<double>& a, const VecQ& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      d = std::max(d, std::fabs(a[i] - to_double(b[i])));
    return d;
  };

  std::vector<bool> used(fps.components.size(), false);
  for (const auto& [vertex, xi] : verts) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = fps.components.size();
    for (std::size_t i = 0; i < fps.components.size(); ++i) {
      if (used[i]) continue;
      if (m.stratum_of(fps.components[i].representative) != vertex) continue;
      const double d = moment_distance(fps.components[i].moment, xi.coords);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    if (best_i == fps.components.size() || best > tol.vertex_match) {
      pass = false;
    } else {
      used[best_i] = true;
      worst = std::max(worst, best);
    }
  }
  pass = pass && std::all_of(used.begin(), used.end(), [](bool b) { return b; });

  return make_check(name, "the vertices of the moment b-polytope are exactly the torus fixed points",
                    pass, worst, tol.vertex_match,
                    std::to_string(verts.size()) + " vertices vs " +
                        std::to_string(fps.components.size()) + " fixed-point components");
}

}  // namespace

std::vector<CheckResult> check_vertices_fixed_points(const SuiteOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(
      vertices_match_fixed_points("bsphere_vertices", *make_manifold(spec_of(Family::BSphere)),
                                  opt.tol));
  out.push_back(vertices_match_fixed_points("local_model_vertices",
                                            *make_manifold(default_local_model()), opt.tol));
  return out;
}

std::vector<CheckResult> check_recession_cones(const SuiteOptions&) {
  const char* statement = "stratum recession cones are spanned by the incident modular weight "
                          "directions towards the exceptional strata";
  std::vector<CheckResult> out;

  for (Family f : {Family::BSphere, Family::BTorus, Family::LocalModel}) {
    const auto m =
        make_manifold(f == Family::LocalModel ? default_local_model() : spec_of(f));
    const BPolytope p = known_polytope(*m);
    const auto& g = p.graph();

    bool pass = true;
    std::string detail;
    for (const auto& v : g.vertices) {
      const auto rays = recession_cone(p, v);

      std::set<VecZ> expected;
      for (auto idx : g.incidences(v))
        expected.insert(primitive_direction(scale(Rat(-1), g.edges[idx].weight.coords)));
      if (g.incidences(v).size() == 2) {
        // Opposite-proportional neighbours span a line; both orientations appear.
        for (auto idx : g.incidences(v))
          expected.insert(primitive_direction(g.edges[idx].weight.coords));
      }

      std::set<VecZ> got;
      for (const auto& ray : rays) got.insert(primitive_direction(ray.coords));
      if (got != expected) {
        pass = false;
        detail += v + " mismatched; ";
      }
      // Orientation: every generator points towards some incident exceptional
      // stratum, i.e. pairs negatively with that edge's chart direction.
      for (const auto& ray : rays) {
        bool towards = false;
        for (auto idx : g.incidences(v)) {
          const auto& chart = p.atlas().chart(g.edges[idx].id);
          if (pairing(chart.direction, ray) < 0) towards = true;
        }
        if (!towards) {
          pass = false;
          detail += v + " has a generator pointing away from Z; ";
        }
      }
    }
    out.push_back(make_check("recession_" + family_name(f), statement, pass, pass ? 1 : 0, 1,
                             std::move(detail)));
  }
  return out;
}

std::vector<CheckResult> check_leaf_image(const SuiteOptions& opt) {
  const char* statement = "with all-zero weights the moment image equals the image of any leaf in Z";
  const std::size_t n = opt.samples ? opt.samples : 10000;
  const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
  const double d = verify_leaf_image(*m, n, opt.seed);
  return {make_check("leaf_image_hausdorff", statement, d < opt.tol.hull_delta, d,
                     opt.tol.hull_delta,
                     "Hausdorff(mu(M), mu(L)) at n = " + std::to_string(n))};
}

std::vector<CheckResult> check_morse_bott(const SuiteOptions& opt) {
  const char* statement =
      "smooth Hamiltonians of circle actions are Morse-Bott with even indices and coindices";
  std::vector<CheckResult> out;

  struct Expectation {
    Family family;
    int nullity;
    std::size_t count;
  };
  for (const auto& [family, nullity, count] :
       {Expectation{Family::BSphere, 0, 2}, Expectation{Family::ZeroWeightProduct, 2, 2}}) {
    const auto m = make_manifold(spec_of(family));
    const auto fps = fixed_points(*m, opt.tol);
    bool even = fps.components.size() == count;
    bool nullity_ok = true;
    for (const auto& comp : fps.components) {
      for (const auto& [index, coindex, null] : comp.generator_inertia) {
        if (index % 2 != 0 || coindex % 2 != 0) even = false;
        if (null != nullity) nullity_ok = false;
      }
      if (comp.ill_conditioned) even = false;
    }
    out.push_back(make_check("even_indices_" + family_name(family), statement, even,
                             static_cast<double>(fps.components.size()),
                             static_cast<double>(count)));
    out.push_back(make_check("nullity_" + family_name(family),
                             "critical components are submanifolds; the Hessian kernel is their "
                             "tangent space",
                             nullity_ok, nullity, nullity));
  }

  // The 2-torus rank-2 product: every generator Hessian must be even as well.
  const auto lm = make_manifold(default_local_model());
  bool even = true;
  const auto fps = fixed_points(*lm, opt.tol);
  for (const auto& comp : fps.components)
    for (const auto& [index, coindex, null] : comp.generator_inertia)
      if (index % 2 != 0 || coindex % 2 != 0) even = false;
  out.push_back(make_check("even_indices_local_model", statement, even && fps.components.size() == 4,
                           static_cast<double>(fps.components.size()), 4));
  return out;
}

std::vector<CheckResult> check_level_connectedness(const SuiteOptions&) {
  const char* statement =
      "level sets of a Morse-Bott function with no index or coindex 1 are connected";
  std::vector<CheckResult> out;
  const int resolution = 200;

  const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
  int bad_levels = 0;
  for (int j = 0; j < 20; ++j) {
    const double h = -1.0 + 2.0 * j / 19.0;
    if (level_connectivity(*m, h, resolution) != 1) ++bad_levels;
  }
  out.push_back(make_check("zero_weight_levels_connected", statement, bad_levels == 0,
                           static_cast<double>(bad_levels), 0.0,
                           "20 levels spanning [-1, 1] at resolution 200"));

  LevelDomain double_well;
  double_well.box = {std::pair{-1.6, 1.6}, std::pair{-1.6, 1.6}};
  double_well.periodic = {false, false};
  double_well.value = [](double x, double y) {
    return (x * x - 1.0) * (x * x - 1.0) + y * y;
  };
  const int wells = level_connectivity(double_well, 0.5, resolution);
  out.push_back(make_check("double_well_two_components", statement, wells == 2,
                           static_cast<double>(wells), 2.0,
                           "test power: the double-well mid level must split"));
  return out;
}

std::vector<CheckResult> check_counterexample(const SuiteOptions& opt) {
  const char* statement =
      "an R-action can fix Z while its Hamiltonian differential never vanishes";
  const auto m = make_manifold(spec_of(Family::RActionCounterexample));
  const auto fps = fixed_points(*m, opt.tol);
  const bool pass = !fps.diagnostic.empty() && fps.components.empty();
  return {make_check("r_action_diagnostic", statement, pass,
                     static_cast<double>(fps.components.size()), 0.0, fps.diagnostic)};
}

std::vector<CheckResult> check_symplectic_cut(const SuiteOptions& opt) {
  const char* statement = "symplectic cuts exist next to nonzero-weight components only";
  std::vector<CheckResult> out;
  const std::size_t n = opt.samples ? opt.samples : 2000;

  {
    const auto m = make_manifold(spec_of(Family::ZeroWeightProduct));
    bool rejected = false;
    std::string detail;
    try {
      symplectic_cut(*m, "theta0", 4.0, +1, opt.tol);
    } catch (const ZeroWeightCutError& e) {
      rejected = true;
      detail = e.what();
    }
    out.push_back(
        make_check("zero_weight_cut_rejected", statement, rejected, rejected ? 1 : 0, 1, detail));
  }

  struct CutCase {
    ManifoldSpec spec;
    std::string component;
    double level;
  };
  for (const auto& [spec, component, level] :
       {CutCase{default_local_model(), "t0", 5.0}, CutCase{spec_of(Family::BSphere), "equator", 3.0}}) {
    const auto m = make_manifold(spec);
    const CutResult cut = symplectic_cut(*m, component, level, +1, opt.tol);
    const auto truncated = make_manifold(cut.truncated);

    const auto graph = m->known_graph();
    const LatticeVector direction = primitive_complement(graph->find_edge(component)->weight);
    double min_r = std::numeric_limits<double>::infinity();
    for (const auto& s : image_sample(*truncated, n, opt.seed).samples) {
      double r = 0.0;
      for (std::size_t i = 0; i < s.moment.size(); ++i)
        r += direction.coords[i].convert_to<double>() * s.moment[i];
      min_r = std::min(min_r, r);
    }
    out.push_back(make_check("cut_level_respected_" + family_name(spec.family), statement,
                             min_r >= -level - opt.tol.cut_slack, min_r,
                             -level - opt.tol.cut_slack,
                             "min sampled r-coordinate over the truncated domain"));
  }
  return out;
}

std::vector<CheckResult> check_stratified_weights(const SuiteOptions& opt) {
  const char* statement =
      "on a c-symplectic manifold zero and nonzero modular weights coexist on different strata";
  std::vector<CheckResult> out;
  const auto m = make_manifold(spec_of(Family::CSymplecticProduct));
  const auto weights = stratified_weights(*m, 0.5, opt.tol);

  const double z1 = std::fabs(weights.at("Z1")[0]);
  const double z2 = std::fabs(weights.at("Z2")[0]);
  out.push_back(make_check("nonzero_stratum", statement, std::fabs(z1 - 1.0) <= opt.tol.weight_fit,
                           z1, 1.0));
  out.push_back(make_check("zero_stratum", statement, z2 <= opt.tol.weight_fit, z2,
                           opt.tol.weight_fit));

  bool rejected = false;
  try {
    stratified_weights(*m, 1e-3, opt.tol);
  } catch (const ValidationError&) {
    rejected = true;
  }
  out.push_back(make_check("corner_sampling_rejected", statement, rejected, rejected ? 1 : 0, 1,
                           "transversals closer than 1e-2 to the corner stratum are refused"));
  return out;
}

std::vector<CheckResult> check_enumeration_oracle(const SuiteOptions& opt) {
  const char* statement = "brute-force and incremental vertex enumeration agree exactly";
  std::mt19937_64 rng(opt.seed + 13);

  std::size_t agreements = 0;
  const std::size_t total = 50;
  for (std::size_t trial = 0; trial < total; ++trial) {
    const RandomGraph rg = random_structured_graph(rng, false);
    const auto cls = classify(rg.graph);
    const Covector& ref = rg.graph.find_edge(cls.reference_edge)->weight;

    std::vector<HalfSpace> halfspaces;
    const std::size_t count = rng() % 11;
    for (std::size_t i = 0; i < count; ++i) {
      VecZ normal(rg.graph.torus_dim);
      bool any = false;
      for (auto& x : normal) {
        const long v = static_cast<long>(rng() % 5) - 2;
        x = v;
        any = any || v != 0;
      }
      if (!any) normal[0] = 1;
      const Rat bound(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
      if (dot(normal, ref.coords) == 0)
        halfspaces.push_back(HalfSpace::global(LatticeVector(std::move(normal)), bound));
      else
        halfspaces.push_back(HalfSpace::vertex_local(
            rg.graph.vertices[rng() % rg.graph.vertices.size()], LatticeVector(std::move(normal)),
            bound));
    }

    const BPolytope p(rg.graph, halfspaces);
    bool agree = true;
    for (const auto& v : rg.graph.vertices) {
      const auto rows = p.stratum_constraints(v);
      MatQ a(rows.size(), rg.graph.torus_dim);
      VecQ b(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) a.at(i, j) = rows[i].first[j];
        b[i] = rows[i].second;
      }
      if (vertices_bruteforce(a, b) != dd_polyhedron(a, b).vertices) agree = false;
    }
    if (agree) ++agreements;
  }
  return {make_check("enumeration_routes_agree", statement, agreements == total,
                     static_cast<double>(agreements), static_cast<double>(total),
                     "random graphs with up to 10 half-spaces, k <= 3")};
}

std::vector<std::string> suite_names() {
  return {"dichotomy", "local_model", "zero_weight", "morse_bott",
          "vertices",  "csymplectic", "cut"};
}

VerificationReport run_suite(const std::string& suite, const SuiteOptions& opt) {
  VerificationReport report;
  report.suite = suite;

  auto append = [&report](std::vector<CheckResult> checks) {
    for (auto& c : checks) report.checks.push_back(std::move(c));
  };

  if (suite == "dichotomy") {
    append(check_dichotomy(opt));
    append(check_weight_recovery(opt));
  } else if (suite == "local_model") {
    append(check_local_model_image(opt));
    append(check_convexity(opt));
  } else if (suite == "zero_weight") {
    append(check_leaf_image(opt));
    append(check_level_connectedness(opt));
  } else if (suite == "morse_bott") {
    append(check_morse_bott(opt));
    append(check_counterexample(opt));
  } else if (suite == "vertices") {
    append(check_vertices_fixed_points(opt));
    append(check_recession_cones(opt));
    append(check_enumeration_oracle(opt));
  } else if (suite == "csymplectic") {
    append(check_stratified_weights(opt));
  } else if (suite == "cut") {
    append(check_symplectic_cut(opt));
  } else {
    throw ParseError("unknown suite '" + suite + "'");
  }
  return report;
}

}  // namespace bmoment
