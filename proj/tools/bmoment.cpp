// Command-line front end: graph classification, b-polytope queries, moment
// map sampling, and the named verification suites.
//
// Exit codes: 0 success, 1 usage or parse error, 2 mathematical validation
// failure.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmoment/errors.hpp"
#include "bmoment/io.hpp"
#include "bmoment/verify.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;

int cmd_classify(const std::string& graph_path) {
  const auto graph = bmoment::parse_graph(bmoment::read_file(graph_path));
  try {
    std::cout << bmoment::classification_to_json(bmoment::classify(graph)) << "\n";
  } catch (const bmoment::MixedWeightsError& e) {
    nlohmann::json j{{"class", "mixed_weights"}, {"error", e.what()}};
    std::cout << j.dump(2) << "\n";
    return kInvalid;
  }
  return kOk;
}

int cmd_polytope(const std::string& graph_path, const std::string& halfspace_path,
                 const std::string& action, const std::string& point_path) {
  const auto graph = bmoment::parse_graph(bmoment::read_file(graph_path));
  const auto halfspaces = bmoment::parse_halfspaces(bmoment::read_file(halfspace_path));
  const bmoment::BPolytope polytope(graph, halfspaces);

  if (action == "validate") {
    const auto report = bmoment::is_b_polytope(polytope);
    std::cout << bmoment::validation_report_to_json(report) << "\n";
    return report.ok() ? kOk : kInvalid;
  }
  if (action == "vertices") {
    std::cout << bmoment::vertices_to_json(bmoment::vertices(polytope)) << "\n";
    return kOk;
  }
  if (action == "contains") {
    const auto point = bmoment::parse_extended_point(bmoment::read_file(point_path));
    nlohmann::json j{{"contains", bmoment::contains(polytope, point)}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cerr << "unknown polytope action '" << action << "'\n";
  return kUsage;
}

int cmd_moment(const std::string& spec_path, std::size_t samples, std::uint64_t seed,
               const std::string& out_path) {
  if (samples < 1) {
    std::cerr << "samples must be >= 1\n";
    return kUsage;
  }
  const auto spec = bmoment::parse_manifold_spec(bmoment::read_file(spec_path));
  const auto manifold = bmoment::make_manifold(spec);
  const auto set = bmoment::image_sample(*manifold, samples, seed);

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return kUsage;
    }
    bmoment::write_moment_csv(out, *manifold, set);
  } else {
    bmoment::write_moment_csv(std::cout, *manifold, set);
  }
  std::cout << bmoment::sample_summary_to_json(*manifold, set) << "\n";
  return kOk;
}

int cmd_verify(const std::string& suite, const std::string& graph_path, std::size_t samples,
               std::uint64_t seed) {
  bmoment::SuiteOptions options;
  options.samples = samples;
  options.seed = seed;
  options.tol = bmoment::Tolerances::from_env();
  if (!graph_path.empty()) options.graph_json = bmoment::read_file(graph_path);

  const auto start = std::chrono::steady_clock::now();
  const auto report = bmoment::run_suite(suite, options);
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);

  std::cout << bmoment::verification_report_to_json(report) << "\n";
  // Reports on stdout are byte-identical across runs; timing is stderr-only.
  std::cerr << "suite '" << suite << "' finished in " << elapsed.count() << " ms\n";
  return report.all_pass() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"combinatorial toolkit for torus actions on b-symplectic manifolds"};
  app.require_subcommand(1);

  std::string graph_path, halfspace_path, point_path, spec_path, out_path, suite, action;
  std::size_t moment_samples = 1000;
  std::size_t verify_samples = 0;  // per-check defaults
  std::uint64_t seed = 2027;

  auto* classify = app.add_subcommand("classify-graph", "classify modular weights of a graph");
  classify->add_option("graph", graph_path, "graph JSON file")->required();

  auto* polytope = app.add_subcommand("polytope", "validate or query a b-polytope");
  polytope->add_option("graph", graph_path, "graph JSON file")->required();
  polytope->add_option("halfspaces", halfspace_path, "half-space JSON file")->required();
  polytope->add_option("action", action, "validate | vertices | contains")->required();
  polytope->add_option("point", point_path, "point JSON file (contains action)");

  auto* moment = app.add_subcommand("moment", "sample a moment map image to CSV");
  moment->add_option("spec", spec_path, "manifold spec JSON file")->required();
  moment->add_option("--samples", moment_samples, "number of samples");
  moment->add_option("--seed", seed, "sampling seed");
  moment->add_option("--out", out_path, "CSV output path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->add_option("suite", suite, "dichotomy | local_model | zero_weight | morse_bott | "
                                     "vertices | csymplectic | cut")
      ->required();
  verify->add_option("--graph", graph_path, "extra graph to classify (dichotomy)");
  verify->add_option("--samples", verify_samples, "sample count override");
  verify->add_option("--seed", seed, "seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (classify->parsed()) return cmd_classify(graph_path);
    if (polytope->parsed()) {
      if (action == "contains" && point_path.empty()) {
        std::cerr << "contains needs a point file\n";
        return kUsage;
      }
      return cmd_polytope(graph_path, halfspace_path, action, point_path);
    }
    if (moment->parsed()) return cmd_moment(spec_path, moment_samples, seed, out_path);
    if (verify->parsed()) return cmd_verify(suite, graph_path, verify_samples, seed);
  } catch (const bmoment::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const bmoment::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
