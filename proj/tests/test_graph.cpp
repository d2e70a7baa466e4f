#include <doctest.h>

#include <algorithm>
#include <random>

#include "bmoment/errors.hpp"
#include "bmoment/graph.hpp"
#include "test_util.hpp"

using namespace bmoment;
using namespace bmoment::test;

TEST_SUITE("graph") {

TEST_CASE("construction rejects broken graphs") {
  CHECK_THROWS_AS(WeightedAdjacencyGraph(2, {"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(WeightedAdjacencyGraph(2, {"a", "b"},
                                         {{"e", {"a", "zz"}, cv({1, 0})}}),
                  ValidationError);
  // Disconnected: two vertices, no edge between them.
  CHECK_THROWS_AS(WeightedAdjacencyGraph(2, {"a", "b"}, {}), ValidationError);
  CHECK_THROWS_AS(WeightedAdjacencyGraph(2, {"a", "b"},
                                         {{"e", {"a", "b"}, cv({1})}}),
                  DimensionMismatchError);
}

TEST_CASE("classify: nonzero circle graph") {
  const auto g = cycle_graph(2, {cv({1, 0}), cv({-2, 0})});
  const auto cls = classify(g);
  CHECK(cls.all_nonzero());
  CHECK(cls.reference_edge == "e0");
  REQUIRE(cls.common_kernel.has_value());
  REQUIRE(cls.common_kernel->rank() == 1);
  CHECK(cls.common_kernel->basis[0] == lv({0, 1}));
  CHECK(*cls.edge_scalars.at("e0") == 1);
  CHECK(*cls.edge_scalars.at("e1") == -2);
}

TEST_CASE("classify: all-zero and empty graphs") {
  const auto g = path_graph(2, {cv({0, 0}), cv({0, 0})});
  CHECK(classify(g).tag == ModularWeightClass::Tag::AllZero);

  const WeightedAdjacencyGraph lone(2, {"only"}, {});
  const auto cls = classify(lone);
  CHECK(cls.tag == ModularWeightClass::Tag::AllZero);
  CHECK(cls.no_exceptional_hypersurface);
}

TEST_CASE("classify: mixed weights are the impossible configuration") {
  const auto g = path_graph(2, {cv({1, 0}), cv({0, 0})});
  CHECK_THROWS_AS(classify(g), MixedWeightsError);
  try {
    classify(g);
  } catch (const MixedWeightsError& e) {
    CHECK(std::string(e.what()).find("all zero or all nonzero") != std::string::npos);
  }
}

TEST_CASE("validate: passing path") {
  const auto g = path_graph(2, {cv({1, 0}), cv({-3, 0})});
  const auto report = validate_nonzero_structure(g);
  CHECK(report.ok());
  CHECK(common_kernel(g).basis[0] == lv({0, 1}));
}

TEST_CASE("validate: odd cycle fails the shape condition") {
  const auto g = cycle_graph(2, {cv({1, 0}), cv({-1, 0}), cv({1, 0})});
  const auto report = validate_nonzero_structure(g);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.find("line_or_even_circle")->pass);
}

TEST_CASE("validate: star vertex fails the degree condition") {
  const WeightedAdjacencyGraph star(
      2, {"hub", "a", "b", "c"},
      {{"e0", {"hub", "a"}, cv({1, 0})},
       {"e1", {"hub", "b"}, cv({-1, 0})},
       {"e2", {"hub", "c"}, cv({1, 0})}});
  const auto report = validate_nonzero_structure(star);
  CHECK_FALSE(report.ok());
  const auto* degree = report.find("degree_le_2");
  CHECK_FALSE(degree->pass);
  CHECK(std::find(degree->offenders.begin(), degree->offenders.end(), "hub") !=
        degree->offenders.end());
}

TEST_CASE("validate: same-sign neighbours fail proportionality") {
  const auto g = path_graph(2, {cv({1, 0}), cv({2, 0})});
  const auto report = validate_nonzero_structure(g);
  CHECK_FALSE(report.find("negative_proportionality")->pass);
}

TEST_CASE("validate: self-loop is an odd circle") {
  const WeightedAdjacencyGraph loop(1, {"v"}, {{"e", {"v", "v"}, cv({1})}});
  const auto report = validate_nonzero_structure(loop);
  CHECK_FALSE(report.find("line_or_even_circle")->pass);
  CHECK_FALSE(report.find("negative_proportionality")->pass);
}

TEST_CASE("validate requires the all-nonzero class") {
  const auto g = path_graph(2, {cv({0, 0})});
  CHECK_THROWS_AS(validate_nonzero_structure(g), PreconditionError);
}

TEST_CASE("common kernel: disagreement raises") {
  const auto g = path_graph(2, {cv({1, 0}), cv({0, 1})});
  CHECK_THROWS_AS(common_kernel(g), KernelsDifferError);
  const auto report = validate_nonzero_structure(g);
  CHECK_FALSE(report.find("shared_kernel")->pass);
}

TEST_CASE("common kernel: single edge, coordinate weight") {
  const auto g = path_graph(2, {cv({0, 5})});
  CHECK(common_kernel(g).basis[0] == lv({1, 0}));
}

TEST_CASE("classification is invariant under order-preserving relabeling") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    const Covector base = random_covector(rng, k, true);
    std::vector<Covector> weights;
    Rat lambda(1);
    const std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) {
      weights.emplace_back(scale(lambda, base.coords));
      lambda = -lambda * Rat(1 + static_cast<long>(rng() % 3));
    }
    const auto g = path_graph(k, weights);

    // Prefixing every id uniformly preserves lexicographic order.
    std::vector<std::string> vs;
    for (const auto& v : g.vertices) vs.push_back("x_" + v);
    std::vector<WeightedAdjacencyGraph::Edge> es;
    for (const auto& e : g.edges)
      es.push_back({"x_" + e.id, {"x_" + e.ends[0], "x_" + e.ends[1]}, e.weight});
    const WeightedAdjacencyGraph relabeled(k, vs, es);

    const auto a = classify(g);
    const auto b = classify(relabeled);
    CHECK(a.tag == b.tag);
    CHECK(*a.common_kernel == *b.common_kernel);
    for (const auto& [id, scalar] : a.edge_scalars)
      CHECK(*scalar == *b.edge_scalars.at("x_" + id));
    CHECK(validate_nonzero_structure(g).ok() == validate_nonzero_structure(relabeled).ok());
  }
}

TEST_CASE("scalar signs alternate along every walk of a validated graph") {
  const auto check_alternation = [](const WeightedAdjacencyGraph& g) {
    const auto cls = classify(g);
    REQUIRE(validate_nonzero_structure(g).ok());
    for (const auto& v : g.vertices) {
      const auto inc = g.incidences(v);
      if (inc.size() == 2 && inc[0] != inc[1]) {
        const Rat s0 = *cls.edge_scalars.at(g.edges[inc[0]].id);
        const Rat s1 = *cls.edge_scalars.at(g.edges[inc[1]].id);
        CHECK(s0 * s1 < 0);
      }
    }
  };
  check_alternation(path_graph(2, {cv({1, 1}), cv({-2, -2}), cv({4, 4})}));
  check_alternation(cycle_graph(1, {cv({3}), cv({-1}), cv({2}), cv({-6})}));
}

TEST_CASE("positive rescaling keeps the validation verdict") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + rng() % 2;
    std::vector<Covector> weights;
    const std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) weights.push_back(random_covector(rng, k, true));
    const auto g = path_graph(k, weights);

    const Rat factor(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
    std::vector<Covector> rescaled;
    for (const auto& w : weights) rescaled.emplace_back(scale(factor, w.coords));
    const auto g2 = path_graph(k, rescaled);

    const auto r1 = validate_nonzero_structure(g);
    const auto r2 = validate_nonzero_structure(g2);
    CHECK(r1.ok() == r2.ok());
    for (const auto& c : r1.conditions) CHECK(c.pass == r2.find(c.name)->pass);
  }
}

}  // TEST_SUITE
