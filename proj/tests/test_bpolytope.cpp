#include <doctest.h>

#include <random>
#include <set>

#include "bmoment/bpolytope.hpp"
#include "bmoment/errors.hpp"
#include "test_util.hpp"

using namespace bmoment;
using namespace bmoment::test;

namespace {

// b-sphere image: xi >= 0 on both strata of a single-edge graph, weight -1.
BPolytope bsphere_polytope() {
  return BPolytope(path_graph(1, {cv({-1})}),
                   {HalfSpace::vertex_local("v0", lv({-1}), Rat(0)),
                    HalfSpace::vertex_local("v1", lv({-1}), Rat(0))});
}

// Local model image: leaf interval [0,1] at infinity, r <= 0 on both strata.
BPolytope local_model_polytope() {
  return BPolytope(path_graph(2, {cv({0, 1})}),
                   {HalfSpace::global(lv({1, 0}), Rat(1)),
                    HalfSpace::global(lv({-1, 0}), Rat(0)),
                    HalfSpace::vertex_local("v0", lv({0, 1}), Rat(0)),
                    HalfSpace::vertex_local("v1", lv({0, 1}), Rat(0))});
}

// Toric b-torus: even 2-cycle, no half-spaces, image is all of R_G.
BPolytope btorus_polytope() {
  return BPolytope(cycle_graph(1, {cv({-1}), cv({1})}), {});
}

MatQ to_matrix(const std::vector<std::pair<VecQ, Rat>>& rows, std::size_t dim) {
  MatQ a(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < dim; ++j) a.at(i, j) = rows[i].first[j];
  return a;
}

VecQ to_bounds(const std::vector<std::pair<VecQ, Rat>>& rows) {
  VecQ b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) b[i] = rows[i].second;
  return b;
}

}  // namespace

TEST_SUITE("bpolytope") {

TEST_CASE("half-space type invariants") {
  const auto g = path_graph(2, {cv({0, 1})});
  // Vertex-local normal must leave t_Z; (1,0) pairs to zero with (0,1).
  CHECK_THROWS_AS(BPolytope(g, {HalfSpace::vertex_local("v0", lv({1, 0}), Rat(0))}),
                  ValidationError);
  // Global normal must lie in t_Z.
  CHECK_THROWS_AS(BPolytope(g, {HalfSpace::global(lv({0, 1}), Rat(0))}), ValidationError);
  CHECK_THROWS_AS(BPolytope(g, {HalfSpace::vertex_local("nope", lv({0, 1}), Rat(0))}),
                  ValidationError);
  // b-polytopes need an all-nonzero graph.
  CHECK_THROWS_AS(BPolytope(path_graph(2, {cv({0, 0})}), {}), ValidationError);
}

TEST_CASE("interior membership on the b-sphere polytope") {
  const auto p = bsphere_polytope();
  CHECK(contains(p, ExtendedPoint::interior(cv({2}), "v0")));
  CHECK_FALSE(contains(p, ExtendedPoint::interior(cv({-1}), "v0")));
  CHECK(contains(p, ExtendedPoint::interior(cv({0}), "v1")));
  CHECK_THROWS_AS(contains(p, ExtendedPoint::interior(cv({0}), "elsewhere")), ValidationError);
}

TEST_CASE("membership on the local model polytope") {
  const auto p = local_model_polytope();
  // (eta, r) = (1/2, -1) in chart coordinates is xi = (1/2, -1).
  CHECK(contains(p, ExtendedPoint::interior(cvr({Rat(1, 2), Rat(-1)}), "v0")));
  CHECK_FALSE(contains(p, ExtendedPoint::interior(cvr({Rat(1, 2), Rat(1)}), "v0")));
  CHECK_FALSE(contains(p, ExtendedPoint::interior(cvr({Rat(2), Rat(-1)}), "v0")));

  // Exceptional points: eta within the leaf interval, all caps have m > 0.
  CHECK(contains(p, ExtendedPoint::exceptional(cvr({Rat(1, 2)}), "e0")));
  CHECK_FALSE(contains(p, ExtendedPoint::exceptional(cvr({Rat(2)}), "e0")));

  // A constraint with negative X_e-component excludes the limit points.
  const auto blocked = BPolytope(path_graph(2, {cv({0, 1})}),
                                 {HalfSpace::global(lv({1, 0}), Rat(1)),
                                  HalfSpace::global(lv({-1, 0}), Rat(0)),
                                  HalfSpace::vertex_local("v0", lv({0, -1}), Rat(0))});
  CHECK_FALSE(contains(blocked, ExtendedPoint::exceptional(cvr({Rat(1, 2)}), "e0")));
  // Away from the caps the same interior points remain members.
  CHECK(contains(blocked, ExtendedPoint::interior(cvr({Rat(1, 2), Rat(1)}), "v0")));
}

TEST_CASE("exceptional membership on the b-sphere (0-dimensional eta)") {
  const auto p = bsphere_polytope();
  CHECK(contains(p, ExtendedPoint::exceptional(Covector(VecQ{}), "e0")));
  CHECK_THROWS_AS(contains(p, ExtendedPoint::exceptional(Covector(VecQ{}), "nope")),
                  ValidationError);
}

TEST_CASE("vertices of the b-sphere polytope sit at the poles' moment value") {
  const auto verts = vertices(bsphere_polytope());
  REQUIRE(verts.size() == 2);
  CHECK(verts[0].first == "v0");
  CHECK(verts[0].second == cv({0}));
  CHECK(verts[1].first == "v1");
  CHECK(verts[1].second == cv({0}));
}

TEST_CASE("vertices of the local model polytope") {
  const auto verts = vertices(local_model_polytope());
  REQUIRE(verts.size() == 4);
  for (const auto& [vertex, xi] : verts) CHECK(xi.coords[1] == 0);
  std::set<VecQ> values;
  for (const auto& [vertex, xi] : verts) values.insert(xi.coords);
  CHECK(values == std::set<VecQ>{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
}

TEST_CASE("the b-torus has no vertices and is still valid") {
  const auto p = btorus_polytope();
  const auto report = is_b_polytope(p);
  CHECK(report.ok());
  REQUIRE(!report.notes.empty());
  CHECK(report.notes[0] == "no vertices");
  CHECK(vertices(p).empty());
  CHECK(vertices_incremental(p).empty());
  CHECK(contains(p, ExtendedPoint::interior(cv({-100}), "v0")));
  CHECK(contains(p, ExtendedPoint::exceptional(Covector(VecQ{}), "e1")));
}

TEST_CASE("recession cones point towards the exceptional strata") {
  const auto lm = local_model_polytope();
  const auto rays_lm = recession_cone(lm, "v0");
  REQUIRE(rays_lm.size() == 1);
  CHECK(rays_lm[0] == cv({0, -1}));  // the -w_e direction for w_e = (0, 1)

  const auto bs = bsphere_polytope();
  const auto rays_bs = recession_cone(bs, "v0");
  REQUIRE(rays_bs.size() == 1);
  CHECK(rays_bs[0] == cv({1}));  // -w_e for w_e = -1

  const auto bt = btorus_polytope();
  const auto rays_bt = recession_cone(bt, "v0");
  REQUIRE(rays_bt.size() == 2);
  CHECK(rays_bt[0] == cv({-1}));
  CHECK(rays_bt[1] == cv({1}));
}

TEST_CASE("validity: unbounded polytope at infinity fails") {
  const auto p = BPolytope(path_graph(2, {cv({0, 1})}),
                           {HalfSpace::global(lv({1, 0}), Rat(5)),
                            HalfSpace::vertex_local("v0", lv({0, 1}), Rat(0)),
                            HalfSpace::vertex_local("v1", lv({0, 1}), Rat(0))});
  const auto report = is_b_polytope(p);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.find("exceptional_nonempty_bounded")->pass);
  CHECK_THROWS_AS(vertices(p), ValidationError);
}

TEST_CASE("validity: a stratum unbounded away from Z fails the recession match") {
  // No r-cap on v1: that stratum recedes along +w as well.
  const auto p = BPolytope(path_graph(2, {cv({0, 1})}),
                           {HalfSpace::global(lv({1, 0}), Rat(1)),
                            HalfSpace::global(lv({-1, 0}), Rat(0)),
                            HalfSpace::vertex_local("v0", lv({0, 1}), Rat(0))});
  const auto report = is_b_polytope(p);
  CHECK_FALSE(report.ok());
  const auto* recession = report.find("recession_matches_weights");
  REQUIRE(recession != nullptr);
  CHECK_FALSE(recession->pass);
  CHECK(recession->offenders == std::vector<std::string>{"v1"});
}

TEST_CASE("validity: empty stratum fails") {
  const auto p = BPolytope(path_graph(1, {cv({-1})}),
                           {HalfSpace::vertex_local("v0", lv({-1}), Rat(0)),
                            HalfSpace::vertex_local("v0", lv({1}), Rat(-1)),
                            HalfSpace::vertex_local("v1", lv({-1}), Rat(0))});
  const auto report = is_b_polytope(p);
  CHECK_FALSE(report.find("stratum_nonempty")->pass);
}

TEST_CASE("truncation caps the strata adjacent to the edge") {
  const auto p = local_model_polytope();
  const auto cuts = truncate(p, "e0", Rat(5));
  REQUIRE(cuts.size() == 2);
  for (const auto& stratum : cuts) {
    const MatQ a = to_matrix(stratum.constraints, 2);
    const VecQ b = to_bounds(stratum.constraints);
    const auto verts = vertices_bruteforce(a, b);
    REQUIRE(verts.size() == 4);
    CHECK(verts.front() == VecQ{Rat(0), Rat(-5)});
    CHECK(verts.back() == VecQ{Rat(1), Rat(0)});
    const auto gens = dd_polyhedron(a, b);
    CHECK(gens.recession.rays.empty());
    CHECK(gens.recession.lineality.empty());
  }

  // Monotone: smaller level cuts a subset.
  const auto small = truncate(p, "e0", Rat(3));
  const MatQ a5 = to_matrix(cuts[0].constraints, 2);
  const VecQ b5 = to_bounds(cuts[0].constraints);
  for (const auto& v : vertices_bruteforce(to_matrix(small[0].constraints, 2),
                                           to_bounds(small[0].constraints))) {
    bool inside = true;
    for (std::size_t i = 0; i < a5.rows; ++i) {
      Rat s(0);
      for (std::size_t j = 0; j < 2; ++j) s += a5.at(i, j) * v[j];
      if (s > b5[i]) inside = false;
    }
    CHECK(inside);
  }

  // b-sphere: xi >= 0 truncated at r >= -3 becomes the segment [0, 3].
  const auto bs_cut = truncate(bsphere_polytope(), "e0", Rat(3));
  const auto segment = vertices_bruteforce(to_matrix(bs_cut[0].constraints, 1),
                                           to_bounds(bs_cut[0].constraints));
  CHECK(segment == std::vector<VecQ>{{Rat(0)}, {Rat(3)}});
}

TEST_CASE("every enumerated vertex is contained and has enough active rows") {
  for (const auto& p : {bsphere_polytope(), local_model_polytope()}) {
    const std::size_t k = p.graph().torus_dim;
    for (const auto& [vertex, xi] : vertices(p)) {
      CHECK(contains(p, ExtendedPoint::interior(xi, vertex)));
      std::size_t active = 0;
      for (const auto& [normal, bound] : p.stratum_constraints(vertex))
        if (dot(normal, xi.coords) == bound) ++active;
      CHECK(active >= k);
    }
  }
}

TEST_CASE("truncations exhaust the interior strata") {
  const auto p = local_model_polytope();
  std::mt19937_64 rng(29);
  int contained_points = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const Rat eta(static_cast<long>(rng() % 2001) - 1000, 1000);
    const Rat r(-static_cast<long>(rng() % 1000000), 977);
    const Covector xi{{eta, r}};
    const std::string vertex = rng() % 2 ? "v0" : "v1";
    if (!contains(p, ExtendedPoint::interior(xi, vertex))) continue;
    ++contained_points;

    bool covered = false;
    for (int j = 0; j <= 20 && !covered; ++j) {
      const Rat level = Rat(Int(1) << j);
      for (const auto& stratum : truncate(p, "e0", level)) {
        if (stratum.vertex != vertex) continue;
        bool inside = true;
        for (const auto& [normal, bound] : stratum.constraints)
          if (dot(normal, xi.coords) > bound) inside = false;
        covered = covered || inside;
      }
    }
    CHECK(covered);
  }
  CHECK(contained_points > 100);
}

TEST_CASE("brute-force and incremental enumeration agree on random systems") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 1 + rng() % 3;
    const std::size_t m = 1 + rng() % 9;
    MatQ a(m, dim);
    VecQ b(m);
    for (std::size_t i = 0; i < m; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < dim; ++j) {
        const long c = static_cast<long>(rng() % 7) - 3;
        a.at(i, j) = Rat(c);
        any = any || c != 0;
      }
      if (!any) a.at(i, 0) = 1;
      b[i] = small_rat(rng);
    }
    CHECK(vertices_bruteforce(a, b) == dd_polyhedron(a, b).vertices);
  }
}

TEST_CASE("the double-description cone equals the feasible set on a lattice box") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + rng() % 3;
    const std::size_t m = rng() % 6;  // includes the no-constraint full space
    MatQ a(m, dim);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < dim; ++j) a.at(i, j) = Rat(static_cast<long>(rng() % 7) - 3);

    const ConeGenerators cone = dd_cone(a);
    std::vector<VecZ> generators = cone.rays;
    for (const auto& l : cone.lineality) {
      generators.push_back(l);
      VecZ neg(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
      generators.push_back(std::move(neg));
    }
    for (const auto& g : generators)
      for (std::size_t i = 0; i < m; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < dim; ++j) s += a.at(i, j) * Rat(g[j]);
        CHECK(s <= 0);
      }

    // Integer directions in [-2, 2]^dim: feasibility must match membership in
    // the generated cone exactly.
    std::vector<long> d(dim, -2);
    while (true) {
      VecZ dir(dim);
      for (std::size_t j = 0; j < dim; ++j) dir[j] = d[j];
      bool feasible = true;
      for (std::size_t i = 0; i < m && feasible; ++i) {
        Rat s(0);
        for (std::size_t j = 0; j < dim; ++j) s += a.at(i, j) * Rat(dir[j]);
        feasible = s <= 0;
      }
      CHECK(feasible == in_cone(generators, dir));
      std::size_t carry = 0;
      while (carry < dim && ++d[carry] > 2) d[carry++] = -2;
      if (carry == dim) break;
    }
  }
}

TEST_CASE("double description on a cube") {
  MatQ a(6, 3);
  VecQ b(6, Rat(0));
  for (std::size_t j = 0; j < 3; ++j) {
    a.at(2 * j, j) = 1;
    b[2 * j] = 1;
    a.at(2 * j + 1, j) = -1;
    b[2 * j + 1] = 0;
  }
  const auto gens = dd_polyhedron(a, b);
  CHECK(gens.feasible);
  CHECK(gens.vertices.size() == 8);
  CHECK(gens.recession.rays.empty());
  CHECK(gens.recession.lineality.empty());
  CHECK(gens.vertices == vertices_bruteforce(a, b));
}

}  // TEST_SUITE
