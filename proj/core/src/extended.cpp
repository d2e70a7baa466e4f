#include "bmoment/extended.hpp"

#include <cmath>

#include "bmoment/errors.hpp"

namespace bmoment {

double LogChart::transverse(double r) const {
  return sign * std::exp(r / to_double(period));
}

const ChartAtlas::EdgeChart& ChartAtlas::chart(const std::string& edge) const {
  const auto it = charts.find(edge);
  if (it == charts.end()) throw ValidationError("no chart for edge '" + edge + "'");
  return it->second;
}

ChartAtlas build_atlas(const WeightedAdjacencyGraph& g) {
  const ValidationReport report = validate_nonzero_structure(g);
  if (!report.ok())
    throw PreconditionError("cannot build charts on a graph failing nonzero-structure validation");

  ChartAtlas atlas;
  atlas.kernel = common_kernel(g);
  for (const auto& e : g.edges) {
    ChartAtlas::EdgeChart ec;
    ec.direction = primitive_complement(e.weight);
    ec.period = pairing(ec.direction, e.weight);
    ec.sides = {LogChart{e.id, e.ends[0], +1, ec.direction, ec.period},
                LogChart{e.id, e.ends[1], -1, ec.direction, ec.period}};
    atlas.charts.emplace(e.id, std::move(ec));
  }
  return atlas;
}

Decomposition decompose(const ChartAtlas& atlas, const Covector& xi, const std::string& edge) {
  const auto& chart = atlas.chart(edge);
  Decomposition d;
  VecQ eta;
  eta.reserve(atlas.kernel.rank());
  for (const auto& b : atlas.kernel.basis) eta.push_back(pairing(b, xi));
  d.eta = Covector(std::move(eta));
  d.r = pairing(chart.direction, xi);
  return d;
}

Covector reconstruct(const ChartAtlas& atlas, const Covector& eta, const Rat& r,
                     const std::string& edge) {
  const auto& chart = atlas.chart(edge);
  const std::size_t k = chart.direction.dim();
  if (eta.coords.size() != atlas.kernel.rank())
    throw DimensionMismatchError("eta dimension != rank of t_Z");

  // Rows: kernel basis then X_e; the matrix is unimodular by construction.
  MatQ m(k, k);
  VecQ rhs(k);
  for (std::size_t i = 0; i < atlas.kernel.rank(); ++i) {
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = Rat(atlas.kernel.basis[i].coords[j]);
    rhs[i] = eta.coords[i];
  }
  for (std::size_t j = 0; j < k; ++j) m.at(k - 1, j) = Rat(chart.direction.coords[j]);
  rhs[k - 1] = r;

  auto sol = solve_square(std::move(m), std::move(rhs));
  if (!sol) throw Error("chart basis unexpectedly singular");
  return Covector(std::move(*sol));
}

ExtendedPoint limit_at_infinity(const Covector& eta, const std::string& edge) {
  return ExtendedPoint::exceptional(eta, edge);
}

}  // namespace bmoment
