#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bmoment/bpolytope.hpp"
#include "bmoment/graph.hpp"
#include "bmoment/numerics.hpp"

namespace bmoment {

enum class Family {
  LocalModel,
  BTorus,
  BSphere,
  ZeroWeightProduct,
  RActionCounterexample,
  CSymplecticProduct,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// One recorded symplectic cut: restrict to the given side of the component
/// with the moment r-coordinate capped at r >= -level.
struct SymplecticCutRecord {
  std::string component;
  int side = +1;  // +1: first endpoint side / positive transverse coordinate
  double level = 0.0;
};

/// Parameters of one desk-scale example family.
struct ManifoldSpec {
  Family family = Family::BSphere;

  // local_model: leaf polytope [leaf_min, leaf_max] realized by a round
  // sphere with affinely scaled height moment; modular period and epsilon.
  Rat leaf_min{0};
  Rat leaf_max{1};
  Rat period{1};
  Rat eps{1};

  // zero_weight_product: the b-surface factor ("b_torus" or "b_sphere").
  std::string surface = "b_torus";

  std::vector<SymplecticCutRecord> cuts;
};

/// Numeric tolerances; every threshold used by the verification checks lives
/// here so it can be inspected and scaled.
struct Tolerances {
  double weight_fit = 1e-3;           // modular-weight estimate accuracy
  double weight_spread = 1e-2;        // cross-scale fit spread before error
  double hessian_step = 1e-4;         // relative finite-difference step
  double nullity_rel = 1e-4;          // |lambda| below rel*max counts as null
  double vertex_match = 1e-6;         // vertex vs fixed-point moment match
  double hull_delta = 0.05;           // density-based hull membership radius
  double gradient_check_rel = 1e-5;   // fd gradient vs analytic contraction
  double critical_gradient = 1e-8;    // |dH| threshold for a critical point
  double condition_limit = 1e8;       // Hessian nonzero-block conditioning
  double cut_slack = 1e-6;            // allowed overshoot below a cut level
  double corner_min_distance = 1e-2;  // closest approach to the corner stratum

  /// Scales the acceptance thresholds (not the finite-difference steps).
  Tolerances scaled(double s) const;
  /// Applies BMOMENT_TOLERANCE_SCALE from the environment.
  static Tolerances from_env();
};

struct MomentSample {
  std::vector<double> point;   // domain coordinates
  std::vector<double> moment;  // k components, may hold +-infinity on Z
  bool diverged = false;       // point lies on a nonzero-weight component of Z
  std::string component;       // which one, when diverged
};

struct MomentSampleSet {
  std::vector<MomentSample> samples;
  std::uint64_t seed = 0;

  std::vector<std::vector<double>> finite_moments() const;
};

struct CriticalComponent {
  std::string chart;
  std::vector<double> chart_point;
  std::vector<double> representative;             // domain coordinates
  std::vector<std::vector<double>> cloud;         // sampled critical submanifold
  std::vector<double> moment;
  std::vector<double> hessian_eigenvalues;        // generator 0
  std::vector<std::array<int, 3>> generator_inertia;  // (index, coindex, nullity)
  int index = 0;
  int coindex = 0;
  int nullity = 0;
  bool ill_conditioned = false;
};

struct FixedPointResult {
  std::vector<CriticalComponent> components;
  /// Nonempty when the generating flow is not a circle action; in that case
  /// the vanishing locus of the b-vector field carries no critical points.
  std::string diagnostic;
};

/// 2-d grid domain on which a family's Hamiltonian factors, for level-set
/// connectivity scans.
struct LevelDomain {
  std::array<std::pair<double, double>, 2> box;
  std::array<bool, 2> periodic{false, false};
  std::function<double(double, double)> value;
};

/// A concrete example manifold: analytic moment data over an explicit
/// coordinate box, with chart-level structures for the numeric checks.
/// Instances are immutable after construction and the operations below are
/// pure, so concurrent evaluation needs no synchronization; sampling is
/// index-deterministic and reproduces sequential results exactly.
class Manifold {
 public:
  struct SearchChart {
    std::string name;
    std::vector<std::pair<double, double>> box;
    std::function<std::vector<double>(const std::vector<double>&)> to_domain;
    std::vector<std::size_t> flat_domain_axes;  // critical sets extend along these
  };

  virtual ~Manifold() = default;

  const ManifoldSpec& spec() const { return spec_; }
  std::size_t torus_rank() const { return torus_rank_; }
  std::size_t dimension() const { return coordinate_names_.size(); }
  const std::vector<std::string>& coordinate_names() const { return coordinate_names_; }

  /// Coordinate box, cut restrictions applied.
  const std::vector<std::pair<double, double>>& domain_box() const { return box_; }
  bool in_domain(const std::vector<double>& p) const;

  /// Moment value; flags log-divergence on nonzero-weight components of Z.
  virtual std::vector<double> moment(const std::vector<double>& p, bool* diverged = nullptr,
                                     std::string* component = nullptr) const = 0;

  virtual std::vector<std::string> exceptional_components() const = 0;
  /// Curve approaching the component as y -> 0+.
  virtual std::vector<double> transversal(const std::string& component, double y) const = 0;

  /// Analytic 1-forms iota_{X#} omega per generator, in domain coordinates.
  virtual std::vector<std::vector<double>> moment_one_forms(
      const std::vector<double>& p) const = 0;

  virtual std::vector<SearchChart> critical_charts() const { return {}; }
  virtual std::optional<std::string> action_diagnostic() const { return std::nullopt; }

  virtual std::optional<WeightedAdjacencyGraph> known_graph() const { return std::nullopt; }
  virtual std::vector<HalfSpace> known_halfspaces() const { return {}; }
  /// Graph vertex whose stratum contains the point (families with a graph).
  virtual std::string stratum_of(const std::vector<double>&) const { return {}; }

  virtual std::optional<LevelDomain> level_domain() const { return std::nullopt; }
  /// Moment samples of one symplectic leaf inside Z (all-zero families).
  virtual std::vector<std::vector<double>> leaf_moment_samples(std::size_t n,
                                                               std::uint64_t seed) const;

 protected:
  ManifoldSpec spec_;
  std::size_t torus_rank_ = 1;
  std::vector<std::string> coordinate_names_;
  std::vector<std::pair<double, double>> box_;
};

std::unique_ptr<Manifold> make_manifold(const ManifoldSpec& spec);

// ---- operations ------------------------------------------------------------

/// Analytic moment evaluation; throws when the point leaves the domain.
std::vector<double> moment_eval(const Manifold& m, const std::vector<double>& point,
                                bool* diverged = nullptr, std::string* component = nullptr);

/// n quasi-uniform domain samples through the moment map, deterministic per seed.
MomentSampleSet image_sample(const Manifold& m, std::size_t n, std::uint64_t seed);

/// Log-coefficient estimate per generator from two-scale fits at
/// y = 1e-3, 1e-4, 1e-5 along the component's transversal.
std::vector<double> modular_weight_estimate(const Manifold& m, const std::string& component,
                                            const Tolerances& tol = {});

/// Critical components of the moment map via chart grid search + refinement,
/// or the non-circle-action diagnostic.
FixedPointResult fixed_points(const Manifold& m, const Tolerances& tol = {});

/// Finite-difference Hessian inertia at a located critical point.
Inertia hessian_indices(const Manifold& m, const CriticalComponent& at, std::size_t generator,
                        const Tolerances& tol = {});

struct ConvexityReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double delta = 0.0;
};

/// Midpoint test: for random sample pairs, the midpoint must lie within
/// delta of some sample. Zero violations on convex images.
ConvexityReport convexity_check(const std::vector<std::vector<double>>& finite_moments,
                                std::size_t pair_count, double delta, std::uint64_t seed);

/// Symmetric Hausdorff distance between mu(M) and mu(L) samples; requires an
/// all-zero-weight family.
double verify_leaf_image(const Manifold& m, std::size_t n, std::uint64_t seed = 7);

/// Connected components of the level band of H on the family's grid domain.
int level_connectivity(const Manifold& m, double level, int resolution);
int level_connectivity(const LevelDomain& domain, double level, int resolution);

struct CutResult {
  ManifoldSpec truncated;
  std::string component;
  double level = 0.0;
  /// r >= -level as a half-space on the adjacent stratum of the cut side,
  /// when the family carries a known graph.
  std::vector<HalfSpace> induced_constraints;
};

/// Symplectic cut next to a component: restricts the transverse coordinate to
/// the cut side with the moment r-coordinate capped at -level.  Errors on
/// zero-weight components, where the cut level is never attained.
CutResult symplectic_cut(const Manifold& m, const std::string& component, double level,
                         int side = +1, const Tolerances& tol = {});

/// Per-stratum weight estimates for the c-symplectic product, sampled at the
/// given distance from the corner stratum.
std::map<std::string, std::vector<double>> stratified_weights(const Manifold& m,
                                                              double base_distance = 0.5,
                                                              const Tolerances& tol = {});

}  // namespace bmoment
