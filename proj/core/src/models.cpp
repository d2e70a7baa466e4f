#include "bmoment/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>

#include "bmoment/errors.hpp"
#include "bmoment/extended.hpp"
#include "bmoment/sampling.hpp"

namespace bmoment {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
const double kInf = std::numeric_limits<double>::infinity();

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

// Orthographic pole chart of a height-parametrized sphere:
// (x, y) -> height s * (1 - (x^2 + y^2) / 2), angle atan2(y, x).
std::pair<double, double> pole_chart(double x, double y, double sign, double scale = 1.0) {
  const double height = sign * scale * (1.0 - (x * x + y * y) / 2.0);
  return {height, wrap_angle(std::atan2(y, x))};
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::LocalModel: return "local_model";
    case Family::BTorus: return "b_torus";
    case Family::BSphere: return "b_sphere";
    case Family::ZeroWeightProduct: return "zero_weight_product";
    case Family::RActionCounterexample: return "r_action_counterexample";
    case Family::CSymplecticProduct: return "c_symplectic_product";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::LocalModel, Family::BTorus, Family::BSphere,
                   Family::ZeroWeightProduct, Family::RActionCounterexample,
                   Family::CSymplecticProduct})
    if (family_name(f) == name) return f;
  throw ParseError("unknown family '" + name + "'");
}

Tolerances Tolerances::scaled(double s) const {
  Tolerances t = *this;
  t.weight_fit *= s;
  t.weight_spread *= s;
  t.vertex_match *= s;
  t.hull_delta *= s;
  t.gradient_check_rel *= s;
  t.cut_slack *= s;
  return t;
}

Tolerances Tolerances::from_env() {
  Tolerances t;
  if (const char* env = std::getenv("BMOMENT_TOLERANCE_SCALE")) {
    char* end = nullptr;
    const double s = std::strtod(env, &end);
    if (end != env && s > 0) return t.scaled(s);
  }
  return t;
}

std::vector<std::vector<double>> MomentSampleSet::finite_moments() const {
  std::vector<std::vector<double>> out;
  for (const auto& s : samples) {
    bool finite = true;
    for (double v : s.moment)
      if (!std::isfinite(v)) finite = false;
    if (finite) out.push_back(s.moment);
  }
  return out;
}

bool Manifold::in_domain(const std::vector<double>& p) const {
  if (p.size() != box_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < box_[i].first || p[i] > box_[i].second) return false;
  return true;
}

std::vector<std::vector<double>> Manifold::leaf_moment_samples(std::size_t, std::uint64_t) const {
  throw PreconditionError("family has no distinguished leaf sampler");
}

// ---- b-sphere ---------------------------------------------------------------

namespace {

class BSphereManifold final : public Manifold {
 public:
  explicit BSphereManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 1;
    coordinate_names_ = {"z", "theta"};
    box_ = {{-1.0, 1.0}, {0.0, kTwoPi}};
    for (const auto& cut : spec.cuts) {
      if (cut.component != "equator")
        throw ValidationError("b_sphere has a single component 'equator'");
      const double zmin = std::exp(-cut.level);
      box_[0] = cut.side > 0 ? std::pair{zmin, 1.0} : std::pair{-1.0, -zmin};
    }
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    const double z = p[0];
    if (diverged) *diverged = z == 0.0;
    if (component) *component = z == 0.0 ? "equator" : "";
    return {z == 0.0 ? kInf : -std::log(std::fabs(z))};
  }

  std::vector<std::string> exceptional_components() const override { return {"equator"}; }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (component != "equator") throw ValidationError("unknown component '" + component + "'");
    return {y, 1.0};
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>& p) const override {
    return {{-1.0 / p[0], 0.0}};
  }

  std::vector<SearchChart> critical_charts() const override {
    std::vector<SearchChart> charts;
    for (double sign : {+1.0, -1.0}) {
      charts.push_back({sign > 0 ? "pole_north" : "pole_south",
                        {{-0.8, 0.8}, {-0.8, 0.8}},
                        [sign](const std::vector<double>& c) {
                          const auto [z, theta] = pole_chart(c[0], c[1], sign);
                          return std::vector<double>{z, theta};
                        },
                        {}});
      charts.push_back({sign > 0 ? "mid_north" : "mid_south",
                        {{sign > 0 ? 0.05 : -0.75, sign > 0 ? 0.75 : -0.05}, {0.0, kTwoPi}},
                        [](const std::vector<double>& c) { return c; },
                        {}});
    }
    return charts;
  }

  std::optional<WeightedAdjacencyGraph> known_graph() const override {
    return WeightedAdjacencyGraph(
        1, {"upper", "lower"},
        {{"equator", {"upper", "lower"}, Covector({Rat(-1)})}});
  }

  std::vector<HalfSpace> known_halfspaces() const override {
    return {HalfSpace::vertex_local("upper", LatticeVector({Int(-1)}), Rat(0)),
            HalfSpace::vertex_local("lower", LatticeVector({Int(-1)}), Rat(0))};
  }

  std::string stratum_of(const std::vector<double>& p) const override {
    return p[0] > 0 ? "upper" : "lower";
  }
};

// ---- b-torus ----------------------------------------------------------------

class BTorusManifold final : public Manifold {
 public:
  explicit BTorusManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 1;
    coordinate_names_ = {"theta", "alpha"};
    box_ = {{0.0, kTwoPi}, {0.0, kTwoPi}};
    for (const auto& cut : spec.cuts) apply_cut(cut);
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    const double theta = p[0];
    if (theta == 0.0 || theta == kTwoPi) {
      if (diverged) *diverged = true;
      if (component) *component = "theta0";
      return {kInf};
    }
    if (theta == kPi) {
      if (diverged) *diverged = true;
      if (component) *component = "thetapi";
      return {-kInf};
    }
    if (diverged) *diverged = false;
    if (component) *component = "";
    return {-std::log(std::fabs(std::tan(theta / 2.0)))};
  }

  std::vector<std::string> exceptional_components() const override {
    return {"theta0", "thetapi"};
  }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (component == "theta0") return {y, 1.0};
    if (component == "thetapi") return {kPi + y, 1.0};
    throw ValidationError("unknown component '" + component + "'");
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>& p) const override {
    return {{-1.0 / std::sin(p[0]), 0.0}};
  }

  std::vector<SearchChart> critical_charts() const override {
    auto identity = [](const std::vector<double>& c) { return c; };
    return {{"v1", {{0.03, kPi - 0.03}, {0.0, kTwoPi}}, identity, {}},
            {"v2", {{kPi + 0.03, kTwoPi - 0.03}, {0.0, kTwoPi}}, identity, {}}};
  }

  std::optional<WeightedAdjacencyGraph> known_graph() const override {
    return WeightedAdjacencyGraph(1, {"v1", "v2"},
                                  {{"theta0", {"v1", "v2"}, Covector({Rat(-1)})},
                                   {"thetapi", {"v1", "v2"}, Covector({Rat(1)})}});
  }

  std::string stratum_of(const std::vector<double>& p) const override {
    return (p[0] > 0 && p[0] < kPi) ? "v1" : "v2";
  }

 private:
  void apply_cut(const SymplecticCutRecord& cut) {
    // r >= -level in the chart of the component translates into a theta bound.
    const double margin = 2.0 * std::atan(std::exp(-cut.level));
    const double wide = 2.0 * std::atan(std::exp(cut.level));
    if (cut.component == "theta0") {
      box_[0] = cut.side > 0 ? std::pair{margin, kPi} : std::pair{kPi, kTwoPi - margin};
    } else if (cut.component == "thetapi") {
      box_[0] = cut.side > 0 ? std::pair{0.0, wide} : std::pair{kPi + margin, kTwoPi};
    } else {
      throw ValidationError("b_torus components are 'theta0' and 'thetapi'");
    }
  }
};

// ---- local model ------------------------------------------------------------

class LocalModelManifold final : public Manifold {
 public:
  explicit LocalModelManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 2;
    coordinate_names_ = {"z_leaf", "phi_leaf", "t", "rho"};
    a_ = to_double(spec.leaf_min);
    b_ = to_double(spec.leaf_max);
    c_ = to_double(spec.period);
    eps_ = to_double(spec.eps);
    if (!(a_ < b_)) throw ValidationError("leaf interval needs leaf_min < leaf_max");
    if (c_ <= 0 || eps_ <= 0) throw ValidationError("local model needs c > 0 and eps > 0");
    box_ = {{-1.0, 1.0}, {0.0, kTwoPi}, {-eps_, eps_}, {0.0, kTwoPi}};
    for (const auto& cut : spec.cuts) {
      if (cut.component != "t0")
        throw ValidationError("local_model has a single component 't0'");
      const double tmin = std::exp(-cut.level / c_);
      if (tmin > eps_) throw ValidationError("cut level lies outside the model neighborhood");
      box_[2] = cut.side > 0 ? std::pair{tmin, eps_} : std::pair{-eps_, -tmin};
    }
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    const double t = p[2];
    if (diverged) *diverged = t == 0.0;
    if (component) *component = t == 0.0 ? "t0" : "";
    return {mu_leaf(p[0]), t == 0.0 ? -kInf : c_ * std::log(std::fabs(t))};
  }

  std::vector<std::string> exceptional_components() const override { return {"t0"}; }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (component != "t0") throw ValidationError("unknown component '" + component + "'");
    return {0.2, 0.3, y, 0.7};
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>& p) const override {
    return {{(b_ - a_) / 2.0, 0.0, 0.0, 0.0}, {0.0, 0.0, c_ / p[2], 0.0}};
  }

  std::vector<SearchChart> critical_charts() const override {
    struct Piece {
      std::string name;
      std::vector<std::pair<double, double>> box;  // two chart axes
      std::function<std::pair<double, double>(double, double)> map;  // -> (height, angle)
    };
    auto sphere_pieces = [](double scale) {
      std::vector<Piece> ps;
      for (double sign : {+1.0, -1.0}) {
        ps.push_back({sign > 0 ? "n" : "s",
                      {{-0.8, 0.8}, {-0.8, 0.8}},
                      [sign, scale](double x, double y) { return pole_chart(x, y, sign, scale); }});
        ps.push_back({sign > 0 ? "mid_n" : "mid_s",
                      {{sign > 0 ? 0.05 * scale : -0.75 * scale,
                        sign > 0 ? 0.75 * scale : -0.05 * scale},
                       {0.0, kTwoPi}},
                      [](double h, double ang) { return std::pair{h, ang}; }});
      }
      return ps;
    };

    std::vector<SearchChart> charts;
    for (const auto& leaf : sphere_pieces(1.0))
      for (const auto& bfac : sphere_pieces(eps_)) {
        SearchChart sc;
        sc.name = "leaf_" + leaf.name + "/b_" + bfac.name;
        sc.box = {leaf.box[0], leaf.box[1], bfac.box[0], bfac.box[1]};
        auto lmap = leaf.map;
        auto bmap = bfac.map;
        sc.to_domain = [lmap, bmap](const std::vector<double>& c) {
          const auto [zl, phil] = lmap(c[0], c[1]);
          const auto [t, rho] = bmap(c[2], c[3]);
          return std::vector<double>{zl, phil, t, rho};
        };
        charts.push_back(std::move(sc));
      }
    return charts;
  }

  std::optional<WeightedAdjacencyGraph> known_graph() const override {
    return WeightedAdjacencyGraph(
        2, {"tpos", "tneg"},
        {{"t0", {"tpos", "tneg"}, Covector({Rat(0), spec_.period})}});
  }

  std::vector<HalfSpace> known_halfspaces() const override {
    // The r-cap N = c log(eps), exact for eps = 1, otherwise a rational upper
    // rounding at 1e-12 so the polytope still contains the image.
    Rat cap(0);
    if (spec_.eps != 1) {
      const double n = c_ * std::log(eps_);
      cap = Rat(Int(std::ceil(n * 1e12)), Int(1000000000000LL));
    }
    return {HalfSpace::global(LatticeVector({Int(1), Int(0)}), spec_.leaf_max),
            HalfSpace::global(LatticeVector({Int(-1), Int(0)}), -spec_.leaf_min),
            HalfSpace::vertex_local("tpos", LatticeVector({Int(0), Int(1)}), cap),
            HalfSpace::vertex_local("tneg", LatticeVector({Int(0), Int(1)}), cap)};
  }

  std::string stratum_of(const std::vector<double>& p) const override {
    return p[2] > 0 ? "tpos" : "tneg";
  }

 private:
  double mu_leaf(double z) const { return a_ + (b_ - a_) * (z + 1.0) / 2.0; }
  double a_ = 0, b_ = 1, c_ = 1, eps_ = 1;
};

// ---- zero-weight product ----------------------------------------------------

class ZeroWeightProductManifold final : public Manifold {
 public:
  explicit ZeroWeightProductManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 1;
    if (spec.surface != "b_torus" && spec.surface != "b_sphere")
      throw ValidationError("surface must be 'b_torus' or 'b_sphere'");
    b_torus_ = spec.surface == "b_torus";
    coordinate_names_ = b_torus_ ? std::vector<std::string>{"theta", "alpha", "z", "phi"}
                                 : std::vector<std::string>{"w", "beta", "z", "phi"};
    box_ = {b_torus_ ? std::pair{0.0, kTwoPi} : std::pair{-1.0, 1.0},
            {0.0, kTwoPi},
            {-1.0, 1.0},
            {0.0, kTwoPi}};
    if (!spec.cuts.empty())
      throw ZeroWeightCutError(
          "symplectic cut on a zero-weight component: the cut level is never attained");
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    // The Hamiltonian is the S^2 height, smooth across Z: never flagged.
    if (diverged) *diverged = false;
    if (component) *component = "";
    return {p[2]};
  }

  std::vector<std::string> exceptional_components() const override {
    return b_torus_ ? std::vector<std::string>{"theta0", "thetapi"}
                    : std::vector<std::string>{"equator"};
  }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (b_torus_) {
      if (component == "theta0") return {y, 0.5, 0.3, 1.0};
      if (component == "thetapi") return {kPi + y, 0.5, 0.3, 1.0};
    } else if (component == "equator") {
      return {y, 0.5, 0.3, 1.0};
    }
    throw ValidationError("unknown component '" + component + "'");
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>&) const override {
    return {{0.0, 0.0, 1.0, 0.0}};
  }

  std::vector<SearchChart> critical_charts() const override {
    std::vector<SearchChart> charts;
    const auto surface_box = box_[0];
    for (double sign : {+1.0, -1.0}) {
      charts.push_back({sign > 0 ? "pole_north" : "pole_south",
                        {surface_box, {0.0, kTwoPi}, {-0.8, 0.8}, {-0.8, 0.8}},
                        [sign](const std::vector<double>& c) {
                          const auto [z, phi] = pole_chart(c[2], c[3], sign);
                          return std::vector<double>{c[0], c[1], z, phi};
                        },
                        {0, 1}});
    }
    charts.push_back({"mid",
                      {surface_box, {0.0, kTwoPi}, {-0.7, 0.7}, {0.0, kTwoPi}},
                      [](const std::vector<double>& c) { return c; },
                      {0, 1}});
    return charts;
  }

  std::optional<WeightedAdjacencyGraph> known_graph() const override {
    const Covector zero({Rat(0)});
    if (b_torus_)
      return WeightedAdjacencyGraph(1, {"v1", "v2"},
                                    {{"theta0", {"v1", "v2"}, zero},
                                     {"thetapi", {"v1", "v2"}, zero}});
    return WeightedAdjacencyGraph(1, {"upper", "lower"},
                                  {{"equator", {"upper", "lower"}, zero}});
  }

  std::optional<LevelDomain> level_domain() const override {
    LevelDomain d;
    d.box = {std::pair{-1.0, 1.0}, std::pair{0.0, kTwoPi}};
    d.periodic = {false, true};
    d.value = [](double z, double) { return z; };
    return d;
  }

  std::vector<std::vector<double>> leaf_moment_samples(std::size_t n,
                                                       std::uint64_t seed) const override {
    // One symplectic leaf of a Z component: {point of the b-surface Z} x S^2.
    HaltonSequence halton(2, seed);
    std::vector<std::vector<double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back({-1.0 + 2.0 * halton.point(i)[0]});
    return out;
  }

 private:
  bool b_torus_ = true;
};

// ---- R-action counterexample ------------------------------------------------

class RActionManifold final : public Manifold {
 public:
  explicit RActionManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 1;
    coordinate_names_ = {"x", "y"};
    box_ = {{-2.0, 2.0}, {-2.0, 2.0}};
    if (!spec.cuts.empty())
      throw ZeroWeightCutError(
          "symplectic cut on a zero-weight component: the cut level is never attained");
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    if (diverged) *diverged = false;
    if (component) *component = "";
    return {p[0]};
  }

  std::vector<std::string> exceptional_components() const override { return {"x0"}; }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (component != "x0") throw ValidationError("unknown component '" + component + "'");
    return {y, 0.5};
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>&) const override {
    return {{1.0, 0.0}};
  }

  std::optional<std::string> action_diagnostic() const override {
    // The generating b-vector field x d/dy vanishes on {x = 0} as a section of
    // the b-tangent bundle, yet dH = dx is unit there: the flow is an R-action,
    // not a circle action, and the vanishing locus carries no critical points.
    double min_grad = kInf;
    for (double y = -2.0; y <= 2.0; y += 0.25) {
      const auto g = fd_gradient(
          [this](const std::vector<double>& p) { return moment(p, nullptr, nullptr)[0]; },
          {0.0, y});
      min_grad = std::min(min_grad, std::hypot(g[0], g[1]));
    }
    if (min_grad < 1e-3) return std::nullopt;  // would be a genuine critical locus
    return "flow fixed locus {x = 0} has dH != 0 (|dH| >= " + std::to_string(min_grad) +
           "): generator is an R-action, not an S1-action; no fixed-point records";
  }
};

// ---- c-symplectic product ---------------------------------------------------

class CSymplecticManifold final : public Manifold {
 public:
  explicit CSymplecticManifold(const ManifoldSpec& spec) {
    spec_ = spec;
    torus_rank_ = 1;
    coordinate_names_ = {"theta1", "alpha1", "theta2", "alpha2"};
    box_ = {{0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, kTwoPi}};
    for (const auto& cut : spec.cuts) apply_cut(cut);
  }

  std::vector<double> moment(const std::vector<double>& p, bool* diverged,
                             std::string* component) const override {
    const double theta1 = p[0];
    if (theta1 == 0.0 || theta1 == kTwoPi) {
      if (diverged) *diverged = true;
      if (component) *component = "Z1";
      return {kInf};
    }
    if (theta1 == kPi) {
      if (diverged) *diverged = true;
      if (component) *component = "Z1";
      return {-kInf};
    }
    if (diverged) *diverged = false;
    if (component) *component = "";
    return {-std::log(std::fabs(std::tan(theta1 / 2.0)))};
  }

  std::vector<std::string> exceptional_components() const override { return {"Z1", "Z2"}; }

  std::vector<double> transversal(const std::string& component, double y) const override {
    if (component == "Z1") return {y, 0.5, kPi / 2.0 + 0.5, 1.0};
    if (component == "Z2") return {0.8, 0.5, kPi / 2.0 + y, 1.0};
    throw ValidationError("unknown component '" + component + "'");
  }

  std::vector<std::vector<double>> moment_one_forms(const std::vector<double>& p) const override {
    return {{-1.0 / std::sin(p[0]), 0.0, 0.0, 0.0}};
  }

  std::vector<SearchChart> critical_charts() const override {
    auto identity = [](const std::vector<double>& c) { return c; };
    return {{"mid1",
             {{0.05, kPi - 0.05}, {0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, kTwoPi}},
             identity,
             {1, 2, 3}},
            {"mid2",
             {{kPi + 0.05, kTwoPi - 0.05}, {0.0, kTwoPi}, {0.0, kTwoPi}, {0.0, kTwoPi}},
             identity,
             {1, 2, 3}}};
  }

 private:
  void apply_cut(const SymplecticCutRecord& cut) {
    if (cut.component != "Z1")
      throw ValidationError("symplectic cut is supported next to 'Z1' only");
    const double margin = 2.0 * std::atan(std::exp(-cut.level));
    box_[0] = cut.side > 0 ? std::pair{margin, kPi} : std::pair{kPi, kTwoPi - margin};
  }
};

}  // namespace

std::unique_ptr<Manifold> make_manifold(const ManifoldSpec& spec) {
  switch (spec.family) {
    case Family::BSphere: return std::make_unique<BSphereManifold>(spec);
    case Family::BTorus: return std::make_unique<BTorusManifold>(spec);
    case Family::LocalModel: return std::make_unique<LocalModelManifold>(spec);
    case Family::ZeroWeightProduct: return std::make_unique<ZeroWeightProductManifold>(spec);
    case Family::RActionCounterexample: return std::make_unique<RActionManifold>(spec);
    case Family::CSymplecticProduct: return std::make_unique<CSymplecticManifold>(spec);
  }
  throw ParseError("unknown family");
}

// ---- operations -------------------------------------------------------------

std::vector<double> moment_eval(const Manifold& m, const std::vector<double>& point,
                                bool* diverged, std::string* component) {
  if (!m.in_domain(point)) throw ValidationError("point outside the coordinate domain");
  return m.moment(point, diverged, component);
}

MomentSampleSet image_sample(const Manifold& m, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("samples must be >= 1");
  const auto& box = m.domain_box();
  HaltonSequence halton(box.size(), seed);
  MomentSampleSet set;
  set.seed = seed;
  set.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = halton.point(i);
    MomentSample s;
    s.point.resize(box.size());
    for (std::size_t d = 0; d < box.size(); ++d)
      s.point[d] = box[d].first + u[d] * (box[d].second - box[d].first);
    s.moment = m.moment(s.point, &s.diverged, &s.component);
    set.samples.push_back(std::move(s));
  }
  return set;
}

namespace {

std::vector<double> log_coefficient_fit(const Manifold& m,
                                        const std::function<std::vector<double>(double)>& curve,
                                        const Tolerances& tol) {
  const std::size_t k = m.torus_rank();
  std::vector<double> mean(k, 0.0);
  std::vector<double> lo(k, kInf), hi(k, -kInf);
  const double scales[] = {1e-3, 1e-4, 1e-5};
  for (double y : scales) {
    const auto h1 = m.moment(curve(y));
    const auto h2 = m.moment(curve(y / 2.0));
    for (std::size_t g = 0; g < k; ++g) {
      const double c = (h2[g] - h1[g]) / std::log(0.5);
      mean[g] += c / std::size(scales);
      lo[g] = std::min(lo[g], c);
      hi[g] = std::max(hi[g], c);
    }
  }
  for (std::size_t g = 0; g < k; ++g)
    if (hi[g] - lo[g] > tol.weight_spread)
      throw NonConvergentFitError("log-coefficient fit spread " + std::to_string(hi[g] - lo[g]) +
                                  " exceeds tolerance: modeling bug");
  return mean;
}

}  // namespace

std::vector<double> modular_weight_estimate(const Manifold& m, const std::string& component,
                                            const Tolerances& tol) {
  return log_coefficient_fit(
      m, [&](double y) { return m.transversal(component, y); }, tol);
}

namespace {

double gradient_norm_sq(const Manifold& m, const Manifold::SearchChart& chart,
                        const std::vector<double>& cx) {
  double sum = 0.0;
  for (std::size_t g = 0; g < m.torus_rank(); ++g) {
    const auto grad = fd_gradient(
        [&](const std::vector<double>& c) { return m.moment(chart.to_domain(c))[g]; }, cx);
    for (double v : grad) sum += v * v;
  }
  return sum;
}

}  // namespace

Inertia hessian_indices(const Manifold& m, const CriticalComponent& at, std::size_t generator,
                        const Tolerances& tol) {
  for (const auto& chart : m.critical_charts()) {
    if (chart.name != at.chart) continue;
    const auto hess = fd_hessian(
        [&](const std::vector<double>& c) { return m.moment(chart.to_domain(c))[generator]; },
        at.chart_point, tol.hessian_step);
    return spectrum_inertia(jacobi_eigenvalues(hess), tol.nullity_rel);
  }
  throw ValidationError("critical point references unknown chart '" + at.chart + "'");
}

FixedPointResult fixed_points(const Manifold& m, const Tolerances& tol) {
  FixedPointResult result;
  if (auto diag = m.action_diagnostic()) {
    result.diagnostic = *diag;
    return result;
  }

  const double threshold =
      tol.critical_gradient * tol.critical_gradient * static_cast<double>(m.torus_rank());

  for (const auto& chart : m.critical_charts()) {
    const GridMinimum gm = nested_grid_minimize(
        [&](const std::vector<double>& cx) { return gradient_norm_sq(m, chart, cx); }, chart.box,
        7, 22);
    if (gm.value >= threshold) continue;

    CriticalComponent comp;
    comp.chart = chart.name;
    comp.chart_point = gm.x;
    comp.representative = chart.to_domain(gm.x);
    comp.moment = m.moment(comp.representative);

    bool duplicate = false;
    for (const auto& existing : result.components) {
      double dist = 0.0;
      for (std::size_t i = 0; i < comp.representative.size(); ++i) {
        if (std::find(chart.flat_domain_axes.begin(), chart.flat_domain_axes.end(), i) !=
            chart.flat_domain_axes.end())
          continue;
        dist = std::max(dist, std::fabs(comp.representative[i] - existing.representative[i]));
      }
      if (dist < 1e-4) duplicate = true;
    }
    if (duplicate) continue;

    for (std::size_t g = 0; g < m.torus_rank(); ++g) {
      const auto hess = fd_hessian(
          [&](const std::vector<double>& c) { return m.moment(chart.to_domain(c))[g]; },
          comp.chart_point, tol.hessian_step);
      const auto eig = jacobi_eigenvalues(hess);
      const Inertia inertia = spectrum_inertia(eig, tol.nullity_rel);
      comp.generator_inertia.push_back({inertia.index, inertia.coindex, inertia.nullity});
      if (g == 0) {
        comp.hessian_eigenvalues = eig;
        comp.index = inertia.index;
        comp.coindex = inertia.coindex;
        comp.nullity = inertia.nullity;
        comp.ill_conditioned = inertia.condition > tol.condition_limit;
      }
    }

    comp.cloud.push_back(comp.representative);
    if (!chart.flat_domain_axes.empty()) {
      // Sample the critical submanifold along the Hamiltonian-invariant axes.
      const int steps = 8;
      std::vector<std::vector<double>> cloud;
      cloud.push_back(comp.representative);
      for (std::size_t axis : chart.flat_domain_axes) {
        std::vector<std::vector<double>> next;
        const auto [lo, hi] = m.domain_box()[axis];
        for (const auto& base : cloud)
          for (int s = 0; s < steps; ++s) {
            auto p = base;
            p[axis] = lo + (hi - lo) * (s + 0.5) / steps;
            next.push_back(std::move(p));
          }
        cloud = std::move(next);
      }
      comp.cloud = std::move(cloud);
    }
    result.components.push_back(std::move(comp));
  }

  std::sort(result.components.begin(), result.components.end(),
            [](const CriticalComponent& a, const CriticalComponent& b) {
              return a.moment < b.moment;
            });
  return result;
}

ConvexityReport convexity_check(const std::vector<std::vector<double>>& finite_moments,
                                std::size_t pair_count, double delta, std::uint64_t seed) {
  if (finite_moments.size() < 2)
    throw ValidationError("convexity check needs at least 2 finite samples");
  ConvexityReport report;
  report.pairs = pair_count;
  report.delta = delta;

  std::mt19937_64 rng(seed);
  const std::size_t n = finite_moments.size();
  const double delta_sq = delta * delta;
  std::vector<double> mid(finite_moments.front().size());

  for (std::size_t p = 0; p < pair_count; ++p) {
    const auto& a = finite_moments[rng() % n];
    const auto& b = finite_moments[rng() % n];
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = (a[i] + b[i]) / 2.0;
    bool near = false;
    for (const auto& q : finite_moments) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < mid.size(); ++i) {
        d2 += (mid[i] - q[i]) * (mid[i] - q[i]);
        if (d2 > delta_sq) break;
      }
      if (d2 <= delta_sq) {
        near = true;
        break;
      }
    }
    if (!near) ++report.violations;
  }
  return report;
}

double verify_leaf_image(const Manifold& m, std::size_t n, std::uint64_t seed) {
  const auto graph = m.known_graph();
  if (!graph || classify(*graph).tag != ModularWeightClass::Tag::AllZero)
    throw PreconditionError("leaf-image comparison requires an all-zero-weight family");
  const auto manifold_samples = image_sample(m, n, seed).finite_moments();
  const auto leaf_samples = m.leaf_moment_samples(n, seed + 1);
  return hausdorff_distance(manifold_samples, leaf_samples);
}

int level_connectivity(const LevelDomain& domain, double level, int resolution) {
  const auto [r0, r1] = domain.box[0];
  const auto [c0, c1] = domain.box[1];
  const double hr = (r1 - r0) / resolution;
  const double hc = (c1 - c0) / resolution;

  std::vector<std::vector<double>> values(resolution, std::vector<double>(resolution));
  for (int r = 0; r < resolution; ++r)
    for (int c = 0; c < resolution; ++c)
      values[r][c] = domain.value(r0 + (r + 0.5) * hr, c0 + (c + 0.5) * hc);

  double max_grad = 0.0;
  for (int r = 0; r + 1 < resolution; ++r)
    for (int c = 0; c + 1 < resolution; ++c) {
      const double gr = (values[r + 1][c] - values[r][c]) / hr;
      const double gc = (values[r][c + 1] - values[r][c]) / hc;
      max_grad = std::max(max_grad, std::hypot(gr, gc));
    }

  const double band = 2.0 * std::max(hr, hc) * max_grad;
  const int components =
      level_band_components(values, level, band, domain.periodic[0], domain.periodic[1]);
  if (components == 0) throw ValidationError("empty level set");
  return components;
}

int level_connectivity(const Manifold& m, double level, int resolution) {
  const auto domain = m.level_domain();
  if (!domain) throw PreconditionError("family has no level-scan domain");
  return level_connectivity(*domain, level, resolution);
}

CutResult symplectic_cut(const Manifold& m, const std::string& component, double level, int side,
                         const Tolerances& tol) {
  const auto estimate = modular_weight_estimate(m, component, tol);
  double magnitude = 0.0;
  for (double c : estimate) magnitude = std::max(magnitude, std::fabs(c));
  if (magnitude <= tol.weight_fit)
    throw ZeroWeightCutError(
        "symplectic cut at zero-weight component '" + component +
        "': the level -N is never attained there; a smooth Hamiltonian would force "
        "the leaf image to equal the manifold image, contradicting the cut");

  CutResult result;
  result.component = component;
  result.level = level;
  result.truncated = m.spec();
  result.truncated.cuts.push_back({component, side, level});
  make_manifold(result.truncated);  // validates component and side

  if (const auto graph = m.known_graph()) {
    const auto* edge = graph->find_edge(component);
    if (edge) {
      const LatticeVector direction = primitive_complement(edge->weight);
      VecZ neg(direction.coords.size());
      for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -direction.coords[i];
      const std::string vertex = side > 0 ? edge->ends[0] : edge->ends[1];
      result.induced_constraints.push_back(
          HalfSpace::vertex_local(vertex, LatticeVector(std::move(neg)),
                                  rational_from_double(level)));
    }
  }
  return result;
}

std::map<std::string, std::vector<double>> stratified_weights(const Manifold& m,
                                                              double base_distance,
                                                              const Tolerances& tol) {
  if (m.spec().family != Family::CSymplecticProduct)
    throw PreconditionError("stratified weights are defined for the c-symplectic product");
  if (base_distance < tol.corner_min_distance)
    throw ValidationError("sampling too close to the corner stratum S_c (distance " +
                          std::to_string(base_distance) + " < " +
                          std::to_string(tol.corner_min_distance) + ")");

  std::map<std::string, std::vector<double>> out;
  out["Z1"] = log_coefficient_fit(
      m, [&](double y) { return std::vector<double>{y, 0.5, kPi / 2.0 + base_distance, 1.0}; },
      tol);
  out["Z2"] = log_coefficient_fit(
      m,
      [&](double y) { return std::vector<double>{base_distance, 0.5, kPi / 2.0 + y, 1.0}; },
      tol);
  return out;
}

}  // namespace bmoment
