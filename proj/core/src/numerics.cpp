#include "bmoment/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bmoment {

std::vector<double> fd_gradient(const RealFn& f, const std::vector<double>& x, double rel_step) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::fabs(x[i]));
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    g[i] = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

std::vector<std::vector<double>> fd_hessian(const RealFn& f, const std::vector<double>& x,
                                            double rel_step) {
  const std::size_t n = x.size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < n; ++i) h[i] = rel_step * std::max(1.0, std::fabs(x[i]));

  std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
  const double f0 = f(x);
  for (std::size_t i = 0; i < n; ++i) {
    auto xp = x, xm = x;
    xp[i] += h[i];
    xm[i] -= h[i];
    hess[i][i] = (f(xp) - 2 * f0 + f(xm)) / (h[i] * h[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      auto xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h[i];
      xpp[j] += h[j];
      xpm[i] += h[i];
      xpm[j] -= h[j];
      xmp[i] -= h[i];
      xmp[j] += h[j];
      xmm[i] -= h[i];
      xmm[j] -= h[j];
      hess[i][j] = hess[j][i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4 * h[i] * h[j]);
    }
  }
  return hess;
}

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

Inertia spectrum_inertia(const std::vector<double>& eigenvalues, double nullity_rel) {
  Inertia inertia;
  double max_abs = 0.0;
  for (double e : eigenvalues) max_abs = std::max(max_abs, std::fabs(e));
  const double cut = nullity_rel * max_abs;
  double min_nonzero = max_abs;
  for (double e : eigenvalues) {
    if (std::fabs(e) <= cut) {
      ++inertia.nullity;
    } else {
      (e < 0 ? inertia.index : inertia.coindex)++;
      min_nonzero = std::min(min_nonzero, std::fabs(e));
    }
  }
  inertia.condition = (inertia.index + inertia.coindex) ? max_abs / min_nonzero : 0.0;
  return inertia;
}

GridMinimum nested_grid_minimize(const RealFn& f, std::vector<std::pair<double, double>> box,
                                 int points_per_axis, int levels) {
  const std::size_t n = box.size();
  std::vector<double> best_x(n);
  double best = 0.0;

  for (int level = 0; level < levels; ++level) {
    std::vector<std::size_t> idx(n, 0);
    bool first = true;
    std::vector<double> x(n);
    while (true) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto [lo, hi] = box[i];
        x[i] = points_per_axis == 1
                   ? (lo + hi) / 2
                   : lo + (hi - lo) * static_cast<double>(idx[i]) / (points_per_axis - 1);
      }
      const double v = f(x);
      if (first || v < best) {
        best = v;
        best_x = x;
        first = false;
      }
      std::size_t carry = 0;
      while (carry < n && ++idx[carry] == static_cast<std::size_t>(points_per_axis)) {
        idx[carry] = 0;
        ++carry;
      }
      if (carry == n) break;
    }
    // Shrink around the best node: one grid cell on each side.
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = box[i];
      const double step = (hi - lo) / (points_per_axis - 1);
      box[i] = {std::max(lo, best_x[i] - step), std::min(hi, best_x[i] + step)};
    }
  }
  return {best_x, best};
}

double hausdorff_distance(const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b) {
  auto directed = [](const std::vector<std::vector<double>>& from,
                     const std::vector<std::vector<double>>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double nearest = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) d2 += (p[i] - q[i]) * (p[i] - q[i]);
        nearest = std::min(nearest, d2);
        if (nearest == 0.0) break;
      }
      worst = std::max(worst, nearest);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int level_band_components(const std::vector<std::vector<double>>& values, double level,
                          double band, bool periodic_rows, bool periodic_cols) {
  const int rows = static_cast<int>(values.size());
  const int cols = rows ? static_cast<int>(values[0].size()) : 0;
  auto marked = [&](int r, int c) { return std::fabs(values[r][c] - level) < band; };

  Dsu dsu(rows * cols);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (!marked(r, c)) continue;
      const int rn = (r + 1 < rows) ? r + 1 : (periodic_rows ? 0 : -1);
      const int cn = (c + 1 < cols) ? c + 1 : (periodic_cols ? 0 : -1);
      if (rn >= 0 && marked(rn, c)) dsu.unite(id(r, c), id(rn, c));
      if (cn >= 0 && marked(r, cn)) dsu.unite(id(r, c), id(r, cn));
    }

  std::vector<int> roots;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (marked(r, c)) roots.push_back(dsu.find(id(r, c)));
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return static_cast<int>(roots.size());
}

}  // namespace bmoment
