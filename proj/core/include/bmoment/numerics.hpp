#pragma once

#include <functional>
#include <vector>

namespace bmoment {

using RealFn = std::function<double(const std::vector<double>&)>;

/// Central finite-difference gradient with per-axis relative step.
std::vector<double> fd_gradient(const RealFn& f, const std::vector<double>& x,
                                double rel_step = 1e-6);

/// Central finite-difference Hessian (symmetric), per-axis relative step.
std::vector<std::vector<double>> fd_hessian(const RealFn& f, const std::vector<double>& x,
                                            double rel_step = 1e-4);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a);

/// Inertia of a spectrum: eigenvalues within nullity_rel * max|lambda| of zero
/// count as null; the rest split into negative (index) and positive (coindex).
struct Inertia {
  int index = 0;
  int coindex = 0;
  int nullity = 0;
  double condition = 0.0;  // of the nonzero block
};
Inertia spectrum_inertia(const std::vector<double>& eigenvalues, double nullity_rel = 1e-4);

/// Nested grid refinement of min f over a box: pick the best grid node,
/// shrink the box around it, repeat. Deterministic.
struct GridMinimum {
  std::vector<double> x;
  double value = 0.0;
};
GridMinimum nested_grid_minimize(const RealFn& f, std::vector<std::pair<double, double>> box,
                                 int points_per_axis = 9, int levels = 24);

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(const std::vector<std::vector<double>>& a,
                          const std::vector<std::vector<double>>& b);

/// Connected components of the band {|f - level| < band} on a 2-d grid of
/// cell-centre values, 4-adjacency, optional per-axis periodic wrap.
/// Returns 0 when the band is empty.
int level_band_components(const std::vector<std::vector<double>>& values, double level,
                          double band, bool periodic_rows, bool periodic_cols);

}  // namespace bmoment
