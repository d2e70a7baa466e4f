#include "bmoment/cone.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bmoment/errors.hpp"

namespace bmoment {

namespace {

Rat row_dot(const MatQ& a, std::size_t i, const VecQ& y) {
  Rat s(0);
  for (std::size_t j = 0; j < a.cols; ++j) s += a.at(i, j) * y[j];
  return s;
}

Rat row_dot(const MatQ& a, std::size_t i, const VecZ& y) {
  Rat s(0);
  for (std::size_t j = 0; j < a.cols; ++j) s += a.at(i, j) * Rat(y[j]);
  return s;
}

// Keeps a ray iff the processed constraints tight at it have rank
// dim - |lineality| - 1, the exact extremality criterion.
void prune_rays(const MatQ& a, std::size_t processed, std::size_t lineality_dim,
                std::vector<VecZ>& rays) {
  const std::size_t dim = a.cols;
  std::vector<VecZ> kept;
  std::set<VecZ> seen;
  for (auto& r : rays) {
    if (is_zero(r) || seen.count(r)) continue;
    std::vector<VecQ> tight;
    for (std::size_t i = 0; i < processed; ++i)
      if (row_dot(a, i, r) == 0) tight.push_back(a.row(i));
    const std::size_t need = dim - lineality_dim - 1;
    if (rank(MatQ::from_rows(tight)) == need) {
      seen.insert(r);
      kept.push_back(std::move(r));
    }
  }
  rays = std::move(kept);
}

VecZ combine(const Rat& cp, const VecZ& rm, const Rat& cm, const VecZ& rp) {
  // cp * rm - cm * rp with cp > 0 > cm, then primitive-normalized.
  VecQ v(rm.size());
  for (std::size_t j = 0; j < rm.size(); ++j) v[j] = cp * Rat(rm[j]) - cm * Rat(rp[j]);
  return primitive_direction(v);
}

}  // namespace

ConeGenerators dd_cone(const MatQ& a) {
  const std::size_t dim = a.cols;
  ConeGenerators g;
  for (std::size_t i = 0; i < dim; ++i) {
    VecZ e(dim, Int(0));
    e[i] = 1;
    g.lineality.push_back(std::move(e));
  }

  for (std::size_t row = 0; row < a.rows; ++row) {
    std::vector<Rat> lin_vals(g.lineality.size());
    bool lineality_hit = false;
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < g.lineality.size(); ++i) {
      lin_vals[i] = row_dot(a, row, g.lineality[i]);
      if (lin_vals[i] != 0 && !lineality_hit) {
        lineality_hit = true;
        pivot = i;
      }
    }

    if (lineality_hit) {
      // Slide everything into the constraint hyperplane along the pivot
      // direction; the pivot itself survives as the ray into the halfspace.
      VecZ ell = g.lineality[pivot];
      Rat ell_val = lin_vals[pivot];
      if (ell_val > 0) {
        for (auto& c : ell) c = -c;
        ell_val = -ell_val;
      }
      std::vector<VecZ> new_lineality;
      for (std::size_t i = 0; i < g.lineality.size(); ++i) {
        if (i == pivot) continue;
        VecQ v(dim);
        for (std::size_t j = 0; j < dim; ++j)
          v[j] = Rat(g.lineality[i][j]) - (lin_vals[i] / ell_val) * Rat(ell[j]);
        new_lineality.push_back(primitive_direction(v));
      }
      for (auto& r : g.rays) {
        const Rat rv = row_dot(a, row, r);
        if (rv == 0) continue;
        VecQ v(dim);
        for (std::size_t j = 0; j < dim; ++j)
          v[j] = Rat(r[j]) - (rv / ell_val) * Rat(ell[j]);
        r = primitive_direction(v);
      }
      g.rays.push_back(std::move(ell));
      g.lineality = std::move(new_lineality);
    } else {
      std::vector<VecZ> keep, plus, minus;
      std::vector<Rat> plus_v, minus_v;
      for (auto& r : g.rays) {
        const Rat rv = row_dot(a, row, r);
        if (rv == 0) {
          keep.push_back(std::move(r));
        } else if (rv > 0) {
          plus.push_back(std::move(r));
          plus_v.push_back(rv);
        } else {
          minus.push_back(std::move(r));
          minus_v.push_back(rv);
        }
      }
      for (std::size_t p = 0; p < plus.size(); ++p)
        for (std::size_t m = 0; m < minus.size(); ++m)
          keep.push_back(combine(plus_v[p], minus[m], minus_v[m], plus[p]));
      for (auto& r : minus) keep.push_back(std::move(r));
      g.rays = std::move(keep);
    }

    prune_rays(a, row + 1, g.lineality.size(), g.rays);
  }

  for (auto& l : g.lineality) l = primitive_direction(to_rational(l));
  std::sort(g.rays.begin(), g.rays.end());
  std::sort(g.lineality.begin(), g.lineality.end());
  return g;
}

PolyhedronGenerators dd_polyhedron(const MatQ& a, const VecQ& b) {
  if (a.rows != b.size()) throw DimensionMismatchError("constraint rows != bounds");
  const std::size_t dim = a.cols;

  // Homogenize: rows (−b_i, a_i) for a_i·x ≤ b_i·t, preceded by t ≥ 0.
  MatQ h(a.rows + 1, dim + 1);
  h.at(0, 0) = Rat(-1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    h.at(i + 1, 0) = -b[i];
    for (std::size_t j = 0; j < dim; ++j) h.at(i + 1, j + 1) = a.at(i, j);
  }

  const ConeGenerators cone = dd_cone(h);
  PolyhedronGenerators out;
  for (const auto& l : cone.lineality)
    out.recession.lineality.push_back(VecZ(l.begin() + 1, l.end()));
  for (const auto& r : cone.rays) {
    if (r[0] > 0) {
      out.feasible = true;
      // t-positive rays are extreme points only when no line is present.
      if (cone.lineality.empty()) {
        VecQ v(dim);
        for (std::size_t j = 0; j < dim; ++j) v[j] = Rat(r[j + 1]) / Rat(r[0]);
        out.vertices.push_back(std::move(v));
      }
    } else {
      out.recession.rays.push_back(VecZ(r.begin() + 1, r.end()));
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.recession.rays.begin(), out.recession.rays.end());
  std::sort(out.recession.lineality.begin(), out.recession.lineality.end());
  return out;
}

std::vector<VecQ> vertices_bruteforce(const MatQ& a, const VecQ& b) {
  const std::size_t dim = a.cols;
  const std::size_t m = a.rows;
  std::vector<VecQ> out;
  if (m < dim) return out;

  std::vector<std::vector<std::size_t>> subsets;
  // std::prev_permutation enumerates all dim-subsets of {0..m-1}.
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(dim), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < m; ++i)
      if (mask[i]) s.push_back(i);
    subsets.push_back(std::move(s));
  } while (std::prev_permutation(mask.begin(), mask.end()));

  std::set<VecQ> seen;
  for (const auto& s : subsets) {
    MatQ sys(dim, dim);
    VecQ rhs(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t j = 0; j < dim; ++j) sys.at(r, j) = a.at(s[r], j);
      rhs[r] = b[s[r]];
    }
    auto x = solve_square(std::move(sys), std::move(rhs));
    if (!x) continue;
    bool feasible = true;
    for (std::size_t i = 0; i < m && feasible; ++i)
      if (row_dot(a, i, *x) > b[i]) feasible = false;
    if (feasible && seen.insert(*x).second) out.push_back(std::move(*x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool in_cone(const std::vector<VecZ>& generators, const VecZ& g) {
  if (is_zero(g)) return true;
  const std::size_t dim = g.size();
  const std::size_t n = generators.size();
  const std::size_t pick = std::min(dim, n);

  // Caratheodory: g in cone(generators) iff some subset of size <= dim
  // carries it with nonnegative coefficients.
  std::vector<std::size_t> stack;
  std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
    if (!stack.empty()) {
      // Exact elimination on the augmented system [generators | g]; a
      // full-column-rank subset with nonnegative coefficients certifies
      // membership.
      MatQ aug(dim, stack.size() + 1);
      for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < stack.size(); ++j)
          aug.at(i, j) = Rat(generators[stack[j]][i]);
        aug.at(i, stack.size()) = Rat(g[i]);
      }
      const std::size_t cols = stack.size();
      std::size_t r = 0;
      std::vector<std::size_t> pivots;
      for (std::size_t c = 0; c < cols && r < dim; ++c) {
        std::size_t p = r;
        while (p < dim && aug.at(p, c) == 0) ++p;
        if (p == dim) continue;
        for (std::size_t j = 0; j <= cols; ++j) std::swap(aug.at(r, j), aug.at(p, j));
        const Rat inv = Rat(1) / aug.at(r, c);
        for (std::size_t j = c; j <= cols; ++j) aug.at(r, j) *= inv;
        for (std::size_t i = 0; i < dim; ++i) {
          if (i == r || aug.at(i, c) == 0) continue;
          const Rat f = aug.at(i, c);
          for (std::size_t j = c; j <= cols; ++j) aug.at(i, j) -= f * aug.at(r, j);
        }
        pivots.push_back(c);
        ++r;
      }
      bool consistent = true;
      for (std::size_t i = r; i < dim; ++i)
        if (aug.at(i, cols) != 0) consistent = false;
      if (consistent && pivots.size() == cols) {
        bool nonneg = true;
        for (std::size_t j = 0; j < cols; ++j)
          if (aug.at(j, cols) < 0) nonneg = false;
        if (nonneg) return true;
      }
    }
    if (stack.size() == pick) return false;
    for (std::size_t i = start; i < n; ++i) {
      stack.push_back(i);
      if (search(i + 1)) return true;
      stack.pop_back();
    }
    return false;
  };
  return search(0);
}

bool cone_equal(const ConeGenerators& a, const ConeGenerators& b) {
  auto all_generators = [](const ConeGenerators& c) {
    std::vector<VecZ> g = c.rays;
    for (const auto& l : c.lineality) {
      g.push_back(l);
      VecZ neg(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
      g.push_back(std::move(neg));
    }
    return g;
  };
  const auto ga = all_generators(a);
  const auto gb = all_generators(b);
  for (const auto& g : ga)
    if (!in_cone(gb, g)) return false;
  for (const auto& g : gb)
    if (!in_cone(ga, g)) return false;
  return true;
}

}  // namespace bmoment
