#include "bmoment/linalg.hpp"

#include <algorithm>

#include "bmoment/errors.hpp"

namespace bmoment {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatchError("vector dimensions differ");
}

}  // namespace

MatQ MatQ::from_rows(const std::vector<VecQ>& rs) {
  MatQ m(rs.size(), rs.empty() ? 0 : rs.front().size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    require_same_size(rs[i].size(), m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rs[i][j];
  }
  return m;
}

VecQ MatQ::row(std::size_t i) const {
  return VecQ(data.begin() + static_cast<long>(i * cols),
              data.begin() + static_cast<long>((i + 1) * cols));
}

MatZ MatZ::identity(std::size_t n) {
  MatZ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ MatZ::to_rational() const {
  MatQ m(rows, cols);
  for (std::size_t i = 0; i < data.size(); ++i) m.data[i] = Rat(data[i]);
  return m;
}

Rat dot(const VecQ& a, const VecQ& b) {
  require_same_size(a.size(), b.size());
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat dot(const VecZ& a, const VecQ& b) {
  require_same_size(a.size(), b.size());
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

Int dot(const VecZ& a, const VecZ& b) {
  require_same_size(a.size(), b.size());
  Int s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

VecQ add(const VecQ& a, const VecQ& b) {
  require_same_size(a.size(), b.size());
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecQ sub(const VecQ& a, const VecQ& b) {
  require_same_size(a.size(), b.size());
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecQ scale(const Rat& s, const VecQ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

bool is_zero(const VecQ& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

bool is_zero(const VecZ& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

VecQ to_rational(const VecZ& a) {
  VecQ r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

Int content(const VecZ& a) {
  Int g(0);
  for (const Int& x : a) g = boost::multiprecision::gcd(g, x);
  return g < 0 ? Int(-g) : g;
}

VecZ primitive_direction(const VecQ& a) {
  // Clear denominators with their lcm, then divide by the gcd of numerators.
  Int l(1);
  for (const Rat& x : a) l = boost::multiprecision::lcm(l, denominator(x));
  VecZ v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = numerator(a[i]) * (l / denominator(a[i]));
  Int g = content(v);
  if (g == 0) return v;
  for (Int& x : v) x /= g;
  return v;
}

namespace {

// Row echelon with exact arithmetic; returns pivot column per pivot row.
std::vector<std::size_t> echelon(MatQ& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols && r < a.rows; ++c) {
    std::size_t p = r;
    while (p < a.rows && a.at(p, c) == 0) ++p;
    if (p == a.rows) continue;
    for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(r, j), a.at(p, j));
    const Rat inv = Rat(1) / a.at(r, c);
    for (std::size_t j = c; j < a.cols; ++j) a.at(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == r || a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c);
      for (std::size_t j = c; j < a.cols; ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(MatQ a) { return echelon(a).size(); }

Rat determinant(MatQ a) {
  if (a.rows != a.cols) throw DimensionMismatchError("determinant of non-square matrix");
  Rat det(1);
  for (std::size_t c = 0; c < a.cols; ++c) {
    std::size_t p = c;
    while (p < a.rows && a.at(p, c) == 0) ++p;
    if (p == a.rows) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a.at(c, j), a.at(p, j));
      det = -det;
    }
    det *= a.at(c, c);
    const Rat inv = Rat(1) / a.at(c, c);
    for (std::size_t i = c + 1; i < a.rows; ++i) {
      if (a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c) * inv;
      for (std::size_t j = c; j < a.cols; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return det;
}

std::optional<VecQ> solve_square(MatQ a, VecQ b) {
  if (a.rows != a.cols || b.size() != a.rows)
    throw DimensionMismatchError("solve_square shape mismatch");
  const std::size_t n = a.rows;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(c, j), a.at(p, j));
      std::swap(b[c], b[p]);
    }
    const Rat inv = Rat(1) / a.at(c, c);
    for (std::size_t j = c; j < n; ++j) a.at(c, j) *= inv;
    b[c] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a.at(i, c) == 0) continue;
      const Rat f = a.at(i, c);
      for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
      b[i] -= f * b[c];
    }
  }
  return b;
}

std::vector<VecQ> nullspace(MatQ a) {
  const std::size_t n = a.cols;
  const auto pivots = echelon(a);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<VecQ> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    VecQ v(n, Rat(0));
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

void swap_rows(MatZ& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(MatZ& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows; ++i) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] -= q * row[b]
void row_op(MatZ& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t j = 0; j < m.cols; ++j) m.at(a, j) -= q * m.at(b, j);
}
// col[a] -= q * col[b]
void col_op(MatZ& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t i = 0; i < m.rows; ++i) m.at(i, a) -= q * m.at(i, b);
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithResult smith_normal_form(const MatZ& a) {
  SmithResult res{MatZ::identity(a.rows), a, MatZ::identity(a.cols)};
  MatZ& d = res.d;
  const std::size_t steps = std::min(a.rows, a.cols);

  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Bring the absolutely smallest nonzero entry of the trailing block to (t, t).
      std::size_t bi = t, bj = t;
      bool found = false;
      for (std::size_t i = t; i < d.rows; ++i)
        for (std::size_t j = t; j < d.cols; ++j)
          if (d.at(i, j) != 0 && (!found || abs_int(d.at(i, j)) < abs_int(d.at(bi, bj)))) {
            bi = i;
            bj = j;
            found = true;
          }
      if (!found) break;
      if (bi != t) {
        swap_rows(d, t, bi);
        swap_rows(res.u, t, bi);
      }
      if (bj != t) {
        swap_cols(d, t, bj);
        swap_cols(res.v, t, bj);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows; ++i) {
        if (d.at(i, t) == 0) continue;
        const Int q = d.at(i, t) / d.at(t, t);
        row_op(d, i, t, q);
        row_op(res.u, i, t, q);
        if (d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols; ++j) {
        if (d.at(t, j) == 0) continue;
        const Int q = d.at(t, j) / d.at(t, t);
        col_op(d, j, t, q);
        col_op(res.v, j, t, q);
        if (d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility chain: fold any non-divisible trailing entry into row t
      // and restart. |d(t,t)| strictly decreases, so this terminates.
      bool divisible = true;
      for (std::size_t i = t + 1; i < d.rows && divisible; ++i)
        for (std::size_t j = t + 1; j < d.cols && divisible; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            row_op(d, t, i, Int(-1));
            row_op(res.u, t, i, Int(-1));
            divisible = false;
          }
      if (divisible) break;
    }
    if (d.at(t, t) < 0) {
      for (std::size_t j = 0; j < d.cols; ++j) d.at(t, j) = -d.at(t, j);
      for (std::size_t j = 0; j < res.u.cols; ++j) res.u.at(t, j) = -res.u.at(t, j);
    }
  }
  return res;
}

std::vector<VecZ> hermite_canonical_rows(std::vector<VecZ> rows) {
  std::erase_if(rows, [](const VecZ& r) { return is_zero(r); });
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    // Euclid the column below `top` down to a single nonzero entry.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i)
        if (rows[i][c] != 0 &&
            (best == rows.size() || abs_int(rows[i][c]) < abs_int(rows[best][c])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool reduced = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const Int q = rows[i][c] / rows[top][c];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (rows[top][c] == 0) continue;
    if (rows[top][c] < 0)
      for (std::size_t j = 0; j < n; ++j) rows[top][j] = -rows[top][j];
    // Reduce entries above the pivot into [0, pivot).
    for (std::size_t i = 0; i < top; ++i) {
      Int q = rows[i][c] / rows[top][c];
      if (rows[i][c] - q * rows[top][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

}  // namespace bmoment
