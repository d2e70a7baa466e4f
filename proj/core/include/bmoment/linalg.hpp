#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bmoment/rational.hpp"

namespace bmoment {

using VecZ = std::vector<Int>;
using VecQ = std::vector<Rat>;

/// Dense rational matrix, row-major. Small sizes only.
struct MatQ {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> data;

  MatQ() = default;
  MatQ(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rat(0)) {}

  Rat& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static MatQ from_rows(const std::vector<VecQ>& rs);
  VecQ row(std::size_t i) const;
};

/// Dense integer matrix, row-major.
struct MatZ {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> data;

  MatZ() = default;
  MatZ(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Int(0)) {}

  Int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static MatZ identity(std::size_t n);
  MatQ to_rational() const;
};

Rat dot(const VecQ& a, const VecQ& b);
Rat dot(const VecZ& a, const VecQ& b);
Int dot(const VecZ& a, const VecZ& b);

VecQ add(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const Rat& s, const VecQ& a);
bool is_zero(const VecQ& a);
bool is_zero(const VecZ& a);
VecQ to_rational(const VecZ& a);

/// gcd of all entries, nonnegative; 0 for the zero vector.
Int content(const VecZ& a);

/// Scales a rational vector to the integer vector with coprime entries and
/// the same direction. Zero vector maps to zero.
VecZ primitive_direction(const VecQ& a);

std::size_t rank(MatQ a);
Rat determinant(MatQ a);

/// Solves a square system exactly. nullopt when singular.
std::optional<VecQ> solve_square(MatQ a, VecQ b);

/// Basis of {x : a x = 0}.
std::vector<VecQ> nullspace(MatQ a);

/// Smith normal form: u * a * v = d with u, v unimodular and d diagonal.
struct SmithResult {
  MatZ u, d, v;
};
SmithResult smith_normal_form(const MatZ& a);

/// Canonical Hermite row form of the lattice spanned by the given rows:
/// row echelon over Z, positive pivots, entries above each pivot reduced
/// into [0, pivot). Zero rows are dropped. Unique per lattice.
std::vector<VecZ> hermite_canonical_rows(std::vector<VecZ> rows);

}  // namespace bmoment
