#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bmoment/linalg.hpp"

// Everything in this header is an immutable value with pure operations over
// exact rationals; unsynchronized concurrent use is safe.

namespace bmoment {

/// Element of the integer lattice Z^k inside the Lie algebra t.
struct LatticeVector {
  VecZ coords;
  bool primitive = false;  // when set, certifies gcd(coords) == 1

  LatticeVector() = default;
  explicit LatticeVector(VecZ c);

  std::size_t dim() const { return coords.size(); }
  bool operator==(const LatticeVector& o) const { return coords == o.coords; }
};

/// Element of t*, exact rational coordinates.
struct Covector {
  VecQ coords;

  Covector() = default;
  explicit Covector(VecQ c);

  std::size_t dim() const { return coords.size(); }
  bool zero() const { return is_zero(coords); }
  bool operator==(const Covector& o) const { return coords == o.coords; }
};

/// Basis of the sublattice t_{Z'} ∩ Z^k for a weight covector.
struct KernelLattice {
  std::vector<LatticeVector> basis;  // canonical Hermite rows
  std::size_t ambient_dim = 0;

  std::size_t rank() const { return basis.size(); }
  bool operator==(const KernelLattice& o) const;
};

/// Exact pairing <X, xi> between t and t*.
Rat pairing(const LatticeVector& x, const Covector& xi);

/// Saturated kernel {X in Z^k : <X, v> = 0}, canonical basis.
/// v = 0 yields the full rank-k lattice.
KernelLattice kernel_lattice(const Covector& v);

/// The canonical primitive X with <X, v> > 0 that extends any kernel basis
/// to a Z-basis of Z^k.  Ties are broken by smallest coordinate-sum |X|_1,
/// then lexicographically.  Throws on v = 0.
LatticeVector primitive_complement(const Covector& v);

/// True when the integer vector lies in the kernel lattice of v.
bool in_kernel(const LatticeVector& x, const Covector& v);

std::string to_string(const Covector& xi);
std::string to_string(const LatticeVector& x);

}  // namespace bmoment
