#include "bmoment/lattice.hpp"

#include <functional>

#include "bmoment/errors.hpp"

namespace bmoment {

LatticeVector::LatticeVector(VecZ c) : coords(std::move(c)) {
  if (coords.empty()) throw DimensionMismatchError("lattice vector needs dimension >= 1");
  primitive = content(coords) == 1;
}

// Empty coordinates are allowed: t_Z* is zero-dimensional when k = 1.
Covector::Covector(VecQ c) : coords(std::move(c)) {}

bool KernelLattice::operator==(const KernelLattice& o) const {
  if (ambient_dim != o.ambient_dim || basis.size() != o.basis.size()) return false;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!(basis[i] == o.basis[i])) return false;
  return true;
}

Rat pairing(const LatticeVector& x, const Covector& xi) {
  if (x.dim() != xi.dim()) throw DimensionMismatchError("pairing dimension mismatch");
  return dot(x.coords, xi.coords);
}

KernelLattice kernel_lattice(const Covector& v) {
  const std::size_t k = v.dim();
  KernelLattice out;
  out.ambient_dim = k;

  if (v.zero()) {
    for (std::size_t i = 0; i < k; ++i) {
      VecZ e(k, Int(0));
      e[i] = 1;
      out.basis.emplace_back(std::move(e));
    }
    return out;
  }

  // Primitive integer representative of the same hyperplane.
  const VecZ w = primitive_direction(v.coords);

  // Smith form of the 1 x k matrix [w]: w * V = (1, 0, ..., 0), so columns
  // 2..k of V span the (saturated) kernel sublattice.
  MatZ m(1, k);
  for (std::size_t j = 0; j < k; ++j) m.at(0, j) = w[j];
  const SmithResult snf = smith_normal_form(m);

  std::vector<VecZ> rows;
  for (std::size_t j = 1; j < k; ++j) {
    VecZ col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = snf.v.at(i, j);
    rows.push_back(std::move(col));
  }
  for (auto& r : hermite_canonical_rows(std::move(rows)))
    out.basis.emplace_back(std::move(r));
  return out;
}

namespace {

// Enumerates X with |X|_1 == budget in lexicographic order, stopping when
// the visitor returns true.
bool walk_l1_sphere(VecZ& x, std::size_t pos, long long budget,
                    const std::function<bool(const VecZ&)>& visit) {
  if (pos + 1 == x.size()) {
    for (long long last : budget == 0 ? std::vector<long long>{0}
                                      : std::vector<long long>{-budget, budget}) {
      x[pos] = last;
      if (visit(x)) return true;
    }
    return false;
  }
  for (long long c = -budget; c <= budget; ++c) {
    x[pos] = c;
    if (walk_l1_sphere(x, pos + 1, budget - std::llabs(c), visit)) return true;
  }
  return false;
}

}  // namespace

LatticeVector primitive_complement(const Covector& v) {
  if (v.zero()) throw ValidationError("zero covector admits no primitive complement");
  const std::size_t k = v.dim();
  const VecZ w = primitive_direction(v.coords);

  // <X, w> = 1 already forces X primitive and [kernel basis | X] unimodular,
  // because the kernel is saturated and w is primitive.  The first such X in
  // (|X|_1, lex) order is the canonical choice.
  // A solution with |X|_1 <= sum|w_i| always exists (Bezout), so the search
  // terminates well before that bound in practice.
  long long bound = 1;
  for (const Int& c : w) bound += static_cast<long long>(abs(c).convert_to<long long>());

  VecZ x(k, Int(0));
  VecZ found;
  for (long long budget = 1; budget <= bound && found.empty(); ++budget) {
    walk_l1_sphere(x, 0, budget, [&](const VecZ& cand) {
      if (dot(cand, w) == 1) {
        found = cand;
        return true;
      }
      return false;
    });
  }
  if (found.empty()) throw Error("primitive complement search exhausted its bound");
  LatticeVector out(std::move(found));
  out.primitive = true;
  return out;
}

bool in_kernel(const LatticeVector& x, const Covector& v) {
  return pairing(x, v) == 0;
}

std::string to_string(const Covector& xi) {
  std::string s = "(";
  for (std::size_t i = 0; i < xi.coords.size(); ++i) {
    if (i) s += ", ";
    s += format_rational(xi.coords[i]);
  }
  return s + ")";
}

std::string to_string(const LatticeVector& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) s += ", ";
    s += x.coords[i].str();
  }
  return s + ")";
}

}  // namespace bmoment
