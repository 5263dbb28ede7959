#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace Eigen {
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  using Real = mpz_class;
  using NonInteger = mpz_class;
  using Nested = mpz_class;
  using Literal = long;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 60,
    MulCost = 60
  };
};
}  // namespace Eigen

namespace specinv {

using Int = mpz_class;
using IntMatrix = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

bool matrix_eq(const IntMatrix& a, const IntMatrix& b);

/// U*M*V = D with U, V unimodular and D diagonal satisfying the
/// divisibility chain d1 | d2 | ... (nonnegative diagonal entries).
/// Pivot rule: smallest absolute value, ties broken row-major, so the
/// output is deterministic.
struct SnfResult {
  IntMatrix U, D, V;
};
SnfResult smith_normal_form(const IntMatrix& M);

/// Column-style Hermite normal form of the lattice spanned by the columns
/// of M: pivot rows strictly increasing, pivots positive, entries to the
/// left of a pivot reduced into [0, pivot). Zero columns are dropped, so
/// the result has exactly rank(M) columns. Canonical: two column spans are
/// equal iff their HNFs are identical.
IntMatrix hermite_normal_form(const IntMatrix& M);

/// Coordinates of x in the lattice spanned by the columns of an HNF
/// matrix H, or nullopt if x is not in the lattice.
std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& H,
                                                 const IntVector& x);

bool lattice_contains(const IntMatrix& H, const IntVector& x);

/// Column lattice of `sub` contained in column lattice of `sup` (both HNF).
bool lattice_subset(const IntMatrix& sub, const IntMatrix& sup);

/// Basis of the integer kernel {x : M x = 0}, as columns.
IntMatrix kernel_basis(const IntMatrix& M);

/// HNF basis of {x : M x in lattice(G)}.
IntMatrix lattice_preimage(const IntMatrix& M, const IntMatrix& G);

Int determinant(const IntMatrix& M);

/// Inverse of a square matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& M);

}  // namespace specinv
