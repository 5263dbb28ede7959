#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "specinv/intmatrix.hpp"

namespace specinv {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A finitely generated abelian compact Lie group T^rank x C_{d1} x ... x
/// C_{dk}, with d1 | d2 | ... | dk and every di >= 2. Stored through its
/// Pontryagin dual Z^rank x Z/d1 x ... x Z/dk, presented as Z^m modulo the
/// diagonal relation lattice, m = rank + k.
struct FgAbGroup {
  int rank = 0;
  std::vector<Int> torsion;

  FgAbGroup() = default;
  FgAbGroup(int r, std::vector<Int> t);

  int ambient_dim() const { return rank + static_cast<int>(torsion.size()); }
  bool is_finite() const { return rank == 0; }
  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  Int order() const;  // finite groups only
  IntMatrix relation_lattice() const;

  bool operator==(const FgAbGroup& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  std::string to_string() const;
};

FgAbGroup cyclic_group(const Int& n);
FgAbGroup elementary_abelian(long p, int r);

/// A closed subgroup B of the ambient group A, stored dually: `lattice` is
/// the column-HNF lattice K_B = ker(A* -> B*) inside Z^m, always containing
/// the ambient relation lattice. Equality of subgroups is equality of the
/// canonical matrices.
struct Subgroup {
  FgAbGroup ambient;
  IntMatrix lattice;

  bool operator==(const Subgroup& o) const {
    return ambient == o.ambient && matrix_eq(lattice, o.lattice);
  }
};

/// g: source -> target, stored through the dual map g*: target* -> source*
/// on ambient coordinates (dual_matrix is m_source x m_target).
struct Homomorphism {
  FgAbGroup source, target;
  IntMatrix dual_matrix;
};

struct SnfTriple {
  IntMatrix U, D, V;
};

Subgroup subgroup_from_generators(const FgAbGroup& A, const IntMatrix& gens);
Subgroup full_subgroup(const FgAbGroup& A);     // B = A
Subgroup trivial_subgroup(const FgAbGroup& A);  // B = 1

bool is_subgroup(const Subgroup& b1, const Subgroup& b2);

/// Invariant factors (zeros marking free summands) and an adapted basis of
/// the quotient lattice(G)/lattice(S), with S a sublattice of G. basis
/// columns live in the common ambient Z^m and basis_i has order factors[i]
/// (order 0 = infinite) in the quotient.
struct LatticeQuotient {
  std::vector<Int> factors;
  IntMatrix basis;
};
LatticeQuotient present_lattice_quotient(const IntMatrix& G, const IntMatrix& S);

/// B2/B1 for B1 <= B2, computed as the Pontryagin dual of K_{B1}/K_{B2}.
FgAbGroup quotient_group(const Subgroup& b1, const Subgroup& b2);

int rank_p_pi0(const FgAbGroup& G, long p);
bool is_pi0_p_group(const FgAbGroup& G, long p);

/// All closed subgroups of a finite A, canonical, sorted by (order, lattice).
std::vector<Subgroup> enumerate_subgroups(const FgAbGroup& A);

bool hom_is_well_defined(const Homomorphism& g);
bool hom_is_surjective(const Homomorphism& g);
Homomorphism compose(const Homomorphism& g, const Homomorphism& h);  // h after g
Homomorphism identity_hom(const FgAbGroup& A);

/// Image g(B) as a canonical subgroup of the target, via
/// K_{g(B)} = (g*)^{-1}(K_B).
Subgroup image_subgroup(const Homomorphism& g, const Subgroup& B);

/// Same as image_subgroup but insists that g is surjective.
Subgroup pushforward_subgroup(const Homomorphism& g, const Subgroup& B);

/// B presented as an abstract group together with the inclusion B -> A
/// (dually, the projection A* -> B*).
struct SubgroupStructure {
  FgAbGroup group;
  Homomorphism inclusion;  // source = group, target = ambient of B
};
SubgroupStructure abstract_subgroup(const Subgroup& B);

/// C <= B <= A reinterpreted as a subgroup of the abstract model of B.
Subgroup restrict_subgroup(const SubgroupStructure& b, const Subgroup& C);

/// Number of p-torsion invariant factors of (the p-part of) a finite group;
/// for subgroups of C_p^k this is the rank.
int p_rank(const FgAbGroup& G, long p);

}  // namespace specinv
