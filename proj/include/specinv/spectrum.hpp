#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specinv/abgroup.hpp"
#include "specinv/extnat.hpp"

namespace specinv {

/// Reference to a subgroup of the ambient group. Finite contexts index into
/// the enumerated lattice; circle contexts use cyclic_m (m >= 1 for C_m, 0
/// for the full circle T).
struct SubRef {
  int index = -1;
  long cyclic_m = 0;

  static SubRef finite(int i) { return SubRef{i, 0}; }
  static SubRef circle(long m) { return SubRef{-1, m}; }
  static SubRef circle_T() { return SubRef{-1, 0}; }

  bool is_circle() const { return index < 0; }
  bool is_T() const { return index < 0 && cyclic_m == 0; }
  bool operator==(const SubRef& o) const {
    return index == o.index && cyclic_m == o.cyclic_m;
  }
  bool operator<(const SubRef& o) const {
    return index != o.index ? index < o.index : cyclic_m < o.cyclic_m;
  }
  std::string to_string() const;
};

/// I_{B,n}: the height-n invariant prime at the subgroup B. n >= 0 or HT_INF.
struct PrimePoint {
  SubRef sub;
  Ht n = 0;
  bool operator==(const PrimePoint& o) const { return sub == o.sub && n == o.n; }
  bool operator<(const PrimePoint& o) const {
    return sub == o.sub ? n < o.n : sub < o.sub;
  }
};

/// The subgroup lattice of the ambient group with the pairwise data the
/// inclusion law consumes, all precomputed.
struct FiniteLattice {
  std::vector<Subgroup> subgroups;
  // leq[i][j]: B_i <= B_j. ptoral/prank only meaningful where leq holds.
  std::vector<std::vector<char>> leq;
  std::vector<std::vector<char>> ptoral;  // pi0(B_j/B_i) a p-group
  std::vector<std::vector<int>> prank;    // rank_p of pi0(B_j/B_i)
};

struct SpecContext {
  FgAbGroup group;
  long prime = 2;
  bool circle = false;
  FiniteLattice lat;  // finite contexts only

  int size() const { return static_cast<int>(lat.subgroups.size()); }
  int find(const Subgroup& B) const;  // index in lat, throws if absent
};

SpecContext make_finite_context(const FgAbGroup& A, long p);
SpecContext make_circle_context(long p);

/// Boundary function f: Sub(A) -> {-1} u N u {inf}. Finite contexts store one
/// value per lattice index. Circle functions are locally constant: a value at
/// T, a generic value shared by cofinitely many C_m (forced equal to at_T),
/// and finitely many exceptions.
struct AdmissibleFn {
  bool circle = false;
  std::vector<Ht> values;  // finite case

  Ht at_T = HT_INF;
  Ht generic = HT_INF;
  std::map<long, Ht> exceptions;

  static AdmissibleFn finite_fn(std::vector<Ht> v);
  static AdmissibleFn circle_fn(Ht at_T, Ht generic, std::map<long, Ht> exc);

  Ht at(const SubRef& s) const;
  bool operator==(const AdmissibleFn& o) const;
  std::string to_string(const SpecContext& ctx) const;
};

struct AdmissibleCheck {
  bool ok = true;
  // On violation: f(sub) > f(super) + rank, for the p-toral pair sub <= super.
  SubRef sub, super;
  Ht deficit = 0;
  explicit operator bool() const { return ok; }
};

/// V_f = {I_{B,n} : n > f(B)} for admissible locally constant f.
struct ClosedSet {
  AdmissibleFn boundary;
  bool contains(const SpecContext& ctx, const PrimePoint& P) const;
};

/// I_{B1,n1} <= I_{B2,n2} at the context prime: B2 <= B1 with p-group
/// component group, and n2 >= n1 + rank_p(pi0(B1/B2)).
bool includes(const SpecContext& ctx, const PrimePoint& P1, const PrimePoint& P2);

/// Two-prime inclusion criterion for I_{B,p,n} <= I_{B',q,n'}: subgroup and
/// rank conditions at q, plus p = q or n = 0.
bool includes_crossprime(const FgAbGroup& A, const Subgroup& B, long p, Ht n,
                         const Subgroup& Bp, long q, Ht np);

AdmissibleCheck is_admissible(const SpecContext& ctx, const AdmissibleFn& f);

/// Smallest closed set containing the points: relax f(B') <= f(B) + rank over
/// p-toral pairs until stable.
ClosedSet closure(const SpecContext& ctx, const std::vector<PrimePoint>& points);

ClosedSet closed_union(const SpecContext& ctx, const ClosedSet& a, const ClosedSet& b);
ClosedSet closed_intersection(const SpecContext& ctx, const ClosedSet& a,
                              const ClosedSet& b);

/// Every admissible function with values in {-1..H, inf}; finite contexts only.
std::vector<AdmissibleFn> enumerate_admissible(const SpecContext& ctx, int H);

/// Full includes() table over the points {(B, n) : n in {0..H, inf}}.
struct SpecPoset {
  std::vector<PrimePoint> points;
  std::vector<std::vector<char>> leq;
};
SpecPoset specialization_order(const SpecContext& ctx, int H);

}  // namespace specinv
