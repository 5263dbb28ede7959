#pragma once

#include <random>
#include <string>
#include <vector>

#include "specinv/spectrum.hpp"

namespace specinv {

/// Type value of a contractible geometric fixed point: a distinct top value,
/// strictly above every finite type and above infinity, so that pointwise max
/// absorbs it (smash) and pointwise min discards it (wedge).
constexpr Ht TY_TRIVIAL = 1 << 29;

inline bool ty_is_trivial(Ht t) { return t >= TY_TRIVIAL; }

/// t + r in the type scale: Trivial is absorbing, infinity is absorbing,
/// finite values add.
inline Ht ty_add(Ht t, int r) { return ty_is_trivial(t) ? t : ht_add(t, r); }

/// Chromatic type function of a compact-spectrum model: a locally
/// constant map Sub(A) -> N u {inf} u {Trivial}, stored like AdmissibleFn.
struct TypeFunction {
  bool circle = false;
  std::vector<Ht> values;  // finite case, one per lattice index

  Ht at_T = 0;
  Ht generic = 0;
  std::map<long, Ht> exceptions;

  static TypeFunction finite_ty(std::vector<Ht> v);
  static TypeFunction circle_ty(Ht at_T, Ht generic, std::map<long, Ht> exc);

  Ht at(const SubRef& s) const;
  bool operator==(const TypeFunction& o) const;
  std::string to_string(const SpecContext& ctx) const;
};

/// Realizable = locally constant + admissible, where Trivial acts as the top
/// value: a Trivial fixed point forces Trivial on every p-toral supergroup
/// (a nontrivial one there would put height-infinity points into the support
/// while excluding their specializations).
struct RealizableCheck {
  bool ok = true;
  SubRef sub, super;
  Ht bound = 0;  // largest admissible value at `sub` given the value at `super`
  explicit operator bool() const { return ok; }
};
RealizableCheck is_realizable_type(const SpecContext& ctx, const TypeFunction& t);

/// supp(t) = {(B, n) : n >= t(B)}, Trivial contributing nothing; returned as
/// the closed set with boundary t - 1 (Trivial -> inf boundary). Asserts
/// closedness through the admissibility of the boundary.
ClosedSet support_of(const SpecContext& ctx, const TypeFunction& t);

/// Pointwise max (type of a smash product) and min (type of a wedge).
TypeFunction smash(const TypeFunction& t1, const TypeFunction& t2);
TypeFunction wedge(const TypeFunction& t1, const TypeFunction& t2);

/// Subadditivity checker for a cofiber triple X -> Y -> Z:
/// supp(tx) subset of supp(ty) u supp(tz). (The cofiber type itself is not
/// determined by the other two, so no cofiber operation is provided.)
bool cofiber_subadditive(const SpecContext& ctx, const TypeFunction& tx,
                         const TypeFunction& ty, const TypeFunction& tz);

/// Geometric fixed points: reindex t along the bijection between subgroups
/// of A/B and subgroups of A containing B.
struct PhiResult {
  SpecContext ctx;           // context over A/B at the same prime
  TypeFunction t;            // reindexed type function
  Homomorphism projection;   // A -> A/B
  std::vector<int> preimage; // lattice index in A of q^{-1}(S_j), per j
};
PhiResult geom_fixed_points(const SpecContext& ctx, const TypeFunction& t,
                            const Subgroup& B);

/// Both containment orders on the points {(B, n) : n in 0..H}: the invariant
/// prime order from includes(), and the Balmer order computed from the basis
/// of closed sets {(B, n) : n >= f(B)} over admissible f. order_reversed
/// certifies that the two are mutually inverse.
struct BalmerCompare {
  std::vector<PrimePoint> points;
  std::vector<std::vector<char>> inv_leq;     // inv_leq[i][j]: I_i included in I_j
  std::vector<std::vector<char>> balmer_leq;  // balmer_leq[i][j]: P_j included in P_i
  bool order_reversed = false;
  std::string certificate;
};
BalmerCompare balmer_compare(const SpecContext& ctx, int H);

/// Seeded random realizable type function with finite values <= maxv
/// (plus inf and Trivial), repaired to admissibility deterministically.
TypeFunction random_type_function(const SpecContext& ctx, std::mt19937_64& rng,
                                  int maxv);

}  // namespace specinv
