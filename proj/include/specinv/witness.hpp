#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specinv/spectrum.hpp"

namespace specinv {

/// Height interval [lo, hi]: the engine knows the element's height at a
/// subgroup only up to this range. Fully determined means lo == hi.
struct HtIv {
  Ht lo = -1, hi = -1;
  bool exact() const { return lo == hi; }
  bool operator==(const HtIv& o) const { return lo == o.lo && hi == o.hi; }
};

/// Interval-valued height function on the subgroup lattice of an expression's
/// ambient group; same finite/circle split as AdmissibleFn.
struct HeightFn {
  bool circle = false;
  std::vector<HtIv> values;  // finite, indexed by the ambient context lattice

  HtIv at_T, generic;
  std::map<long, HtIv> exceptions;

  HtIv at(const SubRef& s) const;
};

/// Memoized SpecContexts at a fixed prime, keyed by the (canonical) group.
class ContextCache {
 public:
  explicit ContextCache(long p) : p_(p) {}
  long prime() const { return p_; }
  const SpecContext& get(const FgAbGroup& A);

 private:
  long p_;
  std::map<std::string, SpecContext> ctxs_;
};

/// Symbolic element of L_A (A = expression ambient), never materialized:
/// only its height function is computed.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Zero,     // 0
    One,      // 1
    Vn,       // v_n (v_{-1}=0, v_0=p, v_inf=1)
    EulerV,   // e_V * v_n, V a character of the ambient
    QKiller,  // v_n * g^*(vbar_0^(q)), g: ambient ->> C_q, q != p
    XShift,   // x_m on C_p^{m+1}
    Product,
    Inflate,  // g^*(arg), g: ambient ->> arg ambient
    Restrict, // arg | B, ambient = abstract model of B
    Lift      // any preimage of arg under res to B' <= ambient
  };
  Kind kind = Kind::Zero;
  FgAbGroup ambient;  // rank 1, no torsion = the circle
  Ht n = -1;          // Vn / EulerV / QKiller / XShift(m)
  IntVector V;        // EulerV character (ambient dual coordinates)
  long q = 0;         // QKiller prime
  Homomorphism g;     // QKiller surjection / Inflate map
  Subgroup B;         // Restrict target / Lift source B'
  std::vector<ExprPtr> args;

  std::string to_string() const;
};

ExprPtr expr_zero(const FgAbGroup& A);
ExprPtr expr_one(const FgAbGroup& A);
ExprPtr expr_vn(const FgAbGroup& A, Ht n);
ExprPtr expr_euler_v(const FgAbGroup& A, const IntVector& V, Ht n);
/// g: G ->> C_q (q prime, != evaluation prime), element v_n * g^*(vbar_0^(q)).
ExprPtr expr_qkiller(long q, const Homomorphism& g, Ht n);
/// x_m over C_p^{m+1}; m = -1 gives the zero element over the trivial group.
ExprPtr expr_xshift(long p, Ht m);
ExprPtr expr_product(const FgAbGroup& A, std::vector<ExprPtr> args);
ExprPtr expr_inflate(const Homomorphism& g, ExprPtr e);
ExprPtr expr_restrict(const Subgroup& B, ExprPtr e);
ExprPtr expr_lift(const Subgroup& Bprime, ExprPtr e);

HeightFn expr_height(const ExprPtr& e, ContextCache& cache);

struct WitnessSet {
  std::vector<ExprPtr> elements;
};

/// Pointwise interval max over the set (empty set: constant -1).
HeightFn witness_height(const WitnessSet& W, const SpecContext& ctx,
                        ContextCache& cache);

/// Constructs a witness set whose height collapses exactly onto f.
WitnessSet realize(const SpecContext& ctx, const AdmissibleFn& f,
                   ContextCache& cache);

struct RealizationCheck {
  bool ok = true;
  SubRef where;  // first subgroup where the max fails to collapse onto f
  explicit operator bool() const { return ok; }
};
RealizationCheck verify_realization(const SpecContext& ctx, const AdmissibleFn& f,
                                    const WitnessSet& W, ContextCache& cache);

}  // namespace specinv
