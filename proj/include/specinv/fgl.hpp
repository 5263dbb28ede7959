#pragma once

#include <string>
#include <vector>

#include "specinv/extnat.hpp"
#include "specinv/series.hpp"

namespace specinv {

/// A (commutative, one-dimensional) formal group law F(x, y) over `ring`,
/// stored exactly through total degree D. Unit and commutativity axioms are
/// checked whenever a law is assembled; the associativity residual is checked
/// by fgl_axioms_check (and by the constructors of the built-in models).
struct FGL {
  VRing ring;
  int D = 0;
  Series2<VPoly> F;
};

struct AxiomCheck {
  bool ok = true;
  std::string axiom;   // empty when ok; else "unit" / "commutativity" / "associativity"
  int i = 0, j = 0, k = 0;  // witnessing multidegree when !ok
  explicit operator bool() const { return ok; }
  std::string to_string() const;
};

/// Assemble a law, checking the unit and commutativity axioms (throws).
FGL make_fgl(const VRing& ring, int D, Series2<VPoly> F);

/// Full axiom check including the three-variable associativity residual
/// through total degree D.
AxiomCheck fgl_axioms_check(const FGL& F);

/// [n]-series; negative n via the formal inverse.
Series1<VPoly> n_series(const FGL& F, long n);

/// Formal inverse iota with F(x, iota(x)) = 0 through degree D.
Series1<VPoly> formal_inverse(const FGL& F);

/// The universal p-typical formal group law over Z_(p)[v_1..v_N], truncated
/// at total degree D, built from the logarithm recursion
/// p*m_n = sum_{0<=i<n} m_i v_{n-i}^{p^i}, m_0 = 1 (generators normalized up
/// to unit and decomposables mod I_n). Throws on p-integrality failure.
FGL universal_p_typical(long p, int D, int N);

/// Base change to the quotient by I_n = (p, v_1, ..., v_{n-1}); n = 0 is the
/// identity. Re-checks unit and commutativity.
FGL reduce_mod_In(const FGL& F, int n);

/// Coefficient-wise base change to a compatible ring.
FGL change_ring(const FGL& F, const VRing& ring);

/// Exact series division: returns c with a = b*c through degree
/// a.D - deg_low(b); throws NotDivisible with the witnessing degree.
Series1<VPoly> exact_divide(const Series1<VPoly>& a, const Series1<VPoly>& b);

/// psi_{p^k}^{(n)} = [p]([p^{k-1}](e)) / ([p^{k-1}](e))^{p^n} over the
/// universal p-typical law reduced mod I_n.
Series1<VPoly> psi_series(long p, int n, int k, int D);

/// A level structure on C_p^r: Euler-class assignment V -> e_V for the p^r
/// characters of (Z/p)^r, indexed by base-p digit tuples; e[0] (the trivial
/// character) must be 0.
struct LevelData {
  long p = 2;
  int r = 0;
  std::vector<VPoly> e;
};

/// Checks F(e_V, e_W) = e_{V+W} for all characters (exactly, on constants).
bool level_is_homomorphism(const FGL& F, const LevelData& lv);

/// vbar for the level: [p]_F(y) / prod_V F(e_V, y).
Series1<VPoly> level_vbar(const FGL& F, const LevelData& lv);

/// Multiplicative model x + y - sign*x*y over Z with the C_2 Euler class
/// sign*2 (a root of the [2]-series; Z/(e) = Z/2).
struct GmC2 {
  FGL law;
  Int euler;
};
GmC2 gm_c2(int sign, int D = 8);

struct HeightResult {
  Ht height;               // 0,1,2,... or HT_INF
  bool truncation_caveat;  // set when "infinite" only means "to degree D"
};

/// Height from the [p]-series: least n with a nonzero x^{p^n} coefficient and
/// all lower coefficients zero. Works for any coefficient type with is_zero.
template <class R>
HeightResult pseries_height(const Series1<R>& ps, long p) {
  int low = -1;
  for (const auto& [k, v] : ps.c)
    if (!is_zero(v)) {
      low = k;
      break;
    }
  if (low < 0) return {HT_INF, true};
  int n = 0;
  for (long d = 1; d < low; d *= p) ++n;
  long pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  if (pn != low) throw DomainError("[p]-series lowest degree is not a p-power");
  return {n, false};
}

HeightResult fgl_height(const FGL& F, long p);

/// The Honda formal group law of height n over Z_(p) (log = sum x^{p^(ni)}/p^i),
/// with [p](x) = x^{p^n} after reduction mod p.
FGL honda_fgl(long p, int n, int D);

FGL multiplicative_fgl(const VRing& ring, int D);
FGL additive_fgl(const VRing& ring, int D);

/// Blueshift certificate for psi_{p^k}^{(n-1)} over E = F_p[v_{n-1}, v_n^{+-1}]
/// (for n = 1: the multiplicative model over Z_(p), with v_0 = p).
struct BlueshiftReport {
  long p = 2;
  int n = 1, k = 1, D = 0;
  VPoly constant_term;
  bool constant_is_unit_times_vnm1 = false;
  VPoly lowest_coeff_mod_vnm1;  // of psi mod v_{n-1}
  int lowest_deg_mod_vnm1 = 0;
  bool lowest_is_unit = false;  // unit after inverting the top generator
  int height_drop = 1;
  std::string note;
  std::string to_string() const;
};

BlueshiftReport blueshift_report(long p, int n, int k, int D);

}  // namespace specinv
