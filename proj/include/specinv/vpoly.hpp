#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specinv/abgroup.hpp"

namespace specinv {

struct NotDivisible : DomainError {
  int degree;
  explicit NotDivisible(int d)
      : DomainError("not divisible (witness degree " + std::to_string(d) + ")"),
        degree(d) {}
};

/// Coefficient ring descriptor: polynomials in v_1..v_nvars with p-local
/// rational coefficients (char_mod = 0) or coefficients mod char_mod.
/// `killed` masks variables set to zero, `inverted` marks Laurent variables.
/// The distinguished prime p is the one with v_0 = p; plain Z/Q rings use 0.
struct VRing {
  long p = 0;
  long char_mod = 0;
  int nvars = 0;
  unsigned killed = 0;
  unsigned inverted = 0;

  bool operator==(const VRing&) const = default;
  bool var_killed(int i) const { return killed >> (i - 1) & 1; }    // i in 1..nvars
  bool var_inverted(int i) const { return inverted >> (i - 1) & 1; }
  std::string to_string() const;
};

/// Sparse multivariate (Laurent) polynomial over VRing; the universal zero is
/// the default-constructed value, compatible with every ring.
class VPoly {
 public:
  using Monomial = std::vector<int>;  // exponents of v_1..v_nvars

  VPoly() = default;
  VPoly(const VRing& r, const mpq_class& c);
  static VPoly var(const VRing& r, int i, long e = 1);  // v_i^e
  static VPoly term(const VRing& r, Monomial m, const mpq_class& c);

  const VRing& ring() const { return r_; }
  const std::map<Monomial, mpq_class>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // throws unless constant
  bool single_term() const { return t_.size() == 1; }

  /// Unit test: a single term supported on inverted variables with an
  /// invertible coefficient (nonzero mod a prime char; p-local unit in char 0).
  bool is_unit() const;

  /// Division by a single-term polynomial; nullopt when a resulting exponent
  /// would go negative on a non-inverted variable.
  std::optional<VPoly> divided_by(const VPoly& b) const;

  /// Coefficient-wise image in `nr` (same variables; possibly more killed,
  /// different characteristic).
  VPoly reduced(const VRing& nr) const;

  friend VPoly operator+(const VPoly& a, const VPoly& b);
  friend VPoly operator-(const VPoly& a, const VPoly& b);
  friend VPoly operator*(const VPoly& a, const VPoly& b);
  VPoly operator-() const;
  bool operator==(const VPoly& o) const;

  std::string to_string() const;

 private:
  VRing r_;
  std::map<Monomial, mpq_class> t_;

  void normalize();
  static const VRing& common_ring(const VPoly& a, const VPoly& b);
};

inline bool is_zero(const VPoly& p) { return p.is_zero(); }

}  // namespace specinv
