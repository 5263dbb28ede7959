#pragma once

#include <algorithm>
#include <string>

namespace specinv {

/// Extended heights: values in {-1} u N u {inf}. HT_INF is absorbing under
/// addition. The plain-N flavor is the subset >= 0.
///
/// HT_OMEGA is an internal boundary value "inf - 1": larger than every finite
/// height, smaller than HT_INF, absorbing under finite addition. A boundary
/// f(B) = HT_OMEGA cuts out exactly the height-inf point over B, which is how
/// closures of height-inf points stay representable. It never appears in a
/// user-supplied height function.
using Ht = int;
inline constexpr Ht HT_INF = 1 << 28;
inline constexpr Ht HT_OMEGA = 1 << 27;

inline bool ht_is_inf(Ht a) { return a >= HT_INF; }
inline bool ht_is_omega(Ht a) { return a >= HT_OMEGA && a < HT_INF; }

inline Ht ht_add(Ht a, Ht b) {
  if (a >= HT_INF || b >= HT_INF) return HT_INF;
  if (a >= HT_OMEGA || b >= HT_OMEGA) return HT_OMEGA;
  return a + b;
}

inline std::string ht_to_string(Ht a) {
  if (ht_is_inf(a)) return "inf";
  if (ht_is_omega(a)) return "omega";
  return std::to_string(a);
}

}  // namespace specinv
