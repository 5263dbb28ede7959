#pragma once

#include <vector>

#include "specinv/vpoly.hpp"

namespace specinv {

/// Element of GF(p^k) = F_p[t]/(modulus), modulus monic of degree k given by
/// its low k coefficients. Default-constructed elements are a universal zero.
struct GFElem {
  long p = 0;
  std::vector<long> mod;  // low coefficients of the monic modulus (size k)
  std::vector<long> a;    // element coefficients (size k)

  static GFElem zero(long p, std::vector<long> mod) {
    return {p, std::move(mod), {}};
  }
  static GFElem from_int(long p, std::vector<long> mod, long v) {
    GFElem e{p, std::move(mod), {}};
    v %= p;
    if (v < 0) v += p;
    if (v != 0) e.a = {v};
    return e;
  }
  static GFElem gen(long p, std::vector<long> mod) {  // the class of t
    GFElem e{p, std::move(mod), {0, 1}};
    return e.normalized();
  }

  bool is_zero_elem() const {
    for (long c : a)
      if (c != 0) return false;
    return true;
  }

  GFElem normalized() const {
    GFElem e = *this;
    size_t k = e.mod.size();
    for (auto& c : e.a) {
      c %= e.p;
      if (c < 0) c += e.p;
    }
    // reduce degree >= k by t^k = -mod(t)
    for (size_t d = e.a.size(); d-- > k && k > 0;) {
      long c = e.a[d];
      if (c == 0) continue;
      e.a[d] = 0;
      for (size_t i = 0; i < k; ++i)
        e.a[d - k + i] = ((e.a[d - k + i] - c * e.mod[i]) % e.p + e.p) % e.p;
    }
    while (!e.a.empty() && e.a.back() == 0) e.a.pop_back();
    return e;
  }

  friend GFElem operator+(const GFElem& x, const GFElem& y) {
    GFElem out = x.p ? x : y;
    const GFElem& o = x.p ? y : x;
    if (out.a.size() < o.a.size()) out.a.resize(o.a.size(), 0);
    for (size_t i = 0; i < o.a.size(); ++i) out.a[i] += o.a[i];
    return out.p ? out.normalized() : out;
  }
  GFElem operator-() const {
    GFElem out = *this;
    for (auto& c : out.a) c = -c;
    return p ? out.normalized() : out;
  }
  friend GFElem operator-(const GFElem& x, const GFElem& y) { return x + (-y); }
  friend GFElem operator*(const GFElem& x, const GFElem& y) {
    if (x.is_zero_elem() || y.is_zero_elem())
      return x.p ? GFElem{x.p, x.mod, {}} : GFElem{y.p, y.mod, {}};
    GFElem out{x.p, x.mod, std::vector<long>(x.a.size() + y.a.size() - 1, 0)};
    for (size_t i = 0; i < x.a.size(); ++i)
      for (size_t j = 0; j < y.a.size(); ++j)
        out.a[i + j] = (out.a[i + j] + x.a[i] * y.a[j]) % x.p;
    return out.normalized();
  }
  bool operator==(const GFElem& o) const {
    if (is_zero_elem() && o.is_zero_elem()) return true;
    return p == o.p && mod == o.mod && a == o.a;
  }
};

inline bool is_zero(const GFElem& e) { return e.is_zero_elem(); }

}  // namespace specinv
