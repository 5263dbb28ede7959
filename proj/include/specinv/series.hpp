#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "specinv/vpoly.hpp"

namespace specinv {

/// Truncated power series in one variable: coefficients are exact through
/// total degree D; higher terms are discarded.
template <class R>
struct Series1 {
  int D = 0;
  std::map<int, R> c;

  void set(int k, R v) {
    if (k > D) return;
    if (is_zero(v))
      c.erase(k);
    else
      c[k] = std::move(v);
  }
  R at(int k) const {
    auto it = c.find(k);
    return it == c.end() ? R{} : it->second;
  }
  bool operator==(const Series1& o) const { return D == o.D && c == o.c; }
};

/// Truncated power series in two variables, exact through total degree D.
template <class R>
struct Series2 {
  int D = 0;
  std::map<std::pair<int, int>, R> c;

  void set(int i, int j, R v) {
    if (i + j > D) return;
    if (is_zero(v))
      c.erase({i, j});
    else
      c[{i, j}] = std::move(v);
  }
  R at(int i, int j) const {
    auto it = c.find({i, j});
    return it == c.end() ? R{} : it->second;
  }
};

template <class R>
Series1<R> s1_x(int D, const R& one) {
  Series1<R> s{D, {}};
  s.set(1, one);
  return s;
}

template <class R>
Series1<R> s1_add(const Series1<R>& a, const Series1<R>& b) {
  Series1<R> out{std::min(a.D, b.D), a.c};
  for (const auto& [k, v] : b.c) out.set(k, out.at(k) + v);
  for (auto it = out.c.begin(); it != out.c.end();)
    it = (it->first > out.D || is_zero(it->second)) ? out.c.erase(it)
                                                    : std::next(it);
  return out;
}

template <class R>
Series1<R> s1_neg(const Series1<R>& a) {
  Series1<R> out = a;
  for (auto& [k, v] : out.c) v = -v;
  return out;
}

template <class R>
Series1<R> s1_sub(const Series1<R>& a, const Series1<R>& b) {
  return s1_add(a, s1_neg(b));
}

template <class R>
Series1<R> s1_mul(const Series1<R>& a, const Series1<R>& b) {
  Series1<R> out{std::min(a.D, b.D), {}};
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c) {
      if (ka + kb > out.D) break;
      out.set(ka + kb, out.at(ka + kb) + va * vb);
    }
  return out;
}

template <class R>
Series1<R> s1_scale(const R& s, const Series1<R>& a) {
  Series1<R> out{a.D, {}};
  for (const auto& [k, v] : a.c) out.set(k, s * v);
  return out;
}

/// f(g(x)) for g with zero constant term.
template <class R>
Series1<R> s1_compose(const Series1<R>& f, const Series1<R>& g) {
  if (g.c.count(0)) throw DomainError("composition needs zero constant term");
  int D = std::min(f.D, g.D);
  Series1<R> out{D, {}};
  if (auto f0 = f.at(0); !is_zero(f0)) out.set(0, f0);
  Series1<R> g0 = g;  // g truncated to D
  g0.D = D;
  for (auto it = g0.c.begin(); it != g0.c.end();)
    it = it->first > D ? g0.c.erase(it) : std::next(it);
  Series1<R> acc;  // g^k
  for (int k = 1; k <= D; ++k) {
    acc = k == 1 ? g0 : s1_mul(acc, g0);
    if (acc.c.empty()) break;
    auto fk = f.at(k);
    if (is_zero(fk)) continue;
    for (const auto& [d, v] : acc.c) out.set(d, out.at(d) + fk * v);
  }
  return out;
}

/// Functional inverse of f = x + higher terms (throws otherwise):
/// returns e with e(f(x)) = x through degree D.
template <class R>
Series1<R> s1_reversion(const Series1<R>& f, const R& one) {
  if (f.c.count(0) || !(f.at(1) == one))
    throw DomainError("reversion needs f = x + O(x^2)");
  Series1<R> e{f.D, {}};
  e.set(1, one);
  for (int d = 2; d <= f.D; ++d) {
    Series1<R> comp = s1_compose(e, f);
    e.set(d, -comp.at(d));
  }
  return e;
}

template <class R>
Series2<R> s2_add(const Series2<R>& a, const Series2<R>& b) {
  Series2<R> out{std::min(a.D, b.D), a.c};
  for (const auto& [k, v] : b.c) out.set(k.first, k.second, out.at(k.first, k.second) + v);
  for (auto it = out.c.begin(); it != out.c.end();)
    it = (it->first.first + it->first.second > out.D || is_zero(it->second))
             ? out.c.erase(it)
             : std::next(it);
  return out;
}

template <class R>
Series2<R> s2_mul(const Series2<R>& a, const Series2<R>& b) {
  Series2<R> out{std::min(a.D, b.D), {}};
  for (const auto& [ka, va] : a.c)
    for (const auto& [kb, vb] : b.c) {
      int i = ka.first + kb.first, j = ka.second + kb.second;
      if (i + j > out.D) continue;
      out.set(i, j, out.at(i, j) + va * vb);
    }
  return out;
}

/// Coefficient-wise map over a one- or two-variable series.
template <class R, class F>
Series1<R> s1_map(const Series1<R>& a, F&& f) {
  Series1<R> out{a.D, {}};
  for (const auto& [k, v] : a.c) out.set(k, f(v));
  return out;
}

template <class R, class F>
Series2<R> s2_map(const Series2<R>& a, F&& f) {
  Series2<R> out{a.D, {}};
  for (const auto& [k, v] : a.c) out.set(k.first, k.second, f(v));
  return out;
}

/// F(u(x), w(x)) for one-variable u, w with zero constant terms.
template <class R>
Series1<R> s2_subst(const Series2<R>& F, const Series1<R>& u,
                    const Series1<R>& w) {
  if (u.c.count(0) || w.c.count(0))
    throw DomainError("substitution needs zero constant terms");
  int D = std::min({F.D, u.D, w.D});
  auto trunc = [&](Series1<R> s) {
    s.D = D;
    for (auto it = s.c.begin(); it != s.c.end();)
      it = it->first > D ? s.c.erase(it) : std::next(it);
    return s;
  };
  // Precompute powers u^i, w^j actually needed.
  int maxi = 0, maxj = 0;
  for (const auto& [k, v] : F.c) {
    maxi = std::max(maxi, k.first);
    maxj = std::max(maxj, k.second);
  }
  std::vector<Series1<R>> up(static_cast<size_t>(std::min(maxi, D)) + 1),
      wp(static_cast<size_t>(std::min(maxj, D)) + 1);
  // powers: index 0 unused (the (0,0) term of F is handled separately)
  for (size_t i = 1; i < up.size(); ++i)
    up[i] = i == 1 ? trunc(u) : s1_mul(up[i - 1], up[1]);
  for (size_t j = 1; j < wp.size(); ++j)
    wp[j] = j == 1 ? trunc(w) : s1_mul(wp[j - 1], wp[1]);
  Series1<R> out{D, {}};
  for (const auto& [k, v] : F.c) {
    auto [i, j] = k;
    if (i > D || j > D || i + j > D) continue;
    Series1<R> term{D, {}};
    if (i == 0 && j == 0) {
      out.set(0, out.at(0) + v);
      continue;
    }
    if (i == 0)
      term = wp[static_cast<size_t>(j)];
    else if (j == 0)
      term = up[static_cast<size_t>(i)];
    else
      term = s1_mul(up[static_cast<size_t>(i)], wp[static_cast<size_t>(j)]);
    for (const auto& [d, tv] : term.c) out.set(d, out.at(d) + v * tv);
  }
  return out;
}

template <class R>
std::string s1_to_string(const Series1<R>& s, const std::string& var = "x") {
  if (s.c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : s.c) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.to_string() << ")";
    if (k == 1)
      os << "*" << var;
    else if (k > 1)
      os << "*" << var << "^" << k;
  }
  return os.str();
}

}  // namespace specinv
