#include "specinv/spectrum.hpp"

#include <algorithm>

namespace specinv {

std::string SubRef::to_string() const {
  if (index >= 0) return "#" + std::to_string(index);
  return is_T() ? "T" : "C" + std::to_string(cyclic_m);
}

int SpecContext::find(const Subgroup& B) const {
  for (int i = 0; i < size(); ++i)
    if (lat.subgroups[i] == B) return i;
  throw DomainError("subgroup not in context lattice");
}

SpecContext make_finite_context(const FgAbGroup& A, long p) {
  if (!A.is_finite()) throw DomainError("finite context needs a finite group");
  SpecContext ctx;
  ctx.group = A;
  ctx.prime = p;
  ctx.lat.subgroups = enumerate_subgroups(A);
  const int s = ctx.size();
  ctx.lat.leq.assign(s, std::vector<char>(s, 0));
  ctx.lat.ptoral.assign(s, std::vector<char>(s, 0));
  ctx.lat.prank.assign(s, std::vector<int>(s, 0));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (!is_subgroup(ctx.lat.subgroups[i], ctx.lat.subgroups[j])) continue;
      ctx.lat.leq[i][j] = 1;
      FgAbGroup Q = quotient_group(ctx.lat.subgroups[i], ctx.lat.subgroups[j]);
      ctx.lat.ptoral[i][j] = is_pi0_p_group(Q, p);
      ctx.lat.prank[i][j] = rank_p_pi0(Q, p);
    }
  return ctx;
}

SpecContext make_circle_context(long p) {
  SpecContext ctx;
  ctx.group = FgAbGroup(1, {});
  ctx.prime = p;
  ctx.circle = true;
  return ctx;
}

namespace {

bool is_p_power(long x, long p) {  // x >= 1
  while (x % p == 0) x /= p;
  return x == 1;
}

// C_{m1} -> C_{m2} (or T) inclusion data inside Sub(T): returns rank_p of the
// component group of the quotient, or nullopt when not a p-toral inclusion.
std::optional<int> circle_pair(const SubRef& sub, const SubRef& super, long p) {
  if (super.is_T()) return 0;  // T/C_m a torus, T/T trivial
  if (sub.is_T()) return std::nullopt;
  long m1 = sub.cyclic_m, m2 = super.cyclic_m;
  if (m2 % m1 != 0) return std::nullopt;
  long q = m2 / m1;
  if (!is_p_power(q, p)) return std::nullopt;
  return q > 1 ? 1 : 0;
}

}  // namespace

AdmissibleFn AdmissibleFn::finite_fn(std::vector<Ht> v) {
  AdmissibleFn f;
  f.values = std::move(v);
  return f;
}

AdmissibleFn AdmissibleFn::circle_fn(Ht at_T, Ht generic, std::map<long, Ht> exc) {
  if (!(at_T == generic || (ht_is_inf(at_T) && ht_is_inf(generic))))
    throw DomainError("circle function not locally constant at T");
  AdmissibleFn f;
  f.circle = true;
  f.at_T = at_T;
  f.generic = generic;
  for (auto it = exc.begin(); it != exc.end();) {
    if (it->first < 1) throw DomainError("bad cyclic index");
    it = it->second == generic ? exc.erase(it) : ++it;
  }
  f.exceptions = std::move(exc);
  return f;
}

Ht AdmissibleFn::at(const SubRef& s) const {
  if (!circle) return values.at(static_cast<size_t>(s.index));
  if (s.is_T()) return at_T;
  auto it = exceptions.find(s.cyclic_m);
  return it == exceptions.end() ? generic : it->second;
}

bool AdmissibleFn::operator==(const AdmissibleFn& o) const {
  if (circle != o.circle) return false;
  if (!circle) return values == o.values;
  return at_T == o.at_T && generic == o.generic && exceptions == o.exceptions;
}

std::string AdmissibleFn::to_string(const SpecContext&) const {
  std::string s;
  if (!circle) {
    s = "(";
    for (size_t i = 0; i < values.size(); ++i)
      s += (i ? "," : "") + ht_to_string(values[i]);
    return s + ")";
  }
  s = "(T:" + ht_to_string(at_T) + ",*:" + ht_to_string(generic);
  for (auto& [m, v] : exceptions)
    s += ",C" + std::to_string(m) + ":" + ht_to_string(v);
  return s + ")";
}

bool includes(const SpecContext& ctx, const PrimePoint& P1, const PrimePoint& P2) {
  if (ctx.circle) {
    auto r = circle_pair(P2.sub, P1.sub, ctx.prime);  // need B2 <= B1
    if (!r) return false;
    return P2.n >= ht_add(P1.n, *r) || (ht_is_inf(P2.n) && ht_is_inf(P1.n));
  }
  int i = P2.sub.index, j = P1.sub.index;
  if (!ctx.lat.leq[i][j] || !ctx.lat.ptoral[i][j]) return false;
  if (ht_is_inf(P1.n)) return ht_is_inf(P2.n);
  return P2.n >= P1.n + ctx.lat.prank[i][j];
}

bool includes_crossprime(const FgAbGroup& A, const Subgroup& B, long p, Ht n,
                         const Subgroup& Bp, long q, Ht np) {
  if (B.ambient != A || Bp.ambient != A) throw DomainError("ambient mismatch");
  if (p != q && n != 0) return false;
  if (!is_subgroup(Bp, B)) return false;
  FgAbGroup Q = quotient_group(Bp, B);
  if (!is_pi0_p_group(Q, q)) return false;
  if (ht_is_inf(n)) return ht_is_inf(np);
  return np >= n + rank_p_pi0(Q, q);
}

namespace {

bool ht_leq_plus(Ht lhs, Ht rhs, int rank) {  // lhs <= rhs + rank ?
  if (ht_is_inf(rhs)) return true;
  if (ht_is_inf(lhs)) return false;
  return lhs <= rhs + rank;
}

AdmissibleCheck violation(SubRef sub, SubRef super, Ht deficit) {
  AdmissibleCheck c;
  c.ok = false;
  c.sub = sub;
  c.super = super;
  c.deficit = deficit;
  return c;
}

Ht deficit_of(Ht lhs, Ht rhs, int rank) {
  if (ht_is_inf(lhs)) return HT_INF;
  return lhs - (rhs + rank);
}

}  // namespace

AdmissibleCheck is_admissible(const SpecContext& ctx, const AdmissibleFn& f) {
  if (f.circle != ctx.circle) throw DomainError("context mismatch");
  if (!ctx.circle) {
    if (static_cast<int>(f.values.size()) != ctx.size())
      throw DomainError("function size mismatch");
    for (int i = 0; i < ctx.size(); ++i)
      for (int j = 0; j < ctx.size(); ++j) {
        if (!ctx.lat.leq[i][j] || !ctx.lat.ptoral[i][j]) continue;
        int r = ctx.lat.prank[i][j];
        if (!ht_leq_plus(f.values[i], f.values[j], r))
          return violation(SubRef::finite(i), SubRef::finite(j),
                           deficit_of(f.values[i], f.values[j], r));
      }
    return {};
  }
  long p = ctx.prime;
  // Torus constraint: every value <= f(T). The generic value equals f(T) by
  // construction, so only the exceptions need the check.
  for (auto& [m, v] : f.exceptions)
    if (!ht_leq_plus(v, f.at_T, 0))
      return violation(SubRef::circle(m), SubRef::circle_T(),
                       deficit_of(v, f.at_T, 0));
  for (auto& [m, v] : f.exceptions) {
    // Against exceptional p-power multiples.
    for (auto& [m2, v2] : f.exceptions) {
      if (m2 <= m || m2 % m != 0 || !is_p_power(m2 / m, p)) continue;
      if (!ht_leq_plus(v, v2, 1))
        return violation(SubRef::circle(m), SubRef::circle(m2),
                         deficit_of(v, v2, 1));
    }
    // Cofinitely many p-power multiples carry the generic value.
    if (!ht_leq_plus(v, f.generic, 1))
      return violation(SubRef::circle(m), SubRef::circle(m * p),
                       deficit_of(v, f.generic, 1));
    // Generic subgroups below this exception, if any p-power divisor of m is
    // not itself exceptional.
    for (long d = m; d % p == 0;) {
      d /= p;
      if (f.exceptions.count(d)) continue;
      if (!ht_leq_plus(f.generic, v, 1))
        return violation(SubRef::circle(d), SubRef::circle(m),
                         deficit_of(f.generic, v, 1));
      break;
    }
  }
  return {};
}

bool ClosedSet::contains(const SpecContext&, const PrimePoint& P) const {
  Ht b = boundary.at(P.sub);
  if (ht_is_inf(b)) return false;
  return ht_is_inf(P.n) || P.n > b;
}

ClosedSet closure(const SpecContext& ctx, const std::vector<PrimePoint>& points) {
  if (!ctx.circle) {
    std::vector<Ht> g(static_cast<size_t>(ctx.size()), HT_INF);
    for (auto& P : points) {
      Ht b = ht_is_inf(P.n) ? HT_OMEGA : P.n - 1;
      auto& slot = g[static_cast<size_t>(P.sub.index)];
      slot = std::min(slot, b);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int i = 0; i < ctx.size(); ++i)
        for (int j = 0; j < ctx.size(); ++j) {
          if (!ctx.lat.leq[i][j] || !ctx.lat.ptoral[i][j]) continue;
          Ht relaxed = ht_add(g[j], ctx.lat.prank[i][j]);
          if (relaxed < g[i]) {
            g[i] = relaxed;
            changed = true;
          }
        }
    }
    return ClosedSet{AdmissibleFn::finite_fn(std::move(g))};
  }
  long p = ctx.prime;
  Ht g_T = HT_INF;
  std::map<long, Ht> e;
  for (auto& P : points) {
    Ht b = ht_is_inf(P.n) ? HT_OMEGA : P.n - 1;
    if (P.sub.is_T()) {
      g_T = std::min(g_T, b);
      continue;
    }
    long m = P.sub.cyclic_m;
    auto take = [&](long k, Ht v) {
      auto it = e.find(k);
      if (it == e.end())
        e[k] = v;
      else
        it->second = std::min(it->second, v);
    };
    take(m, b);
    while (m % p == 0) {  // one rank-1 step reaches every C_{m/p^j}
      m /= p;
      take(m, ht_add(b, 1));
    }
  }
  Ht generic = g_T;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& [m, v] : e) {
      Ht best = std::min(v, g_T);
      best = std::min(best, ht_add(generic, 1));
      for (auto& [m2, v2] : e)
        if (m2 > m && m2 % m == 0 && is_p_power(m2 / m, p))
          best = std::min(best, ht_add(v2, 1));
      if (best < v) {
        v = best;
        changed = true;
      }
    }
  }
  return ClosedSet{AdmissibleFn::circle_fn(g_T, generic, std::move(e))};
}

namespace {

ClosedSet combine(const SpecContext& ctx, const ClosedSet& a, const ClosedSet& b,
                  bool take_min) {
  auto pick = [&](Ht x, Ht y) { return take_min ? std::min(x, y) : std::max(x, y); };
  AdmissibleFn f;
  if (!ctx.circle) {
    std::vector<Ht> v(a.boundary.values.size());
    for (size_t i = 0; i < v.size(); ++i)
      v[i] = pick(a.boundary.values[i], b.boundary.values[i]);
    f = AdmissibleFn::finite_fn(std::move(v));
  } else {
    std::map<long, Ht> e;
    for (auto& [m, _] : a.boundary.exceptions) e[m] = 0;
    for (auto& [m, _] : b.boundary.exceptions) e[m] = 0;
    for (auto& [m, v] : e)
      v = pick(a.boundary.at(SubRef::circle(m)), b.boundary.at(SubRef::circle(m)));
    f = AdmissibleFn::circle_fn(pick(a.boundary.at_T, b.boundary.at_T),
                                pick(a.boundary.generic, b.boundary.generic),
                                std::move(e));
  }
  if (!is_admissible(ctx, f))
    throw DomainError("combined boundary not admissible");
  return ClosedSet{std::move(f)};
}

}  // namespace

ClosedSet closed_union(const SpecContext& ctx, const ClosedSet& a, const ClosedSet& b) {
  return combine(ctx, a, b, true);
}

ClosedSet closed_intersection(const SpecContext& ctx, const ClosedSet& a,
                              const ClosedSet& b) {
  return combine(ctx, a, b, false);
}

std::vector<AdmissibleFn> enumerate_admissible(const SpecContext& ctx, int H) {
  if (ctx.circle) throw DomainError("enumeration needs a finite lattice");
  std::vector<Ht> domain;
  for (int v = -1; v <= H; ++v) domain.push_back(v);
  domain.push_back(HT_INF);
  const int s = ctx.size();
  std::vector<AdmissibleFn> out;
  std::vector<Ht> cur(static_cast<size_t>(s), 0);
  auto compatible = [&](int k) {
    // check pairs (k, j) and (j, k) for j <= k
    for (int j = 0; j <= k; ++j) {
      if (ctx.lat.leq[k][j] && ctx.lat.ptoral[k][j] &&
          !ht_leq_plus(cur[k], cur[j], ctx.lat.prank[k][j]))
        return false;
      if (ctx.lat.leq[j][k] && ctx.lat.ptoral[j][k] &&
          !ht_leq_plus(cur[j], cur[k], ctx.lat.prank[j][k]))
        return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int k) -> void {
    if (k == s) {
      out.push_back(AdmissibleFn::finite_fn(cur));
      return;
    }
    for (Ht v : domain) {
      cur[static_cast<size_t>(k)] = v;
      if (compatible(k)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

SpecPoset specialization_order(const SpecContext& ctx, int H) {
  if (ctx.circle) throw DomainError("specialization order needs a finite lattice");
  SpecPoset P;
  for (int i = 0; i < ctx.size(); ++i) {
    for (int n = 0; n <= H; ++n) P.points.push_back({SubRef::finite(i), n});
    P.points.push_back({SubRef::finite(i), HT_INF});
  }
  size_t N = P.points.size();
  P.leq.assign(N, std::vector<char>(N, 0));
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b)
      P.leq[a][b] = includes(ctx, P.points[a], P.points[b]);
  return P;
}

}  // namespace specinv
