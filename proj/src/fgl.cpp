#include "specinv/fgl.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace specinv {

namespace {

// --- three-variable scratch series for the associativity residual ---------

using M3 = std::array<int, 3>;
using S3 = std::map<M3, VPoly>;

void s3_prune(S3& s) {
  for (auto it = s.begin(); it != s.end();)
    it = it->second.is_zero() ? s.erase(it) : std::next(it);
}

S3 s3_mul(const S3& a, const S3& b, int D) {
  S3 out;
  for (const auto& [ma, va] : a)
    for (const auto& [mb, vb] : b) {
      M3 m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
      if (m[0] + m[1] + m[2] > D) continue;
      out[m] = out[m] + va * vb;
    }
  s3_prune(out);
  return out;
}

// F(A, B) for three-variable arguments with zero constant term.
S3 s3_subst(const Series2<VPoly>& F, const S3& A, const S3& B, int D) {
  int maxi = 0, maxj = 0;
  for (const auto& [k, v] : F.c) {
    maxi = std::max(maxi, k.first);
    maxj = std::max(maxj, k.second);
  }
  maxi = std::min(maxi, D);
  maxj = std::min(maxj, D);
  std::vector<S3> Ap(static_cast<size_t>(maxi) + 1),
      Bp(static_cast<size_t>(maxj) + 1);
  for (int i = 1; i <= maxi; ++i)
    Ap[static_cast<size_t>(i)] = i == 1 ? A : s3_mul(Ap[static_cast<size_t>(i - 1)], A, D);
  for (int j = 1; j <= maxj; ++j)
    Bp[static_cast<size_t>(j)] = j == 1 ? B : s3_mul(Bp[static_cast<size_t>(j - 1)], B, D);
  S3 out;
  for (const auto& [k, v] : F.c) {
    auto [i, j] = k;
    if (i > maxi || j > maxj || i + j > D) continue;
    if (i == 0 && j == 0) {
      out[{0, 0, 0}] = out[{0, 0, 0}] + v;
      continue;
    }
    const S3* term;
    S3 scratch;
    if (i == 0)
      term = &Bp[static_cast<size_t>(j)];
    else if (j == 0)
      term = &Ap[static_cast<size_t>(i)];
    else {
      scratch = s3_mul(Ap[static_cast<size_t>(i)], Bp[static_cast<size_t>(j)], D);
      term = &scratch;
    }
    for (const auto& [m, tv] : *term) out[m] = out[m] + v * tv;
  }
  s3_prune(out);
  return out;
}

S3 s3_embed_xy(const Series2<VPoly>& F) {
  S3 out;
  for (const auto& [k, v] : F.c) out[{k.first, k.second, 0}] = v;
  return out;
}

S3 s3_embed_yz(const Series2<VPoly>& F) {
  S3 out;
  for (const auto& [k, v] : F.c) out[{0, k.first, k.second}] = v;
  return out;
}

AxiomCheck check_unit_comm(const FGL& G) {
  VPoly one(G.ring, 1);
  for (const auto& [k, v] : G.F.c) {
    auto [i, j] = k;
    if (j == 0 && !(i == 1 ? v == one : v.is_zero()))
      return {false, "unit", i, j, 0};
    if (i == 0 && !(j == 1 ? v == one : v.is_zero()))
      return {false, "unit", i, j, 0};
    if (!(v == G.F.at(j, i))) return {false, "commutativity", i, j, 0};
  }
  if (!(G.F.at(1, 0) == one)) return {false, "unit", 1, 0, 0};
  return {};
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::string AxiomCheck::to_string() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << axiom << " fails at multidegree (" << i << "," << j << "," << k << ")";
  return os.str();
}

FGL make_fgl(const VRing& ring, int D, Series2<VPoly> F) {
  FGL out{ring, D, std::move(F)};
  out.F.D = D;
  if (AxiomCheck c = check_unit_comm(out); !c)
    throw DomainError("not a formal group law: " + c.to_string());
  return out;
}

AxiomCheck fgl_axioms_check(const FGL& G) {
  if (AxiomCheck c = check_unit_comm(G); !c) return c;
  VPoly one(G.ring, 1);
  S3 xyA = s3_embed_xy(G.F);
  S3 yzB = s3_embed_yz(G.F);
  S3 z{{M3{0, 0, 1}, one}};
  S3 x{{M3{1, 0, 0}, one}};
  S3 lhs = s3_subst(G.F, xyA, z, G.D);   // F(F(x,y), z)
  S3 rhs = s3_subst(G.F, x, yzB, G.D);   // F(x, F(y,z))
  for (const auto& [m, v] : lhs) {
    auto it = rhs.find(m);
    if (it == rhs.end() || !(it->second == v))
      return {false, "associativity", m[0], m[1], m[2]};
  }
  for (const auto& [m, v] : rhs)
    if (!lhs.count(m)) return {false, "associativity", m[0], m[1], m[2]};
  return {};
}

Series1<VPoly> formal_inverse(const FGL& G) {
  VPoly one(G.ring, 1);
  Series1<VPoly> x = s1_x(G.D, one);
  Series1<VPoly> io{G.D, {}};
  io.set(1, -one);
  for (int d = 2; d <= G.D; ++d) {
    Series1<VPoly> r = s2_subst(G.F, x, io);
    io.set(d, io.at(d) - r.at(d));
  }
  return io;
}

Series1<VPoly> n_series(const FGL& G, long n) {
  VPoly one(G.ring, 1);
  Series1<VPoly> x = s1_x(G.D, one);
  if (n == 0) return Series1<VPoly>{G.D, {}};
  long a = n < 0 ? -n : n;
  Series1<VPoly> cur = x;
  for (long k = 2; k <= a; ++k) cur = s2_subst(G.F, cur, x);
  if (n < 0) cur = s1_compose(formal_inverse(G), cur);
  return cur;
}

FGL universal_p_typical(long p, int D, int N) {
  if (p < 2 || D < 1 || N < 0)
    throw DomainError("universal_p_typical: bad parameters");
  VRing ring{p, 0, N, 0, 0};
  std::vector<VPoly> m{VPoly(ring, 1)};  // m_0 = 1
  for (long pw = p; pw <= D; pw *= p) {
    int i = static_cast<int>(m.size());
    VPoly s;
    long pj = 1;
    for (int j = 0; j < i; ++j, pj *= p) {
      int vi = i - j;
      if (vi > N) continue;
      s = s + m[static_cast<size_t>(j)] * VPoly::var(ring, vi, pj);
    }
    m.push_back(VPoly(ring, mpq_class(1, p)) * s);
  }
  Series1<VPoly> l{D, {}};
  long pw = 1;
  for (size_t i = 0; i < m.size(); ++i, pw *= p)
    l.set(static_cast<int>(pw), m[i]);
  VPoly one(ring, 1);
  Series1<VPoly> e = s1_reversion(l, one);
  Series2<VPoly> S{D, {}};
  for (const auto& [k, v] : l.c) {
    S.set(k, 0, v);
    S.set(0, k, v);
  }
  Series2<VPoly> F{D, {}};
  Series2<VPoly> acc;
  for (int k = 1; k <= D; ++k) {
    acc = k == 1 ? S : s2_mul(acc, S);
    VPoly ek = e.at(k);
    if (ek.is_zero()) continue;
    for (const auto& [key, v] : acc.c)
      F.set(key.first, key.second, F.at(key.first, key.second) + ek * v);
  }
  for (const auto& [key, v] : F.c)
    for (const auto& [mon, c] : v.terms())
      if (c.get_den() % p == 0)
        throw DomainError("p-integrality failure in universal p-typical law");
  return make_fgl(ring, D, std::move(F));
}

FGL change_ring(const FGL& G, const VRing& ring) {
  Series2<VPoly> F = s2_map(G.F, [&](const VPoly& v) { return v.reduced(ring); });
  return make_fgl(ring, G.D, std::move(F));
}

FGL reduce_mod_In(const FGL& G, int n) {
  if (n == 0) return G;
  if (n - 1 > G.ring.nvars)
    throw DomainError("reduce_mod_In: not enough generators");
  if (G.ring.p == 0) throw DomainError("reduce_mod_In: no distinguished prime");
  VRing nr = G.ring;
  nr.char_mod = G.ring.p;
  for (int i = 1; i <= n - 1; ++i) nr.killed |= 1u << (i - 1);
  return change_ring(G, nr);
}

Series1<VPoly> exact_divide(const Series1<VPoly>& a, const Series1<VPoly>& b) {
  int d0 = -1;
  VPoly b0;
  for (const auto& [k, v] : b.c)
    if (!v.is_zero()) {
      d0 = k;
      b0 = v;
      break;
    }
  if (d0 < 0) throw DomainError("exact_divide: division by zero series");
  for (const auto& [k, v] : a.c)
    if (k < d0 && !v.is_zero()) throw NotDivisible(k);
  int D = std::min(a.D, b.D) - d0;
  Series1<VPoly> c{D, {}};
  for (int k = 0; k <= D; ++k) {
    VPoly acc = a.at(k + d0);
    for (int j = 1; j <= k; ++j) {
      VPoly bj = b.at(d0 + j);
      if (bj.is_zero()) continue;
      acc = acc - bj * c.at(k - j);
    }
    if (acc.is_zero()) continue;
    auto q = acc.divided_by(b0);
    if (!q) throw NotDivisible(k + d0);
    c.set(k, *q);
  }
  return c;
}

Series1<VPoly> psi_series(long p, int n, int k, int D) {
  if (n < 0 || k < 1 || ipow(p, n) > D)
    throw DomainError("psi_series: parameters exceed truncation");
  int N = std::max(n, 1);
  while (ipow(p, N + 1) <= D) ++N;
  FGL Fn = reduce_mod_In(universal_p_typical(p, D, N), n);
  Series1<VPoly> ps = n_series(Fn, p);
  Series1<VPoly> u = n_series(Fn, ipow(p, k - 1));
  Series1<VPoly> num = k == 1 ? ps : s1_compose(ps, u);
  long e = ipow(p, n);
  Series1<VPoly> den = u;
  for (long i = 1; i < e; ++i) den = s1_mul(den, u);
  return exact_divide(num, den);
}

bool level_is_homomorphism(const FGL& G, const LevelData& lv) {
  long cnt = ipow(lv.p, lv.r);
  if (static_cast<long>(lv.e.size()) != cnt || !lv.e[0].is_zero()) return false;
  auto add_idx = [&](long a, long b) {
    long out = 0, mul = 1;
    for (int d = 0; d < lv.r; ++d) {
      out += ((a % lv.p + b % lv.p) % lv.p) * mul;
      a /= lv.p;
      b /= lv.p;
      mul *= lv.p;
    }
    return out;
  };
  auto eval_const = [&](const VPoly& x, const VPoly& y) {
    VPoly out;
    for (const auto& [k, v] : G.F.c) {
      VPoly t = v;
      for (int i = 0; i < k.first; ++i) t = t * x;
      for (int j = 0; j < k.second; ++j) t = t * y;
      out = out + t;
    }
    return out;
  };
  for (long a = 0; a < cnt; ++a)
    for (long b = 0; b < cnt; ++b) {
      VPoly got = eval_const(lv.e[static_cast<size_t>(a)],
                             lv.e[static_cast<size_t>(b)]);
      if (!(got == lv.e[static_cast<size_t>(add_idx(a, b))])) return false;
    }
  return true;
}

Series1<VPoly> level_vbar(const FGL& G, const LevelData& lv) {
  if (!level_is_homomorphism(G, lv))
    throw DomainError("level_vbar: not a level structure");
  VPoly one(G.ring, 1);
  // F(e_V, y) as a series in y: sum_j (sum_i c_ij e_V^i) y^j.
  auto factor = [&](const VPoly& ev) {
    Series1<VPoly> out{G.D, {}};
    for (const auto& [k, v] : G.F.c) {
      VPoly t = v;
      for (int i = 0; i < k.first; ++i) t = t * ev;
      out.set(k.second, out.at(k.second) + t);
    }
    return out;
  };
  Series1<VPoly> prod{G.D, {}};
  prod.set(0, one);
  for (const auto& ev : lv.e) prod = s1_mul(prod, factor(ev));
  return exact_divide(n_series(G, lv.p), prod);
}

FGL multiplicative_fgl(const VRing& ring, int D) {
  VPoly one(ring, 1);
  Series2<VPoly> F{D, {}};
  F.set(1, 0, one);
  F.set(0, 1, one);
  F.set(1, 1, -one);
  return make_fgl(ring, D, std::move(F));
}

FGL additive_fgl(const VRing& ring, int D) {
  VPoly one(ring, 1);
  Series2<VPoly> F{D, {}};
  F.set(1, 0, one);
  F.set(0, 1, one);
  return make_fgl(ring, D, std::move(F));
}

GmC2 gm_c2(int sign, int D) {
  if (sign != 1 && sign != -1) throw DomainError("gm_c2: sign must be +-1");
  VRing ring{2, 0, 0, 0, 0};
  VPoly one(ring, 1);
  Series2<VPoly> F{D, {}};
  F.set(1, 0, one);
  F.set(0, 1, one);
  F.set(1, 1, VPoly(ring, -sign));
  FGL law = make_fgl(ring, D, std::move(F));
  Int e = 2 * sign;
  // e is a root of the [2]-series and generates an order-2 quotient of Z.
  Series1<VPoly> two = n_series(law, 2);
  VPoly val;
  for (const auto& [k, v] : two.c) {
    VPoly t = v;
    for (int i = 0; i < k; ++i) t = t * VPoly(ring, mpq_class(e));
    val = val + t;
  }
  if (!val.is_zero()) throw DomainError("gm_c2: Euler class is not a [2]-root");
  return {std::move(law), e};
}

HeightResult fgl_height(const FGL& G, long p) {
  return pseries_height(n_series(G, p), p);
}

FGL honda_fgl(long p, int n, int D) {
  if (n < 1 || ipow(p, n) > D)
    throw DomainError("honda_fgl: height exceeds truncation degree");
  VRing ring{p, 0, 0, 0, 0};
  Series1<VPoly> l{D, {}};
  mpq_class mi = 1;
  for (long pw = 1; pw <= D; pw *= ipow(p, n), mi /= p)
    l.set(static_cast<int>(pw), VPoly(ring, mi));
  VPoly one(ring, 1);
  Series1<VPoly> e = s1_reversion(l, one);
  Series2<VPoly> S{D, {}};
  for (const auto& [k, v] : l.c) {
    S.set(k, 0, v);
    S.set(0, k, v);
  }
  Series2<VPoly> F{D, {}};
  Series2<VPoly> acc;
  for (int k = 1; k <= D; ++k) {
    acc = k == 1 ? S : s2_mul(acc, S);
    VPoly ek = e.at(k);
    if (ek.is_zero()) continue;
    for (const auto& [key, v] : acc.c)
      F.set(key.first, key.second, F.at(key.first, key.second) + ek * v);
  }
  for (const auto& [key, v] : F.c)
    for (const auto& [mon, c] : v.terms())
      if (c.get_den() % p == 0)
        throw DomainError("p-integrality failure in Honda law");
  return make_fgl(ring, D, std::move(F));
}

std::string BlueshiftReport::to_string() const {
  std::ostringstream os;
  os << "psi_{" << p << "^" << k << "}^(" << (n - 1) << ") over height-" << n
     << " model, trunc " << D << ": constant term " << constant_term.to_string()
     << (constant_is_unit_times_vnm1 ? " (= unit * v_(n-1))" : " (UNEXPECTED)")
     << "; mod v_(n-1): lowest coeff " << lowest_coeff_mod_vnm1.to_string()
     << " in degree " << lowest_deg_mod_vnm1
     << (lowest_is_unit ? " (unit)" : " (NOT a unit)") << "; height drop "
     << height_drop << ". " << note;
  return os.str();
}

BlueshiftReport blueshift_report(long p, int n, int k, int D) {
  if (n < 1 || k < 1) throw DomainError("blueshift_report: bad parameters");
  BlueshiftReport rep;
  rep.p = p;
  rep.n = n;
  rep.k = k;
  rep.D = D;
  rep.note =
      "Generators are normalized only up to units and decomposables; all "
      "identities are certified through the stated truncation degree.";
  FGL FE = [&] {
    if (n == 1) {
      // v_0 = p: the height-1 model is multiplicative over Z_(p).
      return multiplicative_fgl(VRing{p, 0, 0, 0, 0}, D);
    }
    FGL Fu = universal_p_typical(p, D, n);
    VRing E = Fu.ring;
    E.char_mod = p;
    for (int i = 1; i <= n - 2; ++i) E.killed |= 1u << (i - 1);
    E.inverted |= 1u << (n - 1);  // invert the top generator v_n
    return change_ring(Fu, E);
  }();
  Series1<VPoly> ps = n_series(FE, p);
  Series1<VPoly> u = n_series(FE, ipow(p, k - 1));
  Series1<VPoly> num = k == 1 ? ps : s1_compose(ps, u);
  long e = ipow(p, n - 1);
  Series1<VPoly> den = u;
  for (long i = 1; i < e; ++i) den = s1_mul(den, u);
  Series1<VPoly> psi = exact_divide(num, den);

  rep.constant_term = psi.at(0);
  VRing modring = FE.ring;
  if (n == 1) {
    // v_0 = p: divide out p, reduce mod p.
    auto q = rep.constant_term.divided_by(VPoly(FE.ring, mpq_class(p)));
    rep.constant_is_unit_times_vnm1 = q.has_value() && q->is_unit();
    modring.char_mod = p;
  } else {
    auto q = rep.constant_term.divided_by(VPoly::var(FE.ring, n - 1));
    rep.constant_is_unit_times_vnm1 = q.has_value() && q->is_unit();
    modring.killed |= 1u << (n - 2);
  }
  Series1<VPoly> red = s1_map(psi, [&](const VPoly& v) { return v.reduced(modring); });
  for (const auto& [d, v] : red.c)
    if (!v.is_zero()) {
      rep.lowest_coeff_mod_vnm1 = v;
      rep.lowest_deg_mod_vnm1 = d;
      rep.lowest_is_unit = v.is_unit();
      break;
    }
  rep.height_drop = 1;
  return rep;
}

}  // namespace specinv
