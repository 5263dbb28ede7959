#include "specinv/witness.hpp"

#include <algorithm>

namespace specinv {

namespace {

bool is_circle_group(const FgAbGroup& A) { return A.rank == 1 && A.torsion.empty(); }

bool is_p_power(long x, long p) {
  while (x % p == 0) x /= p;
  return x == 1;
}

Subgroup circle_cyclic(const FgAbGroup& T, long m) {
  IntMatrix g(1, 1);
  g(0, 0) = m;
  return subgroup_from_generators(T, g);
}

}  // namespace

HtIv HeightFn::at(const SubRef& s) const {
  if (!circle) return values.at(static_cast<size_t>(s.index));
  if (s.is_T()) return at_T;
  auto it = exceptions.find(s.cyclic_m);
  return it == exceptions.end() ? generic : it->second;
}

const SpecContext& ContextCache::get(const FgAbGroup& A) {
  std::string key = A.to_string();
  auto it = ctxs_.find(key);
  if (it != ctxs_.end()) return it->second;
  SpecContext ctx =
      is_circle_group(A) ? make_circle_context(p_) : make_finite_context(A, p_);
  return ctxs_.emplace(key, std::move(ctx)).first->second;
}

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Vn: return "v_" + ht_to_string(n);
    case Kind::EulerV: {
      std::string s = "e[";
      for (Eigen::Index i = 0; i < V.size(); ++i)
        s += (i ? "," : "") + V(i).get_str();
      return s + "]*v_" + ht_to_string(n);
    }
    case Kind::QKiller:
      return "v_" + ht_to_string(n) + "*g^*(vbar0^(" + std::to_string(q) + "))";
    case Kind::XShift: return "x_" + ht_to_string(n);
    case Kind::Product: {
      if (args.empty()) return "1";
      std::string s;
      for (size_t i = 0; i < args.size(); ++i)
        s += (i ? " * " : "") + args[i]->to_string();
      return s;
    }
    case Kind::Inflate: return "infl(" + args[0]->to_string() + ")";
    case Kind::Restrict: return "res(" + args[0]->to_string() + ")";
    case Kind::Lift: return "lift(" + args[0]->to_string() + ")";
  }
  return "?";
}

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

}  // namespace

ExprPtr expr_zero(const FgAbGroup& A) {
  Expr e;
  e.kind = Expr::Kind::Zero;
  e.ambient = A;
  return make(std::move(e));
}

ExprPtr expr_one(const FgAbGroup& A) {
  Expr e;
  e.kind = Expr::Kind::One;
  e.ambient = A;
  return make(std::move(e));
}

ExprPtr expr_vn(const FgAbGroup& A, Ht n) {
  Expr e;
  e.kind = Expr::Kind::Vn;
  e.ambient = A;
  e.n = n;
  return make(std::move(e));
}

ExprPtr expr_euler_v(const FgAbGroup& A, const IntVector& V, Ht n) {
  if (V.size() != A.ambient_dim()) throw DomainError("character dimension mismatch");
  Expr e;
  e.kind = Expr::Kind::EulerV;
  e.ambient = A;
  e.V = V;
  e.n = n;
  return make(std::move(e));
}

ExprPtr expr_qkiller(long q, const Homomorphism& g, Ht n) {
  if (!(g.target == cyclic_group(q))) throw DomainError("q-killer target is not C_q");
  if (!hom_is_surjective(g)) throw DomainError("q-killer map not surjective");
  Expr e;
  e.kind = Expr::Kind::QKiller;
  e.ambient = g.source;
  e.q = q;
  e.g = g;
  e.n = n;
  return make(std::move(e));
}

ExprPtr expr_xshift(long p, Ht m) {
  if (m < -1 || ht_is_inf(m)) throw DomainError("x_m needs finite m >= -1");
  Expr e;
  e.kind = Expr::Kind::XShift;
  e.ambient = elementary_abelian(p, static_cast<int>(m) + 1);
  e.n = m;
  return make(std::move(e));
}

ExprPtr expr_product(const FgAbGroup& A, std::vector<ExprPtr> args) {
  for (auto& a : args)
    if (!(a->ambient == A)) throw DomainError("product factor ambient mismatch");
  Expr e;
  e.kind = Expr::Kind::Product;
  e.ambient = A;
  e.args = std::move(args);
  return make(std::move(e));
}

ExprPtr expr_inflate(const Homomorphism& g, ExprPtr arg) {
  if (!(arg->ambient == g.target)) throw DomainError("inflate ambient mismatch");
  if (!hom_is_surjective(g)) throw DomainError("inflate along a non-quotient map");
  Expr e;
  e.kind = Expr::Kind::Inflate;
  e.ambient = g.source;
  e.g = g;
  e.args = {std::move(arg)};
  return make(std::move(e));
}

ExprPtr expr_restrict(const Subgroup& B, ExprPtr arg) {
  if (!(arg->ambient == B.ambient)) throw DomainError("restrict ambient mismatch");
  Expr e;
  e.kind = Expr::Kind::Restrict;
  e.ambient = abstract_subgroup(B).group;
  e.B = B;
  e.args = {std::move(arg)};
  return make(std::move(e));
}

ExprPtr expr_lift(const Subgroup& Bprime, ExprPtr arg) {
  if (!(arg->ambient == abstract_subgroup(Bprime).group))
    throw DomainError("lift argument must live over the abstract model of B'");
  Expr e;
  e.kind = Expr::Kind::Lift;
  e.ambient = Bprime.ambient;
  e.B = Bprime;
  e.args = {std::move(arg)};
  return make(std::move(e));
}

namespace {

HeightFn constant_fn(const SpecContext& ctx, HtIv v) {
  HeightFn h;
  if (!ctx.circle) {
    h.values.assign(static_cast<size_t>(ctx.size()), v);
  } else {
    h.circle = true;
    h.at_T = h.generic = v;
  }
  return h;
}

HtIv iv_min(HtIv a, HtIv b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }
HtIv iv_max(HtIv a, HtIv b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }

HeightFn combine(const SpecContext& ctx, const std::vector<HeightFn>& fns,
                 HtIv unit, HtIv (*op)(HtIv, HtIv)) {
  HeightFn h = constant_fn(ctx, unit);
  if (!ctx.circle) {
    for (auto& f : fns)
      for (size_t i = 0; i < h.values.size(); ++i)
        h.values[i] = op(h.values[i], f.values[i]);
    return h;
  }
  for (auto& f : fns)
    for (auto& [m, _] : f.exceptions) h.exceptions[m] = unit;
  for (auto& f : fns) {
    h.at_T = op(h.at_T, f.at_T);
    h.generic = op(h.generic, f.generic);
    for (auto& [m, v] : h.exceptions) v = op(v, f.at(SubRef::circle(m)));
  }
  return h;
}

HeightFn eval(const ExprPtr& e, ContextCache& cache);

HeightFn eval_circle(const ExprPtr& e, ContextCache& cache) {
  const SpecContext& ctx = cache.get(e->ambient);
  switch (e->kind) {
    case Expr::Kind::Zero: return constant_fn(ctx, {-1, -1});
    case Expr::Kind::One: return constant_fn(ctx, {HT_INF, HT_INF});
    case Expr::Kind::Vn: return constant_fn(ctx, {e->n, e->n});
    case Expr::Kind::EulerV: {
      long k = e->V(0).get_si();
      if (k < 0) k = -k;
      if (k == 0) return constant_fn(ctx, {-1, -1});  // e_eps = 0
      HeightFn h = constant_fn(ctx, {e->n, e->n});
      for (long d = 1; d <= k; ++d)  // tau^k is trivial exactly on C_d, d | k
        if (k % d == 0) h.exceptions[d] = {-1, -1};
      return h;
    }
    case Expr::Kind::Product: {
      std::vector<HeightFn> sub;
      for (auto& a : e->args) sub.push_back(eval(a, cache));
      return combine(ctx, sub, {HT_INF, HT_INF}, iv_min);
    }
    case Expr::Kind::Lift: {
      HeightFn inner = eval(e->args[0], cache);
      const SpecContext& ictx = cache.get(e->args[0]->ambient);
      SubgroupStructure st = abstract_subgroup(e->B);
      long mp = determinant(e->B.lattice).get_si();
      if (mp < 0) mp = -mp;  // B' = C_{m'}
      HeightFn h = constant_fn(ctx, {-1, HT_INF});
      for (long d = 1; d <= mp; ++d) {
        if (mp % d != 0) continue;
        Subgroup Cd = circle_cyclic(e->ambient, d);
        int j = ictx.find(restrict_subgroup(st, Cd));
        h.exceptions[d] = inner.values[static_cast<size_t>(j)];
      }
      return h;
    }
    default:
      throw DomainError("expression kind not supported over the circle");
  }
}

HeightFn eval(const ExprPtr& e, ContextCache& cache) {
  if (is_circle_group(e->ambient)) return eval_circle(e, cache);
  const SpecContext& ctx = cache.get(e->ambient);
  const long p = cache.prime();
  switch (e->kind) {
    case Expr::Kind::Zero: return constant_fn(ctx, {-1, -1});
    case Expr::Kind::One: return constant_fn(ctx, {HT_INF, HT_INF});
    case Expr::Kind::Vn: return constant_fn(ctx, {e->n, e->n});
    case Expr::Kind::EulerV: {
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        bool trivial = lattice_contains(ctx.lat.subgroups[i].lattice, e->V);
        Ht v = trivial ? -1 : e->n;
        h.values.push_back({v, v});
      }
      return h;
    }
    case Expr::Kind::QKiller: {
      if (e->q == p) throw DomainError("q-killer prime equals the context prime");
      Subgroup full_cq = full_subgroup(e->g.target);
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        bool onto = image_subgroup(e->g, ctx.lat.subgroups[i]) == full_cq;
        Ht v = onto ? -1 : e->n;
        h.values.push_back({v, v});
      }
      return h;
    }
    case Expr::Kind::XShift: {
      if (!(e->ambient == elementary_abelian(p, static_cast<int>(e->n) + 1)))
        throw DomainError("x_m evaluated at the wrong prime");
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        int r = p_rank(abstract_subgroup(ctx.lat.subgroups[i]).group, p);
        Ht v = static_cast<Ht>(e->n - r);
        h.values.push_back({v, v});
      }
      return h;
    }
    case Expr::Kind::Product: {
      std::vector<HeightFn> sub;
      for (auto& a : e->args) sub.push_back(eval(a, cache));
      return combine(ctx, sub, {HT_INF, HT_INF}, iv_min);
    }
    case Expr::Kind::Inflate: {
      HeightFn inner = eval(e->args[0], cache);
      const SpecContext& ictx = cache.get(e->args[0]->ambient);
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        int j = ictx.find(pushforward_subgroup(e->g, ctx.lat.subgroups[i]));
        h.values.push_back(inner.values[static_cast<size_t>(j)]);
      }
      return h;
    }
    case Expr::Kind::Restrict: {
      HeightFn inner = eval(e->args[0], cache);
      const SpecContext& octx = cache.get(e->args[0]->ambient);
      SubgroupStructure st = abstract_subgroup(e->B);
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        int j = octx.find(image_subgroup(st.inclusion, ctx.lat.subgroups[i]));
        h.values.push_back(inner.values[static_cast<size_t>(j)]);
      }
      return h;
    }
    case Expr::Kind::Lift: {
      HeightFn inner = eval(e->args[0], cache);
      const SpecContext& ictx = cache.get(e->args[0]->ambient);
      SubgroupStructure st = abstract_subgroup(e->B);
      HeightFn h;
      for (int i = 0; i < ctx.size(); ++i) {
        if (is_subgroup(ctx.lat.subgroups[i], e->B)) {
          int j = ictx.find(restrict_subgroup(st, ctx.lat.subgroups[i]));
          h.values.push_back(inner.values[static_cast<size_t>(j)]);
        } else {
          h.values.push_back({-1, HT_INF});
        }
      }
      return h;
    }
  }
  throw DomainError("unreachable expression kind");
}

}  // namespace

HeightFn expr_height(const ExprPtr& e, ContextCache& cache) { return eval(e, cache); }

HeightFn witness_height(const WitnessSet& W, const SpecContext& ctx,
                        ContextCache& cache) {
  std::vector<HeightFn> sub;
  for (auto& e : W.elements) sub.push_back(eval(e, cache));
  return combine(ctx, sub, {-1, -1}, iv_max);
}

namespace {

/// A surjection G ->> C_q^r whose kernel contains Bin <= G: r independent
/// order-q characters of G/Bin, read off the invariant factors of the dual
/// presentation K_Bin / R_G.
Homomorphism synth_surjection(const FgAbGroup& G, const Subgroup& Bin, long q, int r) {
  LatticeQuotient LQ = present_lattice_quotient(Bin.lattice, G.relation_lattice());
  IntMatrix dual(G.ambient_dim(), r);
  int got = 0;
  for (size_t i = 0; i < LQ.factors.size() && got < r; ++i) {
    const Int& f = LQ.factors[i];
    if (f == 0 || f % q != 0) continue;
    Int s = f / q;
    dual.col(got++) = LQ.basis.col(static_cast<Eigen::Index>(i)) * s;
  }
  if (got < r) throw DomainError("quotient has too small q-rank");
  std::vector<Int> tor(static_cast<size_t>(r), Int(q));
  Homomorphism g{G, FgAbGroup(0, std::move(tor)), dual};
  if (!hom_is_well_defined(g) || !hom_is_surjective(g))
    throw DomainError("synthesized surjection invalid");
  return g;
}

/// The coordinate copy of C_p^r inside C_p^{m+1} (first r coordinates).
Subgroup coordinate_embedding(long p, int m_plus_1, int r) {
  FgAbGroup E = elementary_abelian(p, m_plus_1);
  IntMatrix gens = IntMatrix::Zero(m_plus_1, m_plus_1 - r);
  for (int j = 0; j < m_plus_1 - r; ++j) gens(r + j, j) = 1;
  return subgroup_from_generators(E, gens);
}

long smallest_prime_factor_not_p(Int order, long p) {
  while (order % p == 0) order /= p;
  if (order <= 1) throw DomainError("quotient has no prime factor besides p");
  for (long d = 2; Int(d) * d <= order; ++d)
    if (order % d == 0) return d;
  return order.get_si();
}

/// The per-pair factor x_{B,B'} of the constructed witness for B.
ExprPtr pair_factor(const SpecContext& ctx, int b, int b2, Ht fb,
                    const SubgroupStructure& st2) {
  const FgAbGroup& A = ctx.group;
  const Subgroup& B = ctx.lat.subgroups[static_cast<size_t>(b)];
  const Subgroup& B2 = ctx.lat.subgroups[static_cast<size_t>(b2)];
  if (!ctx.lat.leq[b][b2]) {
    // B not inside B': kill with an Euler class trivial on B', alive on B.
    for (Eigen::Index c = 0; c < B2.lattice.cols(); ++c) {
      IntVector V = B2.lattice.col(c);
      if (!lattice_contains(B.lattice, V)) return expr_euler_v(A, V, fb);
    }
    throw DomainError("no separating character");  // unreachable
  }
  Subgroup Bin = restrict_subgroup(st2, B);
  if (ctx.lat.ptoral[b][b2]) {
    if (ht_is_inf(fb)) return nullptr;  // v_inf = 1: factor dropped
    int r = std::min(ctx.lat.prank[b][b2], static_cast<int>(fb) + 1);
    Homomorphism g = synth_surjection(st2.group, Bin, ctx.prime, r);
    Subgroup emb = coordinate_embedding(ctx.prime, static_cast<int>(fb) + 1, r);
    ExprPtr inner = expr_restrict(emb, expr_xshift(ctx.prime, fb));
    return expr_lift(B2, expr_inflate(g, inner));
  }
  FgAbGroup Q = quotient_group(B, B2);
  long q = smallest_prime_factor_not_p(Q.order(), ctx.prime);
  Homomorphism g = synth_surjection(st2.group, Bin, q, 1);
  return expr_lift(B2, expr_qkiller(q, g, fb));
}

WitnessSet realize_finite(const SpecContext& ctx, const AdmissibleFn& f) {
  WitnessSet W;
  std::vector<SubgroupStructure> sts;
  for (int i = 0; i < ctx.size(); ++i)
    sts.push_back(abstract_subgroup(ctx.lat.subgroups[static_cast<size_t>(i)]));
  for (int b = 0; b < ctx.size(); ++b) {
    Ht fb = f.values[static_cast<size_t>(b)];
    if (fb == -1) {
      W.elements.push_back(expr_zero(ctx.group));
      continue;
    }
    std::vector<ExprPtr> factors;
    for (int b2 = 0; b2 < ctx.size(); ++b2) {
      if (b2 == b) continue;
      ExprPtr x = pair_factor(ctx, b, b2, fb, sts[static_cast<size_t>(b2)]);
      if (x) factors.push_back(std::move(x));
    }
    if (factors.empty()) factors.push_back(expr_vn(ctx.group, fb));
    W.elements.push_back(expr_product(ctx.group, std::move(factors)));
  }
  return W;
}

WitnessSet realize_circle(const SpecContext& ctx, const AdmissibleFn& f) {
  const FgAbGroup& T = ctx.group;
  const long p = ctx.prime;
  long N = f.exceptions.empty() ? 0 : f.exceptions.rbegin()->first;
  WitnessSet W;
  auto chi = [&](long k) {
    IntVector V(1);
    V(0) = k;
    return V;
  };
  // The tail element: exact f(T) on T and on every C_m beyond the cover,
  // killed on the covered classes.
  {
    std::vector<ExprPtr> factors = {expr_vn(T, f.at_T)};
    for (long m = 1; m <= N; ++m) factors.push_back(expr_euler_v(T, chi(m), f.at_T));
    W.elements.push_back(expr_product(T, std::move(factors)));
  }
  for (long m = 1; m <= N; ++m) {
    Ht fm = f.at(SubRef::circle(m));
    if (fm == -1) {
      W.elements.push_back(expr_zero(T));
      continue;
    }
    // The constant factor handles the pair (C_m, tail): fm <= f(T) by the
    // torus constraint, so it caps nothing it shouldn't.
    std::vector<ExprPtr> factors = {expr_vn(T, fm)};
    for (long m2 = 1; m2 <= N; ++m2) {
      if (m2 == m) continue;
      if (m2 % m != 0) {
        factors.push_back(expr_euler_v(T, chi(m2), fm));
        continue;
      }
      Subgroup B2 = circle_cyclic(T, m2);
      SubgroupStructure st2 = abstract_subgroup(B2);
      Subgroup Bin = restrict_subgroup(st2, circle_cyclic(T, m));
      long c = m2 / m;
      if (is_p_power(c, p)) {
        if (ht_is_inf(fm)) continue;
        Homomorphism g = synth_surjection(st2.group, Bin, p, 1);
        Subgroup emb = coordinate_embedding(p, static_cast<int>(fm) + 1, 1);
        ExprPtr inner = expr_restrict(emb, expr_xshift(p, fm));
        factors.push_back(expr_lift(B2, expr_inflate(g, inner)));
      } else {
        long cc = c;
        while (cc % p == 0) cc /= p;
        long q = smallest_prime_factor_not_p(Int(cc), p);
        Homomorphism g = synth_surjection(st2.group, Bin, q, 1);
        factors.push_back(expr_lift(B2, expr_qkiller(q, g, fm)));
      }
    }
    W.elements.push_back(expr_product(T, std::move(factors)));
  }
  return W;
}

}  // namespace

WitnessSet realize(const SpecContext& ctx, const AdmissibleFn& f, ContextCache&) {
  AdmissibleCheck c = is_admissible(ctx, f);
  if (!c.ok) throw DomainError("cannot realize an inadmissible function");
  return ctx.circle ? realize_circle(ctx, f) : realize_finite(ctx, f);
}

RealizationCheck verify_realization(const SpecContext& ctx, const AdmissibleFn& f,
                                    const WitnessSet& W, ContextCache& cache) {
  HeightFn h = witness_height(W, ctx, cache);
  auto fail = [](SubRef s) {
    RealizationCheck r;
    r.ok = false;
    r.where = s;
    return r;
  };
  if (!ctx.circle) {
    for (int i = 0; i < ctx.size(); ++i) {
      HtIv v = h.values[static_cast<size_t>(i)];
      if (!v.exact() || v.lo != f.values[static_cast<size_t>(i)])
        return fail(SubRef::finite(i));
    }
    return {};
  }
  auto check_at = [&](SubRef s) {
    HtIv v = h.at(s);
    return v.exact() && v.lo == f.at(s);
  };
  if (!check_at(SubRef::circle_T())) return fail(SubRef::circle_T());
  std::vector<long> keys;
  for (auto& [m, _] : f.exceptions) keys.push_back(m);
  for (auto& [m, _] : h.exceptions) keys.push_back(m);
  for (long m : keys)
    if (!check_at(SubRef::circle(m))) return fail(SubRef::circle(m));
  // the generic classes (reported with the marker index -1)
  if (!(h.generic.exact() && h.generic.lo == f.generic))
    return fail(SubRef::circle(-1));
  return {};
}

}  // namespace specinv
