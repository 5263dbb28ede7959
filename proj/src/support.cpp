#include "specinv/support.hpp"

#include <algorithm>
#include <sstream>

namespace specinv {

namespace {

std::string ty_to_string(Ht t) {
  return ty_is_trivial(t) ? "trivial" : ht_to_string(t);
}

bool ty_valid(Ht t) {
  return t == TY_TRIVIAL || t == HT_INF || (t >= 0 && t < HT_OMEGA);
}

bool is_p_power(long x, long p) {
  while (x % p == 0) x /= p;
  return x == 1;
}

Ht ty_boundary(Ht t) {
  if (ty_is_trivial(t)) return HT_INF;
  if (ht_is_inf(t)) return HT_OMEGA;
  return t - 1;
}

RealizableCheck violation(SubRef sub, SubRef super, Ht bound) {
  return {false, sub, super, bound};
}

}  // namespace

TypeFunction TypeFunction::finite_ty(std::vector<Ht> v) {
  for (Ht t : v)
    if (!ty_valid(t)) throw DomainError("type value out of range");
  TypeFunction out;
  out.values = std::move(v);
  return out;
}

TypeFunction TypeFunction::circle_ty(Ht at_T, Ht generic,
                                     std::map<long, Ht> exc) {
  if (generic != at_T)
    throw DomainError("local constancy forces the generic type to equal the "
                      "type at T");
  if (!ty_valid(at_T)) throw DomainError("type value out of range");
  TypeFunction out;
  out.circle = true;
  out.at_T = at_T;
  out.generic = generic;
  for (auto& [m, v] : exc) {
    if (m < 1) throw DomainError("exception index must be >= 1");
    if (!ty_valid(v)) throw DomainError("type value out of range");
    if (v != generic) out.exceptions.emplace(m, v);
  }
  return out;
}

Ht TypeFunction::at(const SubRef& s) const {
  if (!circle) {
    if (s.is_circle()) throw DomainError("finite type function, circle ref");
    return values.at(static_cast<size_t>(s.index));
  }
  if (!s.is_circle()) throw DomainError("circle type function, finite ref");
  if (s.is_T()) return at_T;
  auto it = exceptions.find(s.cyclic_m);
  return it == exceptions.end() ? generic : it->second;
}

bool TypeFunction::operator==(const TypeFunction& o) const {
  return circle == o.circle && values == o.values && at_T == o.at_T &&
         generic == o.generic && exceptions == o.exceptions;
}

std::string TypeFunction::to_string(const SpecContext& ctx) const {
  std::ostringstream os;
  if (!circle) {
    os << "{";
    for (size_t i = 0; i < values.size(); ++i)
      os << (i ? ", " : "") << SubRef::finite(static_cast<int>(i)).to_string()
         << ": " << ty_to_string(values[i]);
    os << "}";
  } else {
    os << "{T: " << ty_to_string(at_T) << ", generic: " << ty_to_string(generic);
    for (auto& [m, v] : exceptions) os << ", C" << m << ": " << ty_to_string(v);
    os << "}";
  }
  (void)ctx;
  return os.str();
}

RealizableCheck is_realizable_type(const SpecContext& ctx,
                                   const TypeFunction& t) {
  if (t.circle != ctx.circle) throw DomainError("context mismatch");
  if (!ctx.circle) {
    if (static_cast<int>(t.values.size()) != ctx.size())
      throw DomainError("type function size mismatch");
    for (int i = 0; i < ctx.size(); ++i)
      for (int j = 0; j < ctx.size(); ++j) {
        if (!ctx.lat.leq[i][j] || !ctx.lat.ptoral[i][j]) continue;
        Ht bound = ty_add(t.values[static_cast<size_t>(j)],
                          ctx.lat.prank[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        if (t.values[static_cast<size_t>(i)] > bound)
          return violation(SubRef::finite(i), SubRef::finite(j), bound);
      }
    return {};
  }
  long p = ctx.prime;
  for (auto& [m, v] : t.exceptions) {
    // Every finite subgroup sits below T.
    if (v > t.at_T) return violation(SubRef::circle(m), SubRef::circle_T(), t.at_T);
    // Exceptional p-power multiples.
    for (auto& [m2, v2] : t.exceptions) {
      if (m2 <= m || m2 % m != 0 || !is_p_power(m2 / m, p)) continue;
      Ht bound = ty_add(v2, 1);
      if (v > bound) return violation(SubRef::circle(m), SubRef::circle(m2), bound);
    }
    // Cofinitely many p-power multiples carry the generic value.
    Ht bound = ty_add(t.generic, 1);
    if (v > bound) return violation(SubRef::circle(m), SubRef::circle(m * p), bound);
    // Generic p-power divisors below this exception.
    for (long d = m; d % p == 0;) {
      d /= p;
      if (t.exceptions.count(d)) continue;
      Ht gb = ty_add(v, 1);
      if (t.generic > gb) return violation(SubRef::circle(d), SubRef::circle(m), gb);
      break;
    }
  }
  return {};
}

ClosedSet support_of(const SpecContext& ctx, const TypeFunction& t) {
  if (RealizableCheck c = is_realizable_type(ctx, t); !c)
    throw DomainError("unrealizable type function (violation at " +
                      c.sub.to_string() + " over " + c.super.to_string() + ")");
  AdmissibleFn b;
  if (!ctx.circle) {
    std::vector<Ht> bs(t.values.size());
    for (size_t i = 0; i < t.values.size(); ++i) bs[i] = ty_boundary(t.values[i]);
    b = AdmissibleFn::finite_fn(std::move(bs));
  } else {
    std::map<long, Ht> exc;
    for (auto& [m, v] : t.exceptions) exc.emplace(m, ty_boundary(v));
    b = AdmissibleFn::circle_fn(ty_boundary(t.at_T), ty_boundary(t.generic),
                                std::move(exc));
  }
  if (!is_admissible(ctx, b))
    throw DomainError("support boundary is not closed");  // unreachable for realizable t
  return ClosedSet{std::move(b)};
}

namespace {

TypeFunction pointwise(const TypeFunction& a, const TypeFunction& b, bool max) {
  if (a.circle != b.circle) throw DomainError("context mismatch");
  auto comb = [&](Ht x, Ht y) { return max ? std::max(x, y) : std::min(x, y); };
  TypeFunction out;
  out.circle = a.circle;
  if (!a.circle) {
    if (a.values.size() != b.values.size())
      throw DomainError("type function size mismatch");
    out.values.resize(a.values.size());
    for (size_t i = 0; i < a.values.size(); ++i)
      out.values[i] = comb(a.values[i], b.values[i]);
    return out;
  }
  out.at_T = comb(a.at_T, b.at_T);
  out.generic = comb(a.generic, b.generic);
  std::map<long, Ht> exc;
  for (auto& [m, v] : a.exceptions) exc[m] = comb(v, b.at(SubRef::circle(m)));
  for (auto& [m, v] : b.exceptions) exc[m] = comb(v, a.at(SubRef::circle(m)));
  for (auto& [m, v] : exc)
    if (v != out.generic) out.exceptions.emplace(m, v);
  return out;
}

}  // namespace

TypeFunction smash(const TypeFunction& t1, const TypeFunction& t2) {
  return pointwise(t1, t2, true);
}

TypeFunction wedge(const TypeFunction& t1, const TypeFunction& t2) {
  return pointwise(t1, t2, false);
}

bool cofiber_subadditive(const SpecContext& ctx, const TypeFunction& tx,
                         const TypeFunction& ty, const TypeFunction& tz) {
  ClosedSet sx = support_of(ctx, tx), sy = support_of(ctx, ty),
            sz = support_of(ctx, tz);
  // supp(tx) subset of supp(ty) u supp(tz), as boundary inequalities.
  auto le = [&](const SubRef& s) {
    return sx.boundary.at(s) >=
           std::min(sy.boundary.at(s), sz.boundary.at(s));
  };
  if (!ctx.circle) {
    for (int i = 0; i < ctx.size(); ++i)
      if (!le(SubRef::finite(i))) return false;
    return true;
  }
  if (!le(SubRef::circle_T())) return false;
  std::map<long, char> keys;
  for (auto& [m, v] : sx.boundary.exceptions) keys[m] = 1;
  for (auto& [m, v] : sy.boundary.exceptions) keys[m] = 1;
  for (auto& [m, v] : sz.boundary.exceptions) keys[m] = 1;
  keys[1] = 1;  // a generic representative
  for (auto& [m, u] : keys)
    if (!le(SubRef::circle(m))) return false;
  return true;
}

PhiResult geom_fixed_points(const SpecContext& ctx, const TypeFunction& t,
                            const Subgroup& B) {
  if (ctx.circle || t.circle)
    throw DomainError("geometric fixed points need a finite context");
  ctx.find(B);  // asserts B in the lattice
  const FgAbGroup& A = ctx.group;
  LatticeQuotient LQ = present_lattice_quotient(B.lattice, A.relation_lattice());
  // A/B from the invariant factors: free summands first, torsion ascending.
  std::vector<int> cols;
  int rank = 0;
  for (size_t i = 0; i < LQ.factors.size(); ++i)
    if (LQ.factors[i] == 0) {
      cols.push_back(static_cast<int>(i));
      ++rank;
    }
  std::vector<std::pair<Int, int>> tor;
  for (size_t i = 0; i < LQ.factors.size(); ++i)
    if (LQ.factors[i] > 1) tor.emplace_back(LQ.factors[i], static_cast<int>(i));
  std::sort(tor.begin(), tor.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Int> torsion;
  for (auto& [f, i] : tor) {
    torsion.push_back(f);
    cols.push_back(i);
  }
  FgAbGroup Q(rank, std::move(torsion));
  IntMatrix dual(A.ambient_dim(), static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    dual.col(static_cast<int>(c)) = LQ.basis.col(cols[c]);
  Homomorphism proj{A, Q, std::move(dual)};
  if (!hom_is_well_defined(proj) || !hom_is_surjective(proj))
    throw DomainError("quotient projection construction failed");

  PhiResult out{make_finite_context(Q, ctx.prime), {}, proj, {}};
  out.t.values.resize(static_cast<size_t>(out.ctx.size()));
  out.preimage.resize(static_cast<size_t>(out.ctx.size()));
  for (int j = 0; j < out.ctx.size(); ++j) {
    const Subgroup& S = out.ctx.lat.subgroups[static_cast<size_t>(j)];
    // K_{q^{-1}(S)} = q*(K_S) + relations: the generator columns are the
    // pulled-back characters cutting out the preimage.
    IntMatrix pulled = proj.dual_matrix * S.lattice;
    Subgroup pre = subgroup_from_generators(A, pulled);
    int pi = ctx.find(pre);
    out.preimage[static_cast<size_t>(j)] = pi;
    out.t.values[static_cast<size_t>(j)] = t.values[static_cast<size_t>(pi)];
  }
  return out;
}

BalmerCompare balmer_compare(const SpecContext& ctx, int H) {
  if (ctx.circle) throw DomainError("balmer_compare needs a finite lattice");
  BalmerCompare out;
  for (int i = 0; i < ctx.size(); ++i)
    for (Ht n = 0; n <= H; ++n)
      out.points.push_back({SubRef::finite(i), n});
  size_t N = out.points.size();
  out.inv_leq.assign(N, std::vector<char>(N, 0));
  out.balmer_leq.assign(N, std::vector<char>(N, 0));
  // Basic closed sets of the Balmer side: {(B, n) : n >= f(B)} over
  // admissible f; values up to H+1 suffice to separate points up to height H.
  std::vector<AdmissibleFn> fns = enumerate_admissible(ctx, H + 1);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j) {
      out.inv_leq[i][j] = includes(ctx, out.points[i], out.points[j]);
      bool bal = true;
      for (const AdmissibleFn& f : fns) {
        // P_j inside P_i: every basic closed set containing P_i contains P_j.
        if (f.at(out.points[i].sub) <= out.points[i].n &&
            f.at(out.points[j].sub) > out.points[j].n) {
          bal = false;
          break;
        }
      }
      out.balmer_leq[i][j] = bal;
    }
  out.order_reversed = true;
  std::ostringstream os;
  for (size_t i = 0; i < N && out.order_reversed; ++i)
    for (size_t j = 0; j < N; ++j)
      if (out.inv_leq[i][j] != out.balmer_leq[i][j]) {
        out.order_reversed = false;
        os << "mismatch: I(" << out.points[i].sub.to_string() << ","
           << ht_to_string(out.points[i].n) << ") vs I("
           << out.points[j].sub.to_string() << ","
           << ht_to_string(out.points[j].n) << ")";
        break;
      }
  if (out.order_reversed)
    os << "order reversal certified on " << N << " points (" << fns.size()
       << " basis functions)";
  out.certificate = os.str();
  return out;
}

TypeFunction random_type_function(const SpecContext& ctx, std::mt19937_64& rng,
                                  int maxv) {
  auto draw = [&]() -> Ht {
    long r = static_cast<long>(rng() % static_cast<unsigned long>(maxv + 3));
    if (r == maxv + 1) return HT_INF;
    if (r == maxv + 2) return TY_TRIVIAL;
    return static_cast<Ht>(r);
  };
  TypeFunction t;
  t.circle = ctx.circle;
  if (!ctx.circle) {
    t.values.resize(static_cast<size_t>(ctx.size()));
    for (auto& v : t.values) v = draw();
  } else {
    t.at_T = t.generic = draw();
    int nexc = static_cast<int>(rng() % 3);
    for (int i = 0; i < nexc; ++i) {
      long m = 1 + static_cast<long>(rng() % 12);
      Ht v = draw();
      if (v != t.generic) t.exceptions[m] = v;
    }
  }
  // Deterministic repair: lower violating values to their admissible bound.
  for (RealizableCheck c = is_realizable_type(ctx, t); !c;
       c = is_realizable_type(ctx, t)) {
    if (!ctx.circle) {
      t.values[static_cast<size_t>(c.sub.index)] = c.bound;
    } else if (c.sub.is_T() || !t.exceptions.count(c.sub.cyclic_m)) {
      t.at_T = t.generic = c.bound;
    } else {
      t.exceptions[c.sub.cyclic_m] = c.bound;
    }
  }
  // Drop exceptions that collapsed onto the generic value.
  if (ctx.circle)
    for (auto it = t.exceptions.begin(); it != t.exceptions.end();)
      it = it->second == t.generic ? t.exceptions.erase(it) : std::next(it);
  return t;
}

}  // namespace specinv
