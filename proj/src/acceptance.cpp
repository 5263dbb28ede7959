#include "specinv/acceptance.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>

#include "specinv/fgl.hpp"
#include "specinv/support.hpp"
#include "specinv/witness.hpp"

namespace specinv {

namespace {

struct Checker {
  bool ok = true;
  std::string why;
  long checks = 0;

  void expect(bool c, const std::string& what) {
    ++checks;
    if (ok && !c) {
      ok = false;
      why = what;
    }
  }
};

std::vector<PrimePoint> grid_points(const SpecContext& ctx, int maxn) {
  std::vector<PrimePoint> pts;
  for (int i = 0; i < ctx.size(); ++i) {
    for (Ht n = 0; n <= maxn; ++n) pts.push_back({SubRef::finite(i), n});
    pts.push_back({SubRef::finite(i), HT_INF});
  }
  return pts;
}

std::string pt_str(const SpecContext& ctx, const PrimePoint& P) {
  (void)ctx;
  return "(" + P.sub.to_string() + "," + ht_to_string(P.n) + ")";
}

// ---- criterion 1: the inclusion law ----------------------------------------

void crit_inclusion(Checker& c) {
  struct Case {
    FgAbGroup A;
    long p;
  };
  const Case cases[] = {{cyclic_group(2), 2},      {cyclic_group(3), 2},
                        {cyclic_group(4), 2},      {cyclic_group(6), 2},
                        {FgAbGroup(0, {2, 2}), 2}, {FgAbGroup(0, {2, 4}), 2},
                        {cyclic_group(3), 3},      {cyclic_group(9), 3}};
  for (const Case& cs : cases) {
    SpecContext ctx = make_finite_context(cs.A, cs.p);
    std::vector<PrimePoint> pts = grid_points(ctx, 5);
    size_t N = pts.size();
    std::vector<std::vector<char>> leq(N, std::vector<char>(N, 0));
    for (size_t a = 0; a < N; ++a)
      for (size_t b = 0; b < N; ++b) leq[a][b] = includes(ctx, pts[a], pts[b]);
    for (size_t a = 0; a < N; ++a) {
      c.expect(leq[a][a], cs.A.to_string() + ": includes not reflexive");
      for (size_t b = 0; b < N; ++b) {
        if (a != b && leq[a][b])
          c.expect(!leq[b][a], cs.A.to_string() + ": includes not antisymmetric at " +
                                   pt_str(ctx, pts[a]) + pt_str(ctx, pts[b]));
        if (!leq[a][b]) continue;
        for (size_t d = 0; d < N; ++d)
          if (leq[b][d])
            c.expect(leq[a][d], cs.A.to_string() + ": includes not transitive");
      }
    }
    for (size_t a = 0; a < N; ++a) {
      ClosedSet V = closure(ctx, {pts[a]});
      for (size_t b = 0; b < N; ++b)
        c.expect(V.contains(ctx, pts[b]) == static_cast<bool>(leq[a][b]),
                 cs.A.to_string() + ": point closure differs from the up-set at " +
                     pt_str(ctx, pts[a]));
    }
  }

  // cyclic chain: I_{C_{p^k},n} <= I_{1,n+1}
  struct Chain {
    FgAbGroup A;
    long p;
  };
  for (const Chain& ch : {Chain{cyclic_group(2), 2}, Chain{cyclic_group(4), 2},
                          Chain{cyclic_group(3), 3}, Chain{cyclic_group(9), 3}}) {
    SpecContext ctx = make_finite_context(ch.A, ch.p);
    int full = ctx.find(full_subgroup(ch.A));
    int triv = ctx.find(trivial_subgroup(ch.A));
    for (Ht n = 0; n <= 5; ++n) {
      c.expect(includes(ctx, {SubRef::finite(full), n}, {SubRef::finite(triv), n + 1}),
               ch.A.to_string() + ": cyclic n+1 inclusion fails");
      c.expect(!includes(ctx, {SubRef::finite(full), n}, {SubRef::finite(triv), n}),
               ch.A.to_string() + ": inclusion without the shift should fail");
    }
  }

  // elementary abelian of rank k >= 2: the n+k-1 shift is not enough
  SpecContext ctx22 = make_finite_context(FgAbGroup(0, {2, 2}), 2);
  int full = ctx22.find(full_subgroup(ctx22.group));
  int triv = ctx22.find(trivial_subgroup(ctx22.group));
  for (Ht n = 0; n <= 5; ++n) {
    c.expect(!includes(ctx22, {SubRef::finite(full), n}, {SubRef::finite(triv), n + 1}),
             "rank-2 inclusion with shift n+1 should fail");
    c.expect(includes(ctx22, {SubRef::finite(full), n}, {SubRef::finite(triv), n + 2}),
             "rank-2 inclusion with shift n+2 fails");
  }
}

// ---- criterion 2: lattice of closed sets -----------------------------------

void crit_topology(Checker& c) {
  for (FgAbGroup A : {cyclic_group(2), FgAbGroup(0, {2, 2})}) {
    SpecContext ctx = make_finite_context(A, 2);
    std::vector<AdmissibleFn> fns = enumerate_admissible(ctx, 3);
    std::vector<PrimePoint> pts;
    for (int i = 0; i < ctx.size(); ++i) {
      for (Ht n = 0; n <= 3; ++n) pts.push_back({SubRef::finite(i), n});
      pts.push_back({SubRef::finite(i), HT_INF});
    }
    size_t N = pts.size();

    auto member_bits = [&](const AdmissibleFn& f) {
      ClosedSet V{f};
      std::uint64_t bits = 0;
      for (size_t b = 0; b < N; ++b)
        if (V.contains(ctx, pts[b])) bits |= std::uint64_t(1) << b;
      return bits;
    };
    std::vector<std::uint64_t> bits(fns.size());
    for (size_t i = 0; i < fns.size(); ++i) bits[i] = member_bits(fns[i]);

    auto combine = [&](const AdmissibleFn& f, const AdmissibleFn& g, bool take_min) {
      std::vector<Ht> v(f.values.size());
      for (size_t i = 0; i < v.size(); ++i)
        v[i] = take_min ? std::min(f.values[i], g.values[i])
                        : std::max(f.values[i], g.values[i]);
      return AdmissibleFn::finite_fn(std::move(v));
    };

    for (size_t i = 0; i < fns.size(); ++i)
      for (size_t j = i; j < fns.size(); ++j) {
        AdmissibleFn mn = combine(fns[i], fns[j], true);
        AdmissibleFn mx = combine(fns[i], fns[j], false);
        c.expect(static_cast<bool>(is_admissible(ctx, mn)),
                 A.to_string() + ": min of admissible not admissible");
        c.expect(static_cast<bool>(is_admissible(ctx, mx)),
                 A.to_string() + ": max of admissible not admissible");
        c.expect(member_bits(mn) == (bits[i] | bits[j]),
                 A.to_string() + ": V_min differs from the union");
        c.expect(member_bits(mx) == (bits[i] & bits[j]),
                 A.to_string() + ": V_max differs from the intersection");
        ClosedSet u = closed_union(ctx, ClosedSet{fns[i]}, ClosedSet{fns[j]});
        ClosedSet n = closed_intersection(ctx, ClosedSet{fns[i]}, ClosedSet{fns[j]});
        c.expect(member_bits(u.boundary) == (bits[i] | bits[j]),
                 A.to_string() + ": closed_union point set wrong");
        c.expect(member_bits(n.boundary) == (bits[i] & bits[j]),
                 A.to_string() + ": closed_intersection point set wrong");
      }

    // specialization order recovered from the V_f family = includes()
    for (size_t a = 0; a < N; ++a)
      for (size_t b = 0; b < N; ++b) {
        bool recovered = true;
        for (size_t i = 0; i < fns.size() && recovered; ++i)
          if ((bits[i] >> a & 1) && !(bits[i] >> b & 1)) recovered = false;
        c.expect(recovered == includes(ctx, pts[a], pts[b]),
                 A.to_string() + ": recovered specialization order differs at " +
                     pt_str(ctx, pts[a]) + pt_str(ctx, pts[b]));
      }
  }
}

// ---- criterion 3: realization roundtrip ------------------------------------

void crit_realization(Checker& c) {
  for (FgAbGroup A : {cyclic_group(2), cyclic_group(4), FgAbGroup(0, {2, 2}),
                      cyclic_group(6)}) {
    ContextCache cache(2);
    const SpecContext& ctx = cache.get(A);
    for (const AdmissibleFn& f : enumerate_admissible(ctx, 3)) {
      WitnessSet W = realize(ctx, f, cache);
      c.expect(static_cast<bool>(verify_realization(ctx, f, W, cache)),
               A.to_string() + ": realization fails for " + f.to_string(ctx));
    }
  }

  // circle, <= 2 exceptions with indices <= 12
  ContextCache cache(2);
  SpecContext ctx = make_circle_context(2);
  const Ht vals[] = {-1, 0, 1, 2, 3, HT_INF};
  auto try_fn = [&](Ht v0, std::map<long, Ht> exc) {
    AdmissibleFn f = AdmissibleFn::circle_fn(v0, v0, std::move(exc));
    if (!is_admissible(ctx, f)) return;
    WitnessSet W = realize(ctx, f, cache);
    c.expect(static_cast<bool>(verify_realization(ctx, f, W, cache)),
             "circle realization fails for " + f.to_string(ctx));
  };
  for (Ht v0 : vals) {
    try_fn(v0, {});
    for (long m1 = 1; m1 <= 12; ++m1)
      for (Ht v1 : vals) {
        if (v1 == v0) continue;
        try_fn(v0, {{m1, v1}});
        for (long m2 = m1 + 1; m2 <= 12; ++m2)
          for (Ht v2 : vals) {
            if (v2 == v0) continue;
            try_fn(v0, {{m1, v1}, {m2, v2}});
          }
      }
  }
}

// ---- criterion 4: the p-typical engine -------------------------------------

void crit_ptypical(Checker& c) {
  FGL F2 = universal_p_typical(2, 16, 3);
  FGL F3 = universal_p_typical(3, 9, 2);
  c.expect(static_cast<bool>(fgl_axioms_check(F2)), "axioms fail for (p,D,N)=(2,16,3)");
  c.expect(static_cast<bool>(fgl_axioms_check(F3)), "axioms fail for (p,D,N)=(3,9,2)");

  struct Low {
    const FGL* F;
    long p;
    int n, deg;
    std::string coeff;
  };
  for (const Low& lo : {Low{&F2, 2, 1, 2, "v1"}, Low{&F2, 2, 2, 4, "v2"},
                        Low{&F3, 3, 1, 3, "v1"}}) {
    FGL Fn = reduce_mod_In(*lo.F, lo.n);
    Series1<VPoly> ps = n_series(Fn, lo.p);
    c.expect(!ps.c.empty(), "[p]-series vanished mod I_n");
    if (ps.c.empty()) continue;
    auto low = ps.c.begin();
    c.expect(low->first == lo.deg && low->second.to_string() == lo.coeff,
             "[p] mod I_" + std::to_string(lo.n) + " lowest term is " +
                 low->second.to_string() + " in degree " + std::to_string(low->first));
  }
}

// ---- criterion 5: psi and blueshift ----------------------------------------

void crit_psi_blueshift(Checker& c) {
  Series1<VPoly> p21 = psi_series(2, 1, 1, 8);
  c.expect(p21.at(0).to_string() == "v1", "psi_2^(1) constant term is not v1");

  Series1<VPoly> p41 = psi_series(2, 1, 2, 16);
  c.expect(p41.at(0).to_string() == "v1", "psi_4^(1) constant term is not v1");
  VRing r = p41.at(0).ring();
  r.killed |= 1u;  // kill v1
  Series1<VPoly> red = s1_map(p41, [&](const VPoly& v) { return v.reduced(r); });
  c.expect(!red.c.empty(), "psi_4^(1) vanishes mod v1");
  if (!red.c.empty()) {
    auto low = red.c.begin();
    c.expect(low->first == 8 && low->second.to_string() == "v2^3",
             "psi_4^(1) mod v1 lowest term is " + low->second.to_string() +
                 " in degree " + std::to_string(low->first));
  }

  struct Case {
    long p;
    int n, k, D;
  };
  for (const Case& cs : {Case{2, 2, 1, 16}, Case{2, 2, 2, 16}, Case{3, 2, 1, 9}}) {
    BlueshiftReport rep = blueshift_report(cs.p, cs.n, cs.k, cs.D);
    std::string tag = "(p,n,k)=(" + std::to_string(cs.p) + "," + std::to_string(cs.n) +
                      "," + std::to_string(cs.k) + ")";
    c.expect(rep.constant_is_unit_times_vnm1, tag + ": constant term not unit*v_{n-1}");
    c.expect(rep.lowest_is_unit, tag + ": lowest coefficient mod v_{n-1} not a unit");
    c.expect(rep.height_drop == 1, tag + ": height drop != 1");
  }
}

// ---- criterion 6: the two multiplicative C_2 models ------------------------

void crit_gm_c2(Checker& c) {
  for (int sign : {1, -1}) {
    GmC2 gm = gm_c2(sign);
    c.expect(gm.euler == Int(2 * sign), "gm_c2 Euler class is not sign*2");
    c.expect(abs(gm.euler) == 2, "quotient by the Euler class has order != 2");
    c.expect(static_cast<bool>(fgl_axioms_check(gm.law)), "gm_c2 law fails axioms");
  }
  GmC2 gm = gm_c2(1);
  LevelData lv{2, 1, {VPoly(), VPoly(gm.law.ring, 2)}};
  c.expect(level_is_homomorphism(gm.law, lv), "e_V = 2 is not a C_2 level");
  Series1<VPoly> vb = level_vbar(gm.law, lv);
  c.expect(vb.at(0) == VPoly(gm.law.ring, 1), "vbar constant term is not 1");
  bool constant = true;
  for (const auto& [k, v] : vb.c) constant &= k == 0;
  c.expect(constant, "vbar is not the constant series 1");
  // mod 2 the constant is the unit of the height-1 generator data
  c.expect(mpz_class(vb.at(0).constant_value().get_num()) % 2 == 1,
           "vbar constant is not a 2-adic unit");
}

// ---- criterion 7: heights --------------------------------------------------

void crit_heights(Checker& c) {
  for (long p : {2L, 3L}) {
    VRing fp{p, p, 0, 0, 0};
    c.expect(fgl_height(multiplicative_fgl(fp, 8), p).height == 1,
             "multiplicative height != 1 at p=" + std::to_string(p));
    HeightResult add = fgl_height(additive_fgl(fp, 8), p);
    c.expect(ht_is_inf(add.height) && add.truncation_caveat,
             "additive height not flagged infinite at p=" + std::to_string(p));
    for (int n = 1; n <= 3; ++n) {
      int D = 1;
      for (int i = 0; i < n; ++i) D *= static_cast<int>(p);
      HeightResult h = fgl_height(reduce_mod_In(honda_fgl(p, n, D + 1), 1), p);
      c.expect(h.height == n && !h.truncation_caveat,
               "Honda(" + std::to_string(n) + ") height wrong at p=" + std::to_string(p));
    }
  }
}

// ---- criterion 8: support properties ---------------------------------------

void crit_support(Checker& c) {
  for (FgAbGroup A : {FgAbGroup(0, {2, 2}), cyclic_group(4)}) {
    SpecContext ctx = make_finite_context(A, 2);
    c.expect(balmer_compare(ctx, 4).order_reversed,
             A.to_string() + ": Balmer order is not the reversed inclusion order");

    std::vector<PrimePoint> pts = grid_points(ctx, 4);
    std::mt19937_64 rng(0x5eed2026);
    for (int it = 0; it < 500; ++it) {
      TypeFunction t1 = random_type_function(ctx, rng, 4);
      TypeFunction t2 = random_type_function(ctx, rng, 4);
      ClosedSet s1 = support_of(ctx, t1), s2 = support_of(ctx, t2);

      // closure-stability: the support equals the closure of its points
      std::vector<PrimePoint> inside;
      for (const PrimePoint& P : pts)
        if (s1.contains(ctx, P)) inside.push_back(P);
      if (!inside.empty()) {
        ClosedSet cl = closure(ctx, inside);
        for (const PrimePoint& P : pts)
          c.expect(cl.contains(ctx, P) == s1.contains(ctx, P),
                   A.to_string() + ": support is not closure-stable");
      }

      ClosedSet ssm = support_of(ctx, smash(t1, t2));
      ClosedSet swd = support_of(ctx, wedge(t1, t2));
      for (const PrimePoint& P : pts) {
        bool in1 = s1.contains(ctx, P), in2 = s2.contains(ctx, P);
        c.expect(ssm.contains(ctx, P) == (in1 && in2),
                 A.to_string() + ": supp(smash) != intersection");
        c.expect(swd.contains(ctx, P) == (in1 || in2),
                 A.to_string() + ": supp(wedge) != union");
      }

      for (const Subgroup& B : ctx.lat.subgroups) {
        PhiResult phi = geom_fixed_points(ctx, t1, B);
        ClosedSet sq = support_of(phi.ctx, phi.t);
        for (int j = 0; j < phi.ctx.size(); ++j)
          for (Ht n : {Ht(0), Ht(1), Ht(2), Ht(3), Ht(4), HT_INF}) {
            PrimePoint Q{SubRef::finite(j), n};
            PrimePoint lifted{SubRef::finite(phi.preimage[static_cast<size_t>(j)]), n};
            c.expect(sq.contains(phi.ctx, Q) == s1.contains(ctx, lifted),
                     A.to_string() + ": Phi support is not the preimage");
          }
      }
    }
  }
}

// ---- criterion 9: cross-prime ----------------------------------------------

void crit_crossprime(Checker& c) {
  FgAbGroup A = cyclic_group(6);
  std::vector<Subgroup> subs = enumerate_subgroups(A);
  for (const Subgroup& B : subs)
    for (const Subgroup& Bp : subs)
      for (long p : {2L, 3L})
        for (long q : {2L, 3L}) {
          if (p != q) {
            for (Ht n = 1; n <= 3; ++n)
              for (Ht np : {Ht(0), Ht(1), Ht(2), Ht(3), Ht(4), HT_INF})
                c.expect(!includes_crossprime(A, B, p, n, Bp, q, np),
                         "cross-prime inclusion accepted with n >= 1");
          } else {
            // intra-prime sanity: reflexivity at every height
            for (Ht n = 0; n <= 2; ++n)
              c.expect(includes_crossprime(A, B, p, n, B, q, n),
                       "same-prime reflexive inclusion rejected");
          }
        }
  // (B, p, 0) = (B, q, 0) identifications
  for (const Subgroup& B : subs) {
    c.expect(includes_crossprime(A, B, 2, 0, B, 3, 0) &&
                 includes_crossprime(A, B, 3, 0, B, 2, 0),
             "height-0 cross-prime identification rejected");
  }
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Checker&)> run;
  };
  const Entry entries[] = {
      {1, "inclusion-law", crit_inclusion},
      {2, "topology-lattice", crit_topology},
      {3, "realization-roundtrip", crit_realization},
      {4, "fgl-p-typical", crit_ptypical},
      {5, "fgl-psi-blueshift", crit_psi_blueshift},
      {6, "fgl-gm-c2", crit_gm_c2},
      {7, "fgl-heights", crit_heights},
      {8, "support-properties", crit_support},
      {9, "cross-prime", crit_crossprime},
  };
  std::vector<CriterionResult> results;
  for (const Entry& e : entries) {
    if (std::string(e.name).find(filter) == std::string::npos) continue;
    Checker c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.ok = false;
      c.why = std::string("exception: ") + ex.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.pass = c.ok;
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    std::ostringstream d;
    if (c.ok)
      d << c.checks << " checks";
    else
      d << c.why;
    r.detail = d.str();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace specinv
