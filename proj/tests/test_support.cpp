#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specinv/support.hpp"

using namespace specinv;

namespace {

std::vector<Ht> ty_domain(int maxv) {
  std::vector<Ht> d;
  for (int v = 0; v <= maxv; ++v) d.push_back(v);
  d.push_back(HT_INF);
  d.push_back(TY_TRIVIAL);
  return d;
}

// All realizable type functions with values in ty_domain(maxv).
std::vector<TypeFunction> all_realizable(const SpecContext& ctx, int maxv) {
  std::vector<TypeFunction> out;
  std::vector<Ht> dom = ty_domain(maxv);
  std::vector<Ht> cur(static_cast<size_t>(ctx.size()));
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == cur.size()) {
      TypeFunction t = TypeFunction::finite_ty(cur);
      if (is_realizable_type(ctx, t)) out.push_back(std::move(t));
      return;
    }
    for (Ht v : dom) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<PrimePoint> probe_points(const SpecContext& ctx, int maxn) {
  std::vector<PrimePoint> pts;
  for (int i = 0; i < ctx.size(); ++i) {
    for (Ht n = 0; n <= maxn; ++n) pts.push_back({SubRef::finite(i), n});
    pts.push_back({SubRef::finite(i), HT_INF});
  }
  return pts;
}

}  // namespace

TEST_CASE("type function construction and validation") {
  CHECK_THROWS_AS(TypeFunction::finite_ty({-1}), DomainError);
  CHECK_THROWS_AS(TypeFunction::circle_ty(1, 2, {}), DomainError);  // not locally constant
  TypeFunction t = TypeFunction::circle_ty(2, 2, {{3, 2}, {4, 1}});
  CHECK(t.exceptions.size() == 1);  // exception equal to generic is dropped
  CHECK(t.at(SubRef::circle(3)) == 2);
  CHECK(t.at(SubRef::circle(4)) == 1);
  CHECK(t.at(SubRef::circle_T()) == 2);
}

TEST_CASE("realizability: rank inequality with Trivial above infinity") {
  auto ctx = make_finite_context(cyclic_group(2), 2);
  CHECK(is_realizable_type(ctx, TypeFunction::finite_ty({0, 2})));   // 0 <= 2+1
  CHECK_FALSE(is_realizable_type(ctx, TypeFunction::finite_ty({3, 0})));  // 3 > 0+1
  for (Ht c : ty_domain(3))
    CHECK(is_realizable_type(ctx, TypeFunction::finite_ty({c, c})));

  // a contractible fixed point below a nontrivial one is not realizable,
  // even when the larger value is infinity
  CHECK_FALSE(is_realizable_type(ctx, TypeFunction::finite_ty({TY_TRIVIAL, HT_INF})));
  CHECK_FALSE(is_realizable_type(ctx, TypeFunction::finite_ty({TY_TRIVIAL, 0})));
  CHECK(is_realizable_type(ctx, TypeFunction::finite_ty({HT_INF, TY_TRIVIAL})));
  CHECK(is_realizable_type(ctx, TypeFunction::finite_ty({2, TY_TRIVIAL})));

  auto bad = is_realizable_type(ctx, TypeFunction::finite_ty({3, 0}));
  CHECK(bad.sub == SubRef::finite(0));
  CHECK(bad.super == SubRef::finite(1));
  CHECK(bad.bound == 1);
}

TEST_CASE("support: sphere, trivial object, and a point-closure shape") {
  auto ctx = make_finite_context(cyclic_group(3), 3);
  TypeFunction sphere = TypeFunction::finite_ty({0, 0});
  ClosedSet full = support_of(ctx, sphere);
  TypeFunction zero = TypeFunction::finite_ty({TY_TRIVIAL, TY_TRIVIAL});
  ClosedSet empty = support_of(ctx, zero);
  for (const PrimePoint& P : probe_points(ctx, 5)) {
    CHECK(full.contains(ctx, P));
    CHECK_FALSE(empty.contains(ctx, P));
  }

  // t = (2 at 1, 1 at C_3): the support is the closure of {(1,2),(C3,1)}
  TypeFunction t = TypeFunction::finite_ty({2, 1});
  ClosedSet s = support_of(ctx, t);
  ClosedSet cl = closure(ctx, {{SubRef::finite(0), 2}, {SubRef::finite(1), 1}});
  for (const PrimePoint& P : probe_points(ctx, 6))
    CHECK(s.contains(ctx, P) == cl.contains(ctx, P));
  CHECK(s.contains(ctx, {SubRef::finite(0), 2}));
  CHECK_FALSE(s.contains(ctx, {SubRef::finite(0), 1}));
}

TEST_CASE("support is closure-stable") {
  for (FgAbGroup A : {cyclic_group(4), cyclic_group(6), FgAbGroup(0, {2, 2})}) {
    auto ctx = make_finite_context(A, 2);
    for (const TypeFunction& t : all_realizable(ctx, 2)) {
      ClosedSet s = support_of(ctx, t);
      // collect the support points up to a finite horizon and close them
      std::vector<PrimePoint> pts;
      for (const PrimePoint& P : probe_points(ctx, 4))
        if (s.contains(ctx, P)) pts.push_back(P);
      if (pts.empty()) continue;
      ClosedSet cl = closure(ctx, pts);
      for (const PrimePoint& P : probe_points(ctx, 4))
        CHECK(cl.contains(ctx, P) == s.contains(ctx, P));
    }
  }
}

TEST_CASE("smash and wedge: units, absorption, support laws") {
  auto ctx = make_finite_context(FgAbGroup(0, {2, 2}), 2);
  auto all = all_realizable(ctx, 1);
  TypeFunction sphere = TypeFunction::finite_ty(
      std::vector<Ht>(static_cast<size_t>(ctx.size()), 0));
  TypeFunction zero = TypeFunction::finite_ty(
      std::vector<Ht>(static_cast<size_t>(ctx.size()), TY_TRIVIAL));
  auto pts = probe_points(ctx, 4);
  for (const TypeFunction& t : all) {
    CHECK(smash(t, sphere) == t);
    CHECK(smash(t, zero) == zero);
    CHECK(wedge(t, zero) == t);
  }
  for (const TypeFunction& t1 : all)
    for (const TypeFunction& t2 : all) {
      TypeFunction sm = smash(t1, t2), wd = wedge(t1, t2);
      CHECK(is_realizable_type(ctx, sm));
      CHECK(is_realizable_type(ctx, wd));
      ClosedSet s1 = support_of(ctx, t1), s2 = support_of(ctx, t2);
      ClosedSet ssm = support_of(ctx, sm), swd = support_of(ctx, wd);
      for (const PrimePoint& P : pts) {
        bool in1 = s1.contains(ctx, P), in2 = s2.contains(ctx, P);
        CHECK(ssm.contains(ctx, P) == (in1 && in2));
        CHECK(swd.contains(ctx, P) == (in1 || in2));
      }
    }
}

TEST_CASE("cofiber subadditivity checker") {
  auto ctx = make_finite_context(cyclic_group(2), 2);
  TypeFunction sphere = TypeFunction::finite_ty({0, 0});
  TypeFunction zero = TypeFunction::finite_ty({TY_TRIVIAL, TY_TRIVIAL});
  TypeFunction t = TypeFunction::finite_ty({1, 2});
  CHECK(cofiber_subadditive(ctx, t, t, t));
  CHECK(cofiber_subadditive(ctx, t, sphere, zero));
  CHECK_FALSE(cofiber_subadditive(ctx, sphere, zero, zero));
  CHECK(cofiber_subadditive(ctx, zero, t, sphere));
}

TEST_CASE("geometric fixed points: identity, collapse, reindexing") {
  auto ctx = make_finite_context(cyclic_group(4), 2);
  TypeFunction t = TypeFunction::finite_ty({1, 1, 0});

  // B = 1: identity reindexing
  auto phi0 = geom_fixed_points(ctx, t, ctx.lat.subgroups[0]);
  CHECK(phi0.ctx.group == ctx.group);
  REQUIRE(phi0.ctx.size() == ctx.size());
  for (int j = 0; j < phi0.ctx.size(); ++j)
    CHECK(phi0.t.values[static_cast<size_t>(j)] ==
          t.values[static_cast<size_t>(phi0.preimage[static_cast<size_t>(j)])]);

  // B = A: one-point lattice carrying t(A)
  auto phiA = geom_fixed_points(ctx, t, ctx.lat.subgroups[2]);
  CHECK(phiA.ctx.group.is_trivial());
  REQUIRE(phiA.t.values.size() == 1);
  CHECK(phiA.t.values[0] == 0);

  // A = C4, B = C2: the quotient C2 carries (t(C2), t(C4))
  auto phi = geom_fixed_points(ctx, t, ctx.lat.subgroups[1]);
  CHECK(phi.ctx.group == cyclic_group(2));
  REQUIRE(phi.t.values.size() == 2);
  CHECK(phi.t.values == std::vector<Ht>{1, 0});

  // supp(Phi^B t) is the preimage of supp(t) under (S, n) -> (q^{-1}(S), n)
  ClosedSet sA = support_of(ctx, t);
  ClosedSet sQ = support_of(phi.ctx, phi.t);
  for (const PrimePoint& P : probe_points(phi.ctx, 4)) {
    PrimePoint lifted{SubRef::finite(phi.preimage[static_cast<size_t>(P.sub.index)]),
                      P.n};
    CHECK(sQ.contains(phi.ctx, P) == sA.contains(ctx, lifted));
  }
}

TEST_CASE("geometric fixed points compose") {
  auto ctx = make_finite_context(FgAbGroup(0, {2, 2}), 2);
  TypeFunction t = TypeFunction::finite_ty({2, 1, 1, 1, 0});
  REQUIRE(is_realizable_type(ctx, t));
  for (int bi = 0; bi < ctx.size(); ++bi) {
    auto phiB = geom_fixed_points(ctx, t, ctx.lat.subgroups[static_cast<size_t>(bi)]);
    for (int cj = 0; cj < phiB.ctx.size(); ++cj) {
      // C/B ranges over subgroups of A/B; its preimage C in A satisfies
      // Phi^{C/B}(Phi^B t) = Phi^C t.
      auto phi2 = geom_fixed_points(phiB.ctx, phiB.t,
                                    phiB.ctx.lat.subgroups[static_cast<size_t>(cj)]);
      int ci = phiB.preimage[static_cast<size_t>(cj)];
      auto phiC = geom_fixed_points(ctx, t, ctx.lat.subgroups[static_cast<size_t>(ci)]);
      CHECK(phi2.ctx.group == phiC.ctx.group);
      CHECK(phi2.t.values == phiC.t.values);
    }
  }
}

TEST_CASE("blueshift bound: t(A) >= t(1) - r over elementary abelians") {
  for (long p : {2L, 3L})
    for (int r = 1; r <= 2; ++r) {
      auto ctx = make_finite_context(elementary_abelian(p, r), p);
      int full = ctx.find(full_subgroup(ctx.group));
      int triv = ctx.find(trivial_subgroup(ctx.group));
      std::mt19937_64 rng(7);
      for (int it = 0; it < 100; ++it) {
        TypeFunction t = random_type_function(ctx, rng, 5);
        Ht n = t.values[static_cast<size_t>(triv)];
        if (ty_is_trivial(n) || ht_is_inf(n)) continue;
        CHECK(ty_add(t.values[static_cast<size_t>(full)], r) >= n);
      }
    }
}

TEST_CASE("balmer comparison: classical chain and small groups") {
  // trivial group: the chain, order-reversed
  auto ctx1 = make_finite_context(FgAbGroup(0, {}), 2);
  auto bc1 = balmer_compare(ctx1, 4);
  CHECK(bc1.order_reversed);
  CHECK(bc1.points.size() == 5);
  for (size_t i = 0; i < 5; ++i)
    for (size_t j = 0; j < 5; ++j) {
      CHECK(bc1.inv_leq[i][j] == (bc1.points[i].n <= bc1.points[j].n));
      CHECK(bc1.balmer_leq[i][j] == bc1.inv_leq[i][j]);
    }

  auto ctx2 = make_finite_context(cyclic_group(2), 2);
  CHECK(balmer_compare(ctx2, 4).order_reversed);

  auto ctx6 = make_finite_context(cyclic_group(6), 2);
  auto bc6 = balmer_compare(ctx6, 3);
  CHECK(bc6.order_reversed);
  // towers over C3-related subgroups never mix with 2-local shifts:
  // no containment between points at 1 and at C3 in either order
  int i1 = ctx6.find(trivial_subgroup(ctx6.group));
  int i3 = -1;
  for (int i = 0; i < ctx6.size(); ++i) {
    auto st = abstract_subgroup(ctx6.lat.subgroups[static_cast<size_t>(i)]);
    if (st.group == cyclic_group(3)) i3 = i;
  }
  REQUIRE(i3 >= 0);
  for (size_t a = 0; a < bc6.points.size(); ++a)
    for (size_t b = 0; b < bc6.points.size(); ++b) {
      if (bc6.points[a].sub.index == i1 && bc6.points[b].sub.index == i3) {
        CHECK_FALSE(bc6.inv_leq[a][b]);
        CHECK_FALSE(bc6.balmer_leq[a][b]);
      }
    }
}

TEST_CASE("random harness over C2xC2 and C4") {
  for (FgAbGroup A : {FgAbGroup(0, {2, 2}), cyclic_group(4)}) {
    auto ctx = make_finite_context(A, 2);
    std::mt19937_64 rng(20240817);
    auto pts = probe_points(ctx, 6);
    for (int it = 0; it < 300; ++it) {
      TypeFunction t1 = random_type_function(ctx, rng, 4);
      TypeFunction t2 = random_type_function(ctx, rng, 4);
      REQUIRE(is_realizable_type(ctx, t1));
      REQUIRE(is_realizable_type(ctx, t2));
      ClosedSet s1 = support_of(ctx, t1), s2 = support_of(ctx, t2);
      ClosedSet ssm = support_of(ctx, smash(t1, t2));
      ClosedSet swd = support_of(ctx, wedge(t1, t2));
      for (const PrimePoint& P : pts) {
        bool in1 = s1.contains(ctx, P), in2 = s2.contains(ctx, P);
        CHECK(ssm.contains(ctx, P) == (in1 && in2));
        CHECK(swd.contains(ctx, P) == (in1 || in2));
      }
    }
  }
}

TEST_CASE("circle type functions and their supports") {
  auto ctx = make_circle_context(2);
  TypeFunction t = TypeFunction::circle_ty(2, 2, {{3, 1}, {6, 1}});
  CHECK(is_realizable_type(ctx, t));
  ClosedSet s = support_of(ctx, t);
  CHECK(s.contains(ctx, {SubRef::circle(3), 1}));
  CHECK_FALSE(s.contains(ctx, {SubRef::circle(3), 0}));
  CHECK(s.contains(ctx, {SubRef::circle(5), 2}));
  CHECK_FALSE(s.contains(ctx, {SubRef::circle_T(), 1}));
  CHECK(s.contains(ctx, {SubRef::circle_T(), 2}));
  CHECK(s.contains(ctx, {SubRef::circle_T(), HT_INF}));

  // an exception exceeding the value at T is not realizable
  TypeFunction bad = TypeFunction::circle_ty(1, 1, {{4, 3}});
  auto chk = is_realizable_type(ctx, bad);
  CHECK_FALSE(chk);
  CHECK(chk.super == SubRef::circle_T());

  // smash/wedge on the circle combine generic values and exceptions
  TypeFunction u = TypeFunction::circle_ty(3, 3, {{6, 2}, {5, 0}});
  TypeFunction sm = smash(t, u), wd = wedge(t, u);
  CHECK(sm.at_T == 3);
  CHECK(sm.at(SubRef::circle(6)) == 2);
  CHECK(sm.at(SubRef::circle(3)) == 3);
  CHECK(sm.at(SubRef::circle(5)) == 2);
  CHECK(wd.at_T == 2);
  CHECK(wd.at(SubRef::circle(6)) == 1);
  CHECK(wd.at(SubRef::circle(5)) == 0);
  CHECK(wd.at(SubRef::circle(7)) == 2);
  CHECK(is_realizable_type(ctx, sm));
  CHECK(is_realizable_type(ctx, wd));

  // Trivial absorbs under smash, disappears under wedge
  TypeFunction z = TypeFunction::circle_ty(TY_TRIVIAL, TY_TRIVIAL, {});
  CHECK(smash(t, z) == z);
  CHECK(wedge(t, z) == t);

  // random circle functions stay realizable with closed supports
  std::mt19937_64 rng(99);
  for (int it = 0; it < 200; ++it) {
    TypeFunction r = random_type_function(ctx, rng, 4);
    REQUIRE(is_realizable_type(ctx, r));
    support_of(ctx, r);  // asserts closedness internally
  }
}
