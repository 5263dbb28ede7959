#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specinv/witness.hpp"

using namespace specinv;

namespace {

IntVector chi1(long k) {
  IntVector V(1);
  V(0) = k;
  return V;
}

AdmissibleFn exact_to_fn(const SpecContext& ctx, const HeightFn& h) {
  REQUIRE_FALSE(h.circle);
  std::vector<Ht> v;
  for (auto iv : h.values) {
    REQUIRE(iv.exact());
    v.push_back(iv.lo);
  }
  (void)ctx;
  return AdmissibleFn::finite_fn(std::move(v));
}

}  // namespace

TEST_CASE("primitive heights: constants") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(4);
  const SpecContext& ctx = cache.get(A);
  HeightFn z = expr_height(expr_zero(A), cache);
  HeightFn one = expr_height(expr_one(A), cache);
  HeightFn v3 = expr_height(expr_vn(A, 3), cache);
  HeightFn vinf = expr_height(expr_vn(A, HT_INF), cache);
  for (int i = 0; i < ctx.size(); ++i) {
    CHECK(z.values[i] == HtIv{-1, -1});
    CHECK(one.values[i] == HtIv{HT_INF, HT_INF});
    CHECK(v3.values[i] == HtIv{3, 3});
    CHECK(vinf.values[i] == one.values[i]);  // v_inf = 1
  }
}

TEST_CASE("primitive heights: Euler class") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(2);
  const SpecContext& ctx = cache.get(A);
  int triv = ctx.find(trivial_subgroup(A)), full = ctx.find(full_subgroup(A));
  HeightFn h = expr_height(expr_euler_v(A, chi1(1), 4), cache);
  CHECK(h.values[triv] == HtIv{-1, -1});
  CHECK(h.values[full] == HtIv{4, 4});
  // the trivial character gives the zero element
  HeightFn h0 = expr_height(expr_euler_v(A, chi1(2), 4), cache);
  CHECK(h0.values[triv] == HtIv{-1, -1});
  CHECK(h0.values[full] == HtIv{-1, -1});
}

TEST_CASE("primitive heights: x_m shift") {
  for (long p : {2L, 3L}) {
    ContextCache cache(p);
    for (Ht m : {0, 1, 2}) {
      ExprPtr x = expr_xshift(p, m);
      const SpecContext& ctx = cache.get(x->ambient);
      HeightFn h = expr_height(x, cache);
      for (int i = 0; i < ctx.size(); ++i) {
        int r = p_rank(abstract_subgroup(ctx.lat.subgroups[i]).group, p);
        CHECK(h.values[i] == HtIv{m - r, m - r});
      }
      CHECK(h.values[ctx.find(trivial_subgroup(x->ambient))] == HtIv{m, m});
      CHECK(h.values[ctx.find(full_subgroup(x->ambient))] == HtIv{-1, -1});
    }
  }
}

TEST_CASE("primitive heights are admissible") {
  ContextCache cache(2);
  FgAbGroup A = elementary_abelian(2, 2);
  const SpecContext& ctx = cache.get(A);
  std::vector<ExprPtr> prims = {expr_zero(A), expr_one(A), expr_vn(A, 2)};
  for (Eigen::Index c = 0; c < 2; ++c) {
    IntVector V = IntVector::Zero(2);
    V(c) = 1;
    prims.push_back(expr_euler_v(A, V, 3));
  }
  prims.push_back(expr_xshift(2, 1));
  prims.push_back(expr_xshift(2, 2));
  for (auto& e : prims) {
    const SpecContext& ectx = cache.get(e->ambient);
    HeightFn h = expr_height(e, cache);
    CHECK(is_admissible(ectx, exact_to_fn(ectx, h)).ok);
  }
  (void)ctx;
}

TEST_CASE("q-killer heights") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(6);
  const SpecContext& ctx = cache.get(A);
  // g: C_6 ->> C_3
  IntMatrix dual(1, 1);
  dual(0, 0) = 2;  // (Z/3)* -> (Z/6)*, 1 -> 2
  Homomorphism g{A, cyclic_group(3), dual};
  REQUIRE(hom_is_well_defined(g));
  REQUIRE(hom_is_surjective(g));
  HeightFn h = expr_height(expr_qkiller(3, g, 1), cache);
  for (int i = 0; i < ctx.size(); ++i) {
    const FgAbGroup B = abstract_subgroup(ctx.lat.subgroups[i]).group;
    bool killed = B.order() % 3 == 0;  // exactly those surject onto C_3 here
    CHECK(h.values[i] == (killed ? HtIv{-1, -1} : HtIv{1, 1}));
  }
  ContextCache cache3(3);
  CHECK_THROWS_AS(expr_height(expr_qkiller(3, g, 1), cache3), DomainError);
}

TEST_CASE("product is pointwise min; zero absorbs") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(2);
  ExprPtr prod = expr_product(A, {expr_vn(A, 3), expr_euler_v(A, chi1(1), 5)});
  HeightFn h = expr_height(prod, cache);
  const SpecContext& ctx = cache.get(A);
  CHECK(h.values[ctx.find(trivial_subgroup(A))] == HtIv{-1, -1});
  CHECK(h.values[ctx.find(full_subgroup(A))] == HtIv{3, 3});
  HeightFn hz = expr_height(expr_product(A, {expr_zero(A), expr_one(A)}), cache);
  for (auto v : hz.values) CHECK(v == HtIv{-1, -1});
}

TEST_CASE("restrict: x_1 along C_p inside C_p x C_p") {
  for (long p : {2L, 3L}) {
    ContextCache cache(p);
    ExprPtr x = expr_xshift(p, 1);
    FgAbGroup E = x->ambient;
    // first-coordinate copy of C_p: characters vanishing on it
    IntMatrix gens(2, 1);
    gens(0, 0) = 0;
    gens(1, 0) = 1;
    Subgroup Cp = subgroup_from_generators(E, gens);
    ExprPtr r = expr_restrict(Cp, x);
    const SpecContext& rctx = cache.get(r->ambient);
    REQUIRE(r->ambient == cyclic_group(p));
    HeightFn h = expr_height(r, cache);
    CHECK(h.values[rctx.find(trivial_subgroup(r->ambient))] == HtIv{1, 1});
    CHECK(h.values[rctx.find(full_subgroup(r->ambient))] == HtIv{0, 0});
  }
}

TEST_CASE("inflate along C_4 ->> C_2") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(4), Q = cyclic_group(2);
  IntMatrix dual(1, 1);
  dual(0, 0) = 2;  // (Z/2)* -> (Z/4)*
  Homomorphism g{A, Q, dual};
  REQUIRE(hom_is_surjective(g));
  ExprPtr e = expr_inflate(g, expr_euler_v(Q, chi1(1), 5));
  const SpecContext& ctx = cache.get(A);
  HeightFn h = expr_height(e, cache);
  auto subs = enumerate_subgroups(A);
  REQUIRE(subs.size() == 3);
  CHECK(h.values[ctx.find(subs[0])] == HtIv{-1, -1});  // 1 maps to 1
  CHECK(h.values[ctx.find(subs[1])] == HtIv{-1, -1});  // C_2 maps to 1
  CHECK(h.values[ctx.find(subs[2])] == HtIv{5, 5});    // C_4 maps onto C_2
}

TEST_CASE("lift is exact below B' and undetermined elsewhere") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(4);
  auto subs = enumerate_subgroups(A);
  Subgroup C2 = subs[1];
  SubgroupStructure st = abstract_subgroup(C2);
  ExprPtr inner = expr_vn(st.group, 2);
  ExprPtr lifted = expr_lift(C2, inner);
  const SpecContext& ctx = cache.get(A);
  HeightFn h = expr_height(lifted, cache);
  CHECK(h.values[ctx.find(subs[0])] == HtIv{2, 2});
  CHECK(h.values[ctx.find(subs[1])] == HtIv{2, 2});
  CHECK(h.values[ctx.find(subs[2])] == HtIv{-1, HT_INF});
}

TEST_CASE("realize: simple shapes") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(2);
  const SpecContext& ctx = cache.get(A);
  // constant functions realize through v_n
  for (Ht c : {-1, 0, 2, HT_INF}) {
    AdmissibleFn f = AdmissibleFn::finite_fn({c, c});
    WitnessSet W = realize(ctx, f, cache);
    CHECK(verify_realization(ctx, f, W, cache).ok);
  }
  // the mixed-case shape: f(1) = 1, f(C_2) = 0
  AdmissibleFn f = AdmissibleFn::finite_fn({1, 0});
  WitnessSet W = realize(ctx, f, cache);
  CHECK(verify_realization(ctx, f, W, cache).ok);
  CHECK_THROWS_AS(realize(ctx, AdmissibleFn::finite_fn({2, 0}), cache), DomainError);
}

TEST_CASE("verify_realization rejects wrong sets") {
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(2);
  const SpecContext& ctx = cache.get(A);
  AdmissibleFn zero = AdmissibleFn::finite_fn({0, 0});
  CHECK_FALSE(verify_realization(ctx, zero, WitnessSet{{expr_one(A)}}, cache).ok);
  CHECK_FALSE(verify_realization(ctx, zero, WitnessSet{}, cache).ok);
  AdmissibleFn empty_f = AdmissibleFn::finite_fn({-1, -1});
  CHECK(verify_realization(ctx, empty_f, WitnessSet{}, cache).ok);
}

TEST_CASE("realization round-trip, exhaustive at small height") {
  for (long p : {2L, 3L}) {
    for (const auto& A : {cyclic_group(p), cyclic_group(p * p),
                          elementary_abelian(p, 2), cyclic_group(2 * p + 2)}) {
      ContextCache cache(p);
      const SpecContext& ctx = cache.get(A);
      for (const AdmissibleFn& f : enumerate_admissible(ctx, 2)) {
        WitnessSet W = realize(ctx, f, cache);
        RealizationCheck r = verify_realization(ctx, f, W, cache);
        if (!r.ok)
          FAIL("mismatch at ", r.where.to_string(), " for f=", f.to_string(ctx),
               " over ", A.to_string(), " at p=", p);
      }
    }
  }
}

TEST_CASE("pair-factor contract on a mixed group") {
  // f exercising case (ii): C_2 inside C_6, quotient C_3 is no 2-group
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(6);
  const SpecContext& ctx = cache.get(A);
  for (const AdmissibleFn& f : enumerate_admissible(ctx, 1)) {
    WitnessSet W = realize(ctx, f, cache);
    HeightFn h = witness_height(W, ctx, cache);
    for (int i = 0; i < ctx.size(); ++i) {
      CHECK(h.values[i].exact());
      CHECK(h.values[i].lo == f.values[i]);
    }
  }
}

TEST_CASE("realize keeps cross-prime kills at infinite values") {
  // f(C_2) = inf with f(C_6) finite: the C_2 witness must still vanish at C_6.
  ContextCache cache(2);
  FgAbGroup A = cyclic_group(6);
  const SpecContext& ctx = cache.get(A);
  auto subs = enumerate_subgroups(A);
  std::vector<Ht> vals(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    Int o = abstract_subgroup(subs[i]).group.order();
    vals[i] = (o == 2 || o == 1) ? HT_INF : 0;
  }
  AdmissibleFn f = AdmissibleFn::finite_fn(vals);
  REQUIRE(is_admissible(ctx, f).ok);
  WitnessSet W = realize(ctx, f, cache);
  CHECK(verify_realization(ctx, f, W, cache).ok);
}

TEST_CASE("circle realization") {
  for (long p : {2L, 3L}) {
    ContextCache cache(p);
    const SpecContext& ctx = cache.get(FgAbGroup(1, {}));
    std::vector<AdmissibleFn> fns = {
        AdmissibleFn::circle_fn(1, 1, {}),
        AdmissibleFn::circle_fn(HT_INF, HT_INF, {}),
        AdmissibleFn::circle_fn(2, 2, {{1, 0}, {2, 1}}),
        AdmissibleFn::circle_fn(3, 3, {{4, 2}, {6, 3}}),
        AdmissibleFn::circle_fn(HT_INF, HT_INF, {{1, 1}, {2, 2}, {3, HT_INF}}),
        AdmissibleFn::circle_fn(0, 0, {{5, -1}}),
        AdmissibleFn::circle_fn(-1, -1, {}),
    };
    for (const auto& f : fns) {
      REQUIRE(is_admissible(ctx, f).ok);
      WitnessSet W = realize(ctx, f, cache);
      RealizationCheck r = verify_realization(ctx, f, W, cache);
      if (!r.ok)
        FAIL("circle mismatch at ", r.where.to_string(), " for ", f.to_string(ctx),
             " p=", p);
    }
  }
}

TEST_CASE("circle realization, exhaustive small-exception family") {
  ContextCache cache(2);
  const SpecContext& ctx = cache.get(FgAbGroup(1, {}));
  std::vector<Ht> dom = {-1, 0, 1, HT_INF};
  int checked = 0;
  for (Ht vt : dom)
    for (Ht e2 : dom)
      for (Ht e3 : dom) {
        AdmissibleFn f = AdmissibleFn::circle_fn(vt, vt, {{2, e2}, {3, e3}});
        if (!is_admissible(ctx, f).ok) continue;
        ++checked;
        WitnessSet W = realize(ctx, f, cache);
        CHECK(verify_realization(ctx, f, W, cache).ok);
      }
  CHECK(checked > 10);
}
