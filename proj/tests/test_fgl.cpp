#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "specinv/fgl.hpp"
#include "specinv/gf.hpp"

using namespace specinv;

namespace {

const VRing kQ{0, 0, 0, 0, 0};

VPoly q(long n, long d = 1) { return VPoly(kQ, mpq_class(n, d)); }

Series1<VPoly> mono(int D, int k, VPoly c) {
  Series1<VPoly> s{D, {}};
  s.set(k, std::move(c));
  return s;
}

}  // namespace

TEST_CASE("vpoly arithmetic, units, and division") {
  VRing r{2, 0, 2, 0, 0};
  VPoly v1 = VPoly::var(r, 1), v2 = VPoly::var(r, 2);
  VPoly p = v1 * v1 + VPoly(r, 3) * v2;
  CHECK(p.to_string() == "3*v2 + v1^2");
  CHECK((p - p).is_zero());
  CHECK((p * VPoly(r, 0)).is_zero());
  CHECK(p * v1 == v1 * p);

  // single-term division succeeds/fails on exponents
  auto d = (v1 * v2).divided_by(v1);
  REQUIRE(d.has_value());
  CHECK(*d == v2);
  CHECK_FALSE(v2.divided_by(v1).has_value());

  // units: p-local rationals coprime to p, mod-p nonzero constants
  CHECK(VPoly(r, mpq_class(3, 5)).is_unit());
  CHECK_FALSE(VPoly(r, 2).is_unit());
  CHECK_FALSE(v1.is_unit());
  VRing li = r;
  li.inverted = 2;  // invert v2
  CHECK(VPoly::var(li, 2, -3).is_unit());

  // characteristic reduction, including denominators
  VRing f5{5, 5, 1, 0, 0};
  VPoly c = VPoly(f5, mpq_class(1, 2));  // 1/2 = 3 mod 5
  CHECK(c == VPoly(f5, 3));
  CHECK((VPoly(f5, 5) * VPoly::var(f5, 1)).is_zero());

  // killed variables vanish under ring change
  VRing k1 = r;
  k1.killed = 1;
  CHECK(p.reduced(k1) == VPoly(k1, 3) * VPoly::var(k1, 2));
}

TEST_CASE("series multiplication, composition, reversion") {
  VPoly one = q(1);
  Series1<VPoly> x = s1_x(8, one);
  Series1<VPoly> f = s1_add(x, mono(8, 2, q(1)));  // x + x^2
  auto f2 = s1_mul(f, f);
  CHECK(f2.at(2) == q(1));
  CHECK(f2.at(3) == q(2));
  CHECK(f2.at(4) == q(1));

  // reversion of x + x^2, checked by round-trip
  auto inv = s1_reversion(f, one);
  CHECK(s1_compose(inv, f) == x);
  CHECK(s1_compose(f, inv) == x);
  CHECK(inv.at(2) == q(-1));
  CHECK(inv.at(3) == q(2));  // Catalan signs: x - x^2 + 2x^3 - 5x^4 + ...
  CHECK(inv.at(4) == q(-5));
}

TEST_CASE("exact division: quotient, witness degree, round-trip") {
  Series1<VPoly> a{4, {}};
  a.set(1, q(2));
  a.set(2, q(-1));
  Series1<VPoly> b = mono(4, 1, q(1));
  auto c = exact_divide(a, b);
  CHECK(c.D == 3);
  CHECK(c.at(0) == q(2));
  CHECK(c.at(1) == q(-1));
  CHECK(c.at(2).is_zero());

  // y^2 / y^3 fails with the witnessing degree
  CHECK_THROWS_AS(exact_divide(mono(4, 2, q(1)), mono(4, 3, q(1))),
                  NotDivisible);
  try {
    exact_divide(mono(4, 2, q(1)), mono(4, 3, q(1)));
  } catch (const NotDivisible& e) {
    CHECK(e.degree == 2);
  }

  // round-trip a = b * (a/b) through the valid degree
  Series1<VPoly> bb{6, {}};
  bb.set(2, q(3));
  bb.set(3, q(1));
  Series1<VPoly> cc{6, {}};
  cc.set(0, q(1, 3));
  cc.set(1, q(5));
  cc.set(4, q(-2));
  auto aa = s1_mul(bb, cc);
  auto back = exact_divide(aa, bb);
  CHECK(back.D == 4);
  for (int k = 0; k <= 4; ++k) CHECK(back.at(k) == cc.at(k));
}

TEST_CASE("universal 2-typical law: integrality, axioms, [2]-series") {
  FGL F = universal_p_typical(2, 16, 3);
  CHECK(fgl_axioms_check(F).ok);
  auto two = n_series(F, 2);
  VRing r = F.ring;
  CHECK(two.at(1) == VPoly(r, 2));
  CHECK(two.at(2) == -VPoly::var(r, 1));  // x^2-coefficient is -v1
  CHECK(two.at(3) == VPoly(r, 2) * VPoly::var(r, 1, 2));

  // mod I_n the lowest term of [2] sits in degree 2^n with coefficient v_n
  FGL F1 = reduce_mod_In(F, 1);
  CHECK(fgl_axioms_check(F1).ok);
  auto t1 = n_series(F1, 2);
  CHECK(t1.c.begin()->first == 2);
  CHECK(t1.c.begin()->second == VPoly::var(F1.ring, 1));
  FGL F2 = reduce_mod_In(F, 2);
  CHECK(fgl_axioms_check(F2).ok);
  auto t2 = n_series(F2, 2);
  CHECK(t2.c.begin()->first == 4);
  CHECK(t2.c.begin()->second == VPoly::var(F2.ring, 2));
}

TEST_CASE("universal 3-typical law at D = 9") {
  FGL F = universal_p_typical(3, 9, 2);
  CHECK(fgl_axioms_check(F).ok);
  auto three = n_series(F, 3);
  CHECK(three.at(1) == VPoly(F.ring, 3));
  FGL F1 = reduce_mod_In(F, 1);
  auto t1 = n_series(F1, 3);
  CHECK(t1.c.begin()->first == 3);
  CHECK(t1.c.begin()->second == VPoly::var(F1.ring, 1));
  FGL F2 = reduce_mod_In(F, 2);
  auto t2 = n_series(F2, 3);
  CHECK(t2.c.begin()->first == 9);
  CHECK(t2.c.begin()->second == VPoly::var(F2.ring, 2));
}

TEST_CASE("n-series is a homomorphism in n, with formal inverses") {
  for (long p : {2L, 3L}) {
    FGL F = universal_p_typical(p, p == 2 ? 12 : 9, 2);
    auto cmp = [&](long m, long n) {
      auto lhs = s1_compose(n_series(F, m), n_series(F, n));
      CHECK(lhs == n_series(F, m * n));
    };
    cmp(2, 3);
    cmp(3, 2);
    cmp(-2, 3);
    cmp(-1, -1);
    // F(x, iota(x)) = 0
    auto io = formal_inverse(F);
    CHECK(s2_subst(F.F, s1_x(F.D, VPoly(F.ring, 1)), io).c.empty());
  }
}

TEST_CASE("[q]-series stays nonzero mod I_n for q <= 6, n <= 2") {
  for (long p : {2L, 3L}) {
    int D = p == 2 ? 16 : 10;  // [4] mod I_2 at p = 2 first appears in degree 16
    FGL F = universal_p_typical(p, D, 2);
    for (int n = 0; n <= 2; ++n) {
      FGL Fn = reduce_mod_In(F, n);
      for (long qq = 1; qq <= 6; ++qq)
        CHECK_FALSE(n_series(Fn, qq).c.empty());
    }
  }
}

TEST_CASE("psi: symbol of the power-operation quotient") {
  auto p21 = psi_series(2, 1, 1, 8);
  CHECK(p21.at(0).to_string() == "v1");
  CHECK(p21.at(2).to_string() == "v2");

  auto p41 = psi_series(2, 1, 2, 16);
  CHECK(p41.D >= 8);
  CHECK(p41.at(0).to_string() == "v1");
  // mod v1 the lowest term is v2^3 e^8
  VRing r = p41.at(0).ring();
  r.killed |= 1u;
  auto red = s1_map(p41, [&](const VPoly& v) { return v.reduced(r); });
  auto low = red.c.begin();
  CHECK(low->first == 8);
  CHECK(low->second.to_string() == "v2^3");

  // round-trip: psi * u^{p^n} = [p](u) through the valid degree
  FGL Fn = reduce_mod_In(universal_p_typical(2, 16, 4), 1);
  auto u = n_series(Fn, 2);
  auto num = s1_compose(n_series(Fn, 2), u);
  auto back = s1_mul(p41, s1_mul(u, u));
  for (int k = 0; k <= back.D; ++k) CHECK(back.at(k) == num.at(k));
}

TEST_CASE("level structures and vbar") {
  // trivial level at q != p: vbar = [q](y)/y has constant term q
  auto gm = gm_c2(1);
  LevelData triv{3, 0, {VPoly()}};
  CHECK(level_is_homomorphism(gm.law, triv));
  auto vb3 = level_vbar(gm.law, triv);
  CHECK(vb3.at(0) == VPoly(gm.law.ring, 3));

  // multiplicative C_2-level with e_V = 2: vbar is the constant series 1
  LevelData lv{2, 1, {VPoly(), VPoly(gm.law.ring, 2)}};
  CHECK(level_is_homomorphism(gm.law, lv));
  auto vb = level_vbar(gm.law, lv);
  CHECK(vb.at(0) == VPoly(gm.law.ring, 1));
  for (const auto& [k, v] : vb.c) CHECK(k == 0);

  // a non-level assignment is rejected
  LevelData bad{2, 1, {VPoly(), VPoly(gm.law.ring, 3)}};
  CHECK_FALSE(level_is_homomorphism(gm.law, bad));
  CHECK_THROWS_AS(level_vbar(gm.law, bad), DomainError);

  // Honda level: all Euler classes 0 on C_p^r, r <= n; quotient is 1 at r = n
  FGL H = reduce_mod_In(honda_fgl(2, 2, 8), 1);
  LevelData hl{2, 2, {VPoly(), VPoly(), VPoly(), VPoly()}};
  CHECK(level_is_homomorphism(H, hl));
  auto vh = level_vbar(H, hl);
  CHECK(vh.at(0) == VPoly(H.ring, 1));
  for (const auto& [k, v] : vh.c) CHECK(k == 0);
}

TEST_CASE("gm_c2: multiplicative models with C_2 Euler class") {
  for (int sign : {1, -1}) {
    auto gm = gm_c2(sign);
    CHECK(gm.euler == Int(2 * sign));
    CHECK(fgl_axioms_check(gm.law).ok);
    CHECK(gm.law.F.at(1, 1) == VPoly(gm.law.ring, -sign));
    // the quotient by the Euler class has order 2
    CHECK(abs(gm.euler) == 2);
  }
  CHECK_THROWS_AS(gm_c2(0), DomainError);
}

TEST_CASE("heights: multiplicative 1, Honda n, additive infinite") {
  VRing f2{2, 2, 0, 0, 0};
  CHECK(fgl_height(multiplicative_fgl(f2, 8), 2).height == 1);
  auto add = fgl_height(additive_fgl(f2, 8), 2);
  CHECK(ht_is_inf(add.height));
  CHECK(add.truncation_caveat);  // infinite only to the truncation degree

  VRing q3{3, 0, 0, 0, 0};
  CHECK(fgl_height(multiplicative_fgl(q3, 8), 3).height == 0);  // char 0

  for (long p : {2L, 3L})
    for (int n = 1; n <= 3; ++n) {
      int D = 1;
      for (int i = 0; i < n; ++i) D *= static_cast<int>(p);
      FGL H = reduce_mod_In(honda_fgl(p, n, D + 1), 1);
      auto ps = n_series(H, p);
      CHECK(ps.c.size() == 1);  // [p](x) = x^{p^n} exactly
      CHECK(ps.c.begin()->first == D);
      CHECK(fgl_height(H, p).height == n);
    }
}

TEST_CASE("height is invariant under finite field extension") {
  // F_4 = F_2[t]/(t^2+t+1), F_9 = F_3[t]/(t^2+1)
  struct Ext {
    long p;
    std::vector<long> mod;
  };
  for (const Ext& ext : {Ext{2, {1, 1}}, Ext{3, {1, 0}}}) {
    VRing fp{ext.p, ext.p, 0, 0, 0};
    for (int model = 0; model < 2; ++model) {
      FGL F = model == 0 ? multiplicative_fgl(fp, 10)
                         : reduce_mod_In(honda_fgl(ext.p, 2, 10), 1);
      auto ps = n_series(F, ext.p);
      Series1<GFElem> lifted{ps.D, {}};
      for (const auto& [k, v] : ps.c)
        lifted.set(k, GFElem::from_int(ext.p, ext.mod,
                                       v.constant_value().get_num().get_si()));
      auto base = pseries_height(ps, ext.p);
      auto up = pseries_height(lifted, ext.p);
      CHECK(base.height == up.height);
      CHECK(base.truncation_caveat == up.truncation_caveat);
    }
    // sanity of the field arithmetic
    GFElem t = GFElem::gen(ext.p, ext.mod);
    GFElem acc = GFElem::from_int(ext.p, ext.mod, 1);
    long order = ext.p * ext.p - 1;
    for (long i = 0; i < order; ++i) acc = acc * t;
    CHECK(acc == GFElem::from_int(ext.p, ext.mod, 1));
  }
}

TEST_CASE("blueshift certificates") {
  struct Case {
    long p;
    int n, k, D, lowdeg;
    std::string lowcoeff;
  };
  for (const Case& c : {Case{2, 2, 1, 16, 2, "v2"}, Case{2, 2, 2, 16, 8, "v2^3"},
                        Case{3, 2, 1, 9, 6, "v2"}}) {
    auto rep = blueshift_report(c.p, c.n, c.k, c.D);
    CHECK(rep.constant_is_unit_times_vnm1);
    CHECK(rep.constant_term.to_string() == "v1");
    CHECK(rep.lowest_deg_mod_vnm1 == c.lowdeg);
    CHECK(rep.lowest_coeff_mod_vnm1.to_string() == c.lowcoeff);
    CHECK(rep.lowest_is_unit);
    CHECK(rep.height_drop == 1);
  }

  // height-1 model: psi_2^{(0)} = (2y - y^2)/y = 2 - y
  auto r1 = blueshift_report(2, 1, 1, 8);
  CHECK(r1.constant_term == VPoly(VRing{2, 0, 0, 0, 0}, 2));
  CHECK(r1.constant_is_unit_times_vnm1);
  CHECK(r1.lowest_deg_mod_vnm1 == 1);
  CHECK(r1.lowest_is_unit);
}

TEST_CASE("axiom checker reports failures with a witness") {
  VRing r = kQ;
  VPoly one(r, 1);
  Series2<VPoly> bad{4, {}};
  bad.set(1, 0, one);
  bad.set(0, 1, one);
  bad.set(2, 0, one);  // breaks the unit axiom
  CHECK_THROWS_AS(make_fgl(r, 4, bad), DomainError);

  Series2<VPoly> asym{4, {}};
  asym.set(1, 0, one);
  asym.set(0, 1, one);
  asym.set(1, 2, one);  // no (2,1) partner: not commutative
  CHECK_THROWS_AS(make_fgl(r, 4, asym), DomainError);

  // commutative + unital but not associative: F = x + y + x^2 y^2
  Series2<VPoly> na{6, {}};
  na.set(1, 0, one);
  na.set(0, 1, one);
  na.set(2, 2, one);
  FGL G{r, 6, na};
  auto chk = fgl_axioms_check(G);
  CHECK_FALSE(chk.ok);
  CHECK(chk.axiom == "associativity");
}
