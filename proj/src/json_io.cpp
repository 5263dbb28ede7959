#include "specinv/json_io.hpp"

#include <cctype>
#include <sstream>

namespace specinv::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw DomainError(what); }

long to_long(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + ": integer expected");
  return j.get<long>();
}

}  // namespace

Json ht_to_json(Ht a) {
  if (ht_is_inf(a)) return "inf";
  if (ht_is_omega(a)) bad("internal boundary value is not serializable");
  return a;
}

Ht ht_from_json(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return HT_INF;
    bad("height: expected integer or \"inf\", got \"" + j.get<std::string>() + "\"");
  }
  long v = to_long(j, "height");
  if (v < -1 || v >= HT_OMEGA) bad("height out of range");
  return static_cast<Ht>(v);
}

Json ty_to_json(Ht a) {
  if (ty_is_trivial(a)) return "trivial";
  return ht_to_json(a);
}

Ht ty_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "trivial") return TY_TRIVIAL;
  return ht_from_json(j);
}

Json int_to_json(const Int& n) { return n.get_str(); }

Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (!j.is_string()) bad("integer: expected decimal string");
  try {
    return Int(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    bad("integer: malformed decimal string \"" + j.get<std::string>() + "\"");
  }
}

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  Json out;
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  out["entries"] = std::move(rows);
  return out;
}

IntMatrix matrix_from_json(const Json& j) {
  long r = to_long(j.at("rows"), "matrix rows");
  long c = to_long(j.at("cols"), "matrix cols");
  if (r < 0 || c < 0) bad("matrix: negative dimensions");
  const Json& e = j.at("entries");
  if (!e.is_array() || static_cast<long>(e.size()) != r) bad("matrix: row count mismatch");
  IntMatrix m(r, c);
  for (long i = 0; i < r; ++i) {
    if (!e[i].is_array() || static_cast<long>(e[i].size()) != c)
      bad("matrix: column count mismatch");
    for (long k = 0; k < c; ++k) m(i, k) = int_from_json(e[i][k]);
  }
  return m;
}

Json group_to_json(const FgAbGroup& A) {
  Json out;
  out["rank"] = A.rank;
  Json t = Json::array();
  for (const Int& d : A.torsion) t.push_back(int_to_json(d));
  out["torsion"] = std::move(t);
  return out;
}

FgAbGroup group_from_json(const Json& j) {
  long r = to_long(j.at("rank"), "group rank");
  std::vector<Int> tor;
  for (const Json& d : j.at("torsion")) tor.push_back(int_from_json(d));
  return FgAbGroup(static_cast<int>(r), std::move(tor));
}

Json subgroup_to_json(const Subgroup& B) {
  Json out;
  out["ambient"] = group_to_json(B.ambient);
  out["lattice"] = matrix_to_json(B.lattice);
  return out;
}

Subgroup subgroup_from_json(const Json& j) {
  Subgroup B{group_from_json(j.at("ambient")), matrix_from_json(j.at("lattice"))};
  IntMatrix canon = hermite_normal_form(B.lattice);
  if (!matrix_eq(canon, B.lattice)) bad("subgroup lattice is not in column HNF");
  return B;
}

Json hom_to_json(const Homomorphism& g) {
  Json out;
  out["source"] = group_to_json(g.source);
  out["target"] = group_to_json(g.target);
  out["dual_matrix"] = matrix_to_json(g.dual_matrix);
  return out;
}

Homomorphism hom_from_json(const Json& j) {
  Homomorphism g{group_from_json(j.at("source")), group_from_json(j.at("target")),
                 matrix_from_json(j.at("dual_matrix"))};
  if (!hom_is_well_defined(g)) bad("homomorphism is not well defined");
  return g;
}

Json subref_to_json(const SubRef& s) {
  if (!s.is_circle()) return s.index;
  return s.is_T() ? "T" : "C" + std::to_string(s.cyclic_m);
}

SubRef subref_from_json(const SpecContext& ctx, const Json& j) {
  if (j.is_string()) return resolve_subref(ctx, j.get<std::string>());
  if (ctx.circle) bad("subgroup reference: circle contexts use \"T\" / \"C<m>\"");
  long i = to_long(j, "subgroup id");
  if (i < 0 || i >= ctx.size()) bad("subgroup id out of range");
  return SubRef::finite(static_cast<int>(i));
}

Json point_to_json(const PrimePoint& P) {
  Json out;
  out["subgroup"] = subref_to_json(P.sub);
  out["n"] = ht_to_json(P.n);
  return out;
}

PrimePoint point_from_json(const SpecContext& ctx, const Json& j) {
  PrimePoint P{subref_from_json(ctx, j.at("subgroup")), ht_from_json(j.at("n"))};
  if (P.n < 0) bad("prime point: height must be >= 0");
  return P;
}

namespace {

template <class ToJson>
Json fn_to_json(const SpecContext& ctx, bool circle, const std::vector<Ht>& values,
                Ht at_T, Ht generic, const std::map<long, Ht>& exc, ToJson enc) {
  Json out;
  if (!circle) {
    if (static_cast<int>(values.size()) != ctx.size())
      bad("function/lattice size mismatch");
    Json v;
    for (size_t i = 0; i < values.size(); ++i) v[std::to_string(i)] = enc(values[i]);
    out["values"] = std::move(v);
    return out;
  }
  out["T"] = enc(at_T);
  out["generic"] = enc(generic);
  Json e;
  for (const auto& [m, val] : exc) e[std::to_string(m)] = enc(val);
  out["exceptions"] = std::move(e);
  return out;
}

struct FnParts {
  bool circle = false;
  std::vector<Ht> values;
  Ht at_T = 0, generic = 0;
  std::map<long, Ht> exceptions;
};

template <class FromJson>
FnParts fn_from_json(const SpecContext& ctx, const Json& j, FromJson dec) {
  FnParts f;
  if (j.contains("values")) {
    if (ctx.circle) bad("circle function: expected \"T\"/\"generic\"/\"exceptions\"");
    f.values.assign(static_cast<size_t>(ctx.size()), 0);
    std::vector<char> seen(static_cast<size_t>(ctx.size()), 0);
    for (const auto& [key, val] : j.at("values").items()) {
      size_t pos = 0;
      long i = std::stol(key, &pos);
      if (pos != key.size() || i < 0 || i >= ctx.size())
        bad("function: bad subgroup id \"" + key + "\"");
      f.values[static_cast<size_t>(i)] = dec(val);
      seen[static_cast<size_t>(i)] = 1;
    }
    for (char s : seen)
      if (!s) bad("function: missing a subgroup value");
    return f;
  }
  if (!ctx.circle) bad("finite function: expected \"values\"");
  f.circle = true;
  f.at_T = dec(j.at("T"));
  f.generic = dec(j.at("generic"));
  if (j.contains("exceptions"))
    for (const auto& [key, val] : j.at("exceptions").items()) {
      size_t pos = 0;
      long m = std::stol(key, &pos);
      if (pos != key.size() || m < 1) bad("function: bad exception index \"" + key + "\"");
      f.exceptions[m] = dec(val);
    }
  return f;
}

}  // namespace

Json admfn_to_json(const SpecContext& ctx, const AdmissibleFn& f) {
  return fn_to_json(ctx, f.circle, f.values, f.at_T, f.generic, f.exceptions,
                    [](Ht a) { return ht_to_json(a); });
}

AdmissibleFn admfn_from_json(const SpecContext& ctx, const Json& j) {
  FnParts p = fn_from_json(ctx, j, [](const Json& v) { return ht_from_json(v); });
  return p.circle ? AdmissibleFn::circle_fn(p.at_T, p.generic, std::move(p.exceptions))
                  : AdmissibleFn::finite_fn(std::move(p.values));
}

Json tyfn_to_json(const SpecContext& ctx, const TypeFunction& t) {
  return fn_to_json(ctx, t.circle, t.values, t.at_T, t.generic, t.exceptions,
                    [](Ht a) { return ty_to_json(a); });
}

TypeFunction tyfn_from_json(const SpecContext& ctx, const Json& j) {
  FnParts p = fn_from_json(ctx, j, [](const Json& v) { return ty_from_json(v); });
  return p.circle ? TypeFunction::circle_ty(p.at_T, p.generic, std::move(p.exceptions))
                  : TypeFunction::finite_ty(std::move(p.values));
}

Json ring_to_json(const VRing& r) {
  Json out;
  out["p"] = r.p;
  out["char"] = r.char_mod;
  out["nvars"] = r.nvars;
  Json killed = Json::array(), inverted = Json::array();
  for (int i = 1; i <= r.nvars; ++i) {
    if (r.var_killed(i)) killed.push_back(i);
    if (r.var_inverted(i)) inverted.push_back(i);
  }
  out["killed"] = std::move(killed);
  out["inverted"] = std::move(inverted);
  return out;
}

VRing ring_from_json(const Json& j) {
  VRing r;
  r.p = to_long(j.at("p"), "ring p");
  r.char_mod = to_long(j.at("char"), "ring char");
  long nv = to_long(j.at("nvars"), "ring nvars");
  if (nv < 0 || nv > 31) bad("ring: nvars out of range");
  r.nvars = static_cast<int>(nv);
  for (const Json& i : j.at("killed")) {
    long v = to_long(i, "killed var");
    if (v < 1 || v > r.nvars) bad("ring: killed var out of range");
    r.killed |= 1u << (v - 1);
  }
  for (const Json& i : j.at("inverted")) {
    long v = to_long(i, "inverted var");
    if (v < 1 || v > r.nvars) bad("ring: inverted var out of range");
    r.inverted |= 1u << (v - 1);
  }
  return r;
}

std::string vpoly_to_string(const VPoly& a) { return a.to_string(); }

namespace {

/// Recursive-descent parser for the printed polynomial format:
///   poly  := term ((" + " | " - ") term)*
///   term  := rat | [rat "*"] var ("*" var)*
///   var   := "v" int ["^" int]
///   rat   := ["-"] digits ["/" digits]
struct PolyParser {
  const std::string& s;
  size_t i = 0;
  const VRing& ring;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  long integer() {
    bool neg = i < s.size() && s[i] == '-';
    if (neg) ++i;
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) bad("polynomial: digit expected at offset " + std::to_string(i));
    long v = std::stol(s.substr(start, i - start));
    return neg ? -v : v;
  }

  mpq_class rational() {
    bool neg = i < s.size() && s[i] == '-';
    if (neg) ++i;
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) bad("polynomial: number expected at offset " + std::to_string(i));
    mpz_class num(s.substr(start, i - start));
    mpz_class den = 1;
    if (i < s.size() && s[i] == '/') {
      ++i;
      start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start) bad("polynomial: denominator expected");
      den = mpz_class(s.substr(start, i - start));
    }
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  }

  VPoly term() {
    mpq_class coeff = 1;
    bool have_coeff = false;
    if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-')) {
      coeff = rational();
      have_coeff = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    VPoly::Monomial m(static_cast<size_t>(ring.nvars), 0);
    bool have_var = false;
    while (i < s.size() && s[i] == 'v') {
      ++i;
      long idx = integer();
      if (idx < 1 || idx > ring.nvars) bad("polynomial: variable index out of range");
      long e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = integer();
      }
      m[static_cast<size_t>(idx - 1)] += static_cast<int>(e);
      have_var = true;
      if (i < s.size() && s[i] == '*')
        ++i;
      else
        break;
    }
    if (!have_coeff && !have_var) bad("polynomial: term expected at offset " + std::to_string(i));
    return VPoly::term(ring, std::move(m), coeff);
  }

  VPoly parse() {
    skip_ws();
    if (s.compare(i, 1, "0") == 0 && i + 1 == s.size()) return VPoly(ring, 0);
    VPoly acc = term();
    skip_ws();
    while (i < s.size()) {
      char op = s[i];
      if (op != '+' && op != '-') bad("polynomial: '+' or '-' expected");
      ++i;
      skip_ws();
      VPoly t = term();
      acc = op == '+' ? acc + t : acc - t;
      skip_ws();
    }
    return acc;
  }
};

}  // namespace

VPoly vpoly_from_string(const VRing& r, const std::string& s) {
  PolyParser p{s, 0, r};
  return p.parse();
}

Json series1_to_json(const VRing& r, const Series1<VPoly>& s) {
  Json out;
  out["ring"] = ring_to_json(r);
  out["trunc"] = s.D;
  Json terms = Json::array();
  for (const auto& [k, c] : s.c) {
    if (c.is_zero()) continue;
    Json t;
    t["exp"] = Json::array({k});
    t["coeff"] = vpoly_to_string(c);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

Series1<VPoly> series1_from_json(const Json& j) {
  VRing r = ring_from_json(j.at("ring"));
  Series1<VPoly> s(static_cast<int>(to_long(j.at("trunc"), "series trunc")));
  for (const Json& t : j.at("terms")) {
    const Json& e = t.at("exp");
    if (!e.is_array() || e.size() != 1) bad("series: univariate exponent expected");
    int k = static_cast<int>(to_long(e[0], "series exponent"));
    if (k < 0 || k > s.D) bad("series: exponent out of truncation range");
    s.set(k, vpoly_from_string(r, t.at("coeff").get<std::string>()));
  }
  return s;
}

Json series2_to_json(const VRing& r, const Series2<VPoly>& s) {
  Json out;
  out["ring"] = ring_to_json(r);
  out["trunc"] = s.D;
  Json terms = Json::array();
  for (const auto& [key, c] : s.c) {
    if (c.is_zero()) continue;
    Json t;
    t["exp"] = Json::array({key.first, key.second});
    t["coeff"] = vpoly_to_string(c);
    terms.push_back(std::move(t));
  }
  out["terms"] = std::move(terms);
  return out;
}

Series2<VPoly> series2_from_json(const Json& j) {
  VRing r = ring_from_json(j.at("ring"));
  Series2<VPoly> s(static_cast<int>(to_long(j.at("trunc"), "series trunc")));
  for (const Json& t : j.at("terms")) {
    const Json& e = t.at("exp");
    if (!e.is_array() || e.size() != 2) bad("series: bivariate exponent expected");
    int a = static_cast<int>(to_long(e[0], "series exponent"));
    int b = static_cast<int>(to_long(e[1], "series exponent"));
    if (a < 0 || b < 0 || a + b > s.D) bad("series: exponent out of truncation range");
    s.set(a, b, vpoly_from_string(r, t.at("coeff").get<std::string>()));
  }
  return s;
}

Json expr_to_json(const ExprPtr& e) {
  if (!e) bad("expression: null");
  Json out;
  switch (e->kind) {
    case Expr::Kind::Zero:
      out["prim"] = "zero";
      out["group"] = group_to_json(e->ambient);
      return out;
    case Expr::Kind::One:
      out["prim"] = "one";
      out["group"] = group_to_json(e->ambient);
      return out;
    case Expr::Kind::Vn:
      out["prim"] = "vn";
      out["group"] = group_to_json(e->ambient);
      out["n"] = ht_to_json(e->n);
      return out;
    case Expr::Kind::EulerV: {
      out["prim"] = "euler_v";
      out["group"] = group_to_json(e->ambient);
      Json V = Json::array();
      for (Eigen::Index i = 0; i < e->V.size(); ++i) V.push_back(int_to_json(e->V(i)));
      out["V"] = std::move(V);
      out["n"] = ht_to_json(e->n);
      return out;
    }
    case Expr::Kind::QKiller:
      out["prim"] = "qkiller";
      out["q"] = e->q;
      out["g"] = hom_to_json(e->g);
      out["n"] = ht_to_json(e->n);
      return out;
    case Expr::Kind::XShift:
      out["prim"] = "xshift";
      // x_m lives over (Z/p)^{m+1}; m = -1 (ambient trivial) is the zero
      // element, where the prime is immaterial.
      out["p"] = e->ambient.torsion.empty() ? 2 : e->ambient.torsion[0].get_si();
      out["m"] = e->n;
      return out;
    case Expr::Kind::Product: {
      out["op"] = "product";
      out["group"] = group_to_json(e->ambient);
      Json args = Json::array();
      for (const ExprPtr& a : e->args) args.push_back(expr_to_json(a));
      out["args"] = std::move(args);
      return out;
    }
    case Expr::Kind::Inflate:
      out["op"] = "inflate";
      out["g"] = hom_to_json(e->g);
      out["arg"] = expr_to_json(e->args.at(0));
      return out;
    case Expr::Kind::Restrict:
      out["op"] = "restrict";
      out["b"] = subgroup_to_json(e->B);
      out["arg"] = expr_to_json(e->args.at(0));
      return out;
    case Expr::Kind::Lift:
      out["op"] = "lift";
      out["b"] = subgroup_to_json(e->B);
      out["arg"] = expr_to_json(e->args.at(0));
      return out;
  }
  bad("expression: unknown kind");
}

ExprPtr expr_from_json(const Json& j) {
  if (j.contains("prim")) {
    std::string p = j.at("prim").get<std::string>();
    if (p == "zero") return expr_zero(group_from_json(j.at("group")));
    if (p == "one") return expr_one(group_from_json(j.at("group")));
    if (p == "vn")
      return expr_vn(group_from_json(j.at("group")), ht_from_json(j.at("n")));
    if (p == "euler_v") {
      FgAbGroup A = group_from_json(j.at("group"));
      const Json& vj = j.at("V");
      IntVector V(static_cast<Eigen::Index>(vj.size()));
      for (size_t i = 0; i < vj.size(); ++i)
        V(static_cast<Eigen::Index>(i)) = int_from_json(vj[i]);
      return expr_euler_v(A, V, ht_from_json(j.at("n")));
    }
    if (p == "qkiller")
      return expr_qkiller(to_long(j.at("q"), "qkiller q"), hom_from_json(j.at("g")),
                          ht_from_json(j.at("n")));
    if (p == "xshift")
      return expr_xshift(to_long(j.at("p"), "xshift p"),
                         static_cast<Ht>(to_long(j.at("m"), "xshift m")));
    bad("expression: unknown primitive \"" + p + "\"");
  }
  std::string op = j.at("op").get<std::string>();
  if (op == "product") {
    FgAbGroup A = group_from_json(j.at("group"));
    std::vector<ExprPtr> args;
    for (const Json& a : j.at("args")) args.push_back(expr_from_json(a));
    return expr_product(A, std::move(args));
  }
  if (op == "inflate")
    return expr_inflate(hom_from_json(j.at("g")), expr_from_json(j.at("arg")));
  if (op == "restrict")
    return expr_restrict(subgroup_from_json(j.at("b")), expr_from_json(j.at("arg")));
  if (op == "lift")
    return expr_lift(subgroup_from_json(j.at("b")), expr_from_json(j.at("arg")));
  bad("expression: unknown op \"" + op + "\"");
}

namespace {

Json iv_to_json(const HtIv& iv) {
  if (iv.exact()) return ht_to_json(iv.lo);
  Json out;
  out["lo"] = ht_to_json(iv.lo);
  out["hi"] = ht_to_json(iv.hi);
  return out;
}

}  // namespace

Json heightfn_to_json(const SpecContext& ctx, const HeightFn& h) {
  Json out;
  if (!h.circle) {
    Json v;
    for (size_t i = 0; i < h.values.size(); ++i)
      v[std::to_string(i)] = iv_to_json(h.values[i]);
    out["values"] = std::move(v);
    (void)ctx;
    return out;
  }
  out["T"] = iv_to_json(h.at_T);
  out["generic"] = iv_to_json(h.generic);
  Json e;
  for (const auto& [m, iv] : h.exceptions) e[std::to_string(m)] = iv_to_json(iv);
  out["exceptions"] = std::move(e);
  return out;
}

FgAbGroup parse_group_descriptor(const std::string& s) {
  size_t semi = s.find(';');
  if (semi == std::string::npos)
    bad("group descriptor: expected \"r;d1,d2,...\", got \"" + s + "\"");
  size_t pos = 0;
  long rank = 0;
  try {
    rank = std::stol(s.substr(0, semi), &pos);
  } catch (const std::exception&) {
    bad("group descriptor: bad rank in \"" + s + "\"");
  }
  if (pos != semi || rank < 0) bad("group descriptor: bad rank in \"" + s + "\"");
  std::vector<Int> torsion;
  std::string rest = s.substr(semi + 1);
  std::istringstream in(rest);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) bad("group descriptor: empty invariant factor");
    for (char c : tok)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        bad("group descriptor: bad invariant factor \"" + tok + "\"");
    torsion.emplace_back(tok);
  }
  return FgAbGroup(static_cast<int>(rank), std::move(torsion));
}

std::string group_descriptor(const FgAbGroup& A) {
  std::string s = std::to_string(A.rank) + ";";
  for (size_t i = 0; i < A.torsion.size(); ++i)
    s += (i ? "," : "") + A.torsion[i].get_str();
  return s;
}

SubRef resolve_subref(const SpecContext& ctx, const std::string& s) {
  if (s.empty()) bad("subgroup reference: empty");
  if (ctx.circle) {
    if (s == "T") return SubRef::circle_T();
    if (s[0] == 'C') {
      long m = 0;
      try {
        size_t pos = 0;
        m = std::stol(s.substr(1), &pos);
        if (pos + 1 != s.size()) m = 0;
      } catch (const std::exception&) {
      }
      if (m >= 1) return SubRef::circle(m);
    }
    bad("subgroup reference: circle contexts use \"T\" or \"C<m>\", got \"" + s + "\"");
  }
  if (s[0] == '#') {
    size_t pos = 0;
    long i = std::stol(s.substr(1), &pos);
    if (pos + 1 != s.size() || i < 0 || i >= ctx.size())
      bad("subgroup reference: bad id \"" + s + "\"");
    return SubRef::finite(static_cast<int>(i));
  }
  // structure name ("1", "C4", "C2xC2") when unique in the lattice
  int match = -1, count = 0;
  for (int i = 0; i < ctx.size(); ++i) {
    FgAbGroup G = abstract_subgroup(ctx.lat.subgroups[static_cast<size_t>(i)]).group;
    if (G.to_string() == s) {
      match = i;
      ++count;
    }
  }
  if (count == 1) return SubRef::finite(match);
  if (count > 1)
    bad("subgroup reference: \"" + s + "\" is ambiguous; use \"#<id>\"");
  bool digits = true;
  for (char c : s) digits &= std::isdigit(static_cast<unsigned char>(c)) != 0;
  if (digits) {
    long i = std::stol(s);
    if (i >= 0 && i < ctx.size()) return SubRef::finite(static_cast<int>(i));
  }
  bad("subgroup reference: no subgroup matches \"" + s + "\"");
}

PrimePoint parse_point(const SpecContext& ctx, const std::string& s) {
  size_t colon = s.rfind(':');
  if (colon == std::string::npos)
    bad("prime point: expected \"subgroup:n\", got \"" + s + "\"");
  SubRef sub = resolve_subref(ctx, s.substr(0, colon));
  std::string nstr = s.substr(colon + 1);
  Ht n;
  if (nstr == "inf") {
    n = HT_INF;
  } else {
    size_t pos = 0;
    long v = -1;
    try {
      v = std::stol(nstr, &pos);
    } catch (const std::exception&) {
      bad("prime point: bad height \"" + nstr + "\"");
    }
    if (pos != nstr.size() || v < 0 || v >= HT_OMEGA)
      bad("prime point: bad height \"" + nstr + "\"");
    n = static_cast<Ht>(v);
  }
  return PrimePoint{sub, n};
}

}  // namespace specinv::io
