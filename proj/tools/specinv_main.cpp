// specinv: command-line front end for the invariant-prime-spectrum library.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "specinv/acceptance.hpp"
#include "specinv/json_io.hpp"

namespace io = specinv::io;
using specinv::Ht;
using specinv::HT_INF;
using io::Json;

namespace {

struct Options {
  std::string group = "0;";
  long prime = 2;
  int max_height = 4;
  int trunc = 8;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool no_cache = false;
};

// ---- output ----------------------------------------------------------------

void print_table(const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      print_table(v, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i)
      print_table(j[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  std::cout << prefix << "\t"
            << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

void emit(const Options& opt, const Json& j) {
  if (opt.format == "table")
    print_table(j, "");
  else
    std::cout << j.dump(2) << "\n";
}

// ---- payload and context helpers -------------------------------------------

Json load_payload(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw specinv::DomainError("cannot open input file " + arg.substr(1));
    return Json::parse(in);
  }
  return Json::parse(arg);
}

std::filesystem::path cache_dir() {
  if (const char* env = std::getenv("SPECINV_CACHE_DIR")) return env;
  return std::filesystem::temp_directory_path() / "specinv-cache";
}

Json lattice_to_json(const specinv::FiniteLattice& lat) {
  Json out;
  Json subs = Json::array();
  for (const specinv::Subgroup& B : lat.subgroups)
    subs.push_back(io::matrix_to_json(B.lattice));
  out["subgroups"] = std::move(subs);
  out["leq"] = lat.leq;
  out["ptoral"] = lat.ptoral;
  out["prank"] = lat.prank;
  return out;
}

specinv::FiniteLattice lattice_from_json(const specinv::FgAbGroup& A, const Json& j) {
  specinv::FiniteLattice lat;
  for (const Json& m : j.at("subgroups"))
    lat.subgroups.push_back(specinv::Subgroup{A, io::matrix_from_json(m)});
  lat.leq = j.at("leq").get<std::vector<std::vector<char>>>();
  lat.ptoral = j.at("ptoral").get<std::vector<std::vector<char>>>();
  lat.prank = j.at("prank").get<std::vector<std::vector<int>>>();
  return lat;
}

/// Subgroup-lattice cache: content-addressed by (descriptor, prime), an
/// optimization only — any read failure falls back to recomputation.
specinv::SpecContext load_context(const Options& opt) {
  specinv::FgAbGroup A = io::parse_group_descriptor(opt.group);
  if (A.rank == 1 && A.torsion.empty()) return specinv::make_circle_context(opt.prime);
  if (A.rank > 0)
    throw specinv::DomainError("positive-rank groups other than the circle (\"1;\") "
                               "are not supported");
  std::filesystem::path file =
      cache_dir() / ("lat-" + io::group_descriptor(A) + "-p" +
                     std::to_string(opt.prime) + ".json");
  if (!opt.no_cache) {
    std::ifstream in(file);
    if (in) {
      try {
        specinv::SpecContext ctx;
        ctx.group = A;
        ctx.prime = opt.prime;
        ctx.lat = lattice_from_json(A, Json::parse(in));
        return ctx;
      } catch (const std::exception&) {
        // stale or corrupt cache entry: recompute below
      }
    }
  }
  specinv::SpecContext ctx = specinv::make_finite_context(A, opt.prime);
  if (!opt.no_cache) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (!ec) {
      std::ofstream out(file);
      out << lattice_to_json(ctx.lat).dump();
    }
  }
  return ctx;
}

Ht parse_trunc_height(const std::string& s) {
  return s == "inf" ? HT_INF : static_cast<Ht>(std::stol(s));
}

// ---- subcommand bodies -----------------------------------------------------

int run_app(int argc, char** argv) {
  CLI::App app{"invariant prime spectra of equivariant Lazard rings"};
  app.require_subcommand(1);
  Options opt;
  std::function<Json()> action;

  auto add_common = [&](CLI::App* sub, bool needs_group) {
    if (needs_group)
      sub->add_option("--group", opt.group, "group descriptor r;d1,d2,...");
    sub->add_option("--prime", opt.prime, "the prime p");
    sub->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--no-cache", opt.no_cache, "disable the lattice disk cache");
  };

  // group subgroups
  auto* grp = app.add_subcommand("group", "subgroup lattice operations");
  auto* grp_subs = grp->add_subcommand("subgroups", "enumerate closed subgroups");
  add_common(grp_subs, true);
  grp_subs->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      Json out = Json::array();
      for (int i = 0; i < ctx.size(); ++i) {
        const specinv::Subgroup& B = ctx.lat.subgroups[static_cast<size_t>(i)];
        Json e;
        e["id"] = i;
        e["name"] = specinv::abstract_subgroup(B).group.to_string();
        e["order"] = io::int_to_json(specinv::abstract_subgroup(B).group.order());
        e["lattice"] = io::matrix_to_json(B.lattice);
        out.push_back(std::move(e));
      }
      return out;
    };
  });

  // spec includes / order / closure / admissible
  auto* spec = app.add_subcommand("spec", "invariant prime spectrum");
  std::string from, to, fn_arg;
  std::vector<std::string> point_args;

  auto* sp_inc = spec->add_subcommand("includes", "test I_{B,n} <= I_{B',n'}");
  add_common(sp_inc, true);
  sp_inc->add_option("--from", from, "point \"subgroup:n\"")->required();
  sp_inc->add_option("--to", to, "point \"subgroup:n\"")->required();
  sp_inc->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      Json out;
      out["includes"] =
          specinv::includes(ctx, io::parse_point(ctx, from), io::parse_point(ctx, to));
      return out;
    };
  });

  auto* sp_ord = spec->add_subcommand("order", "full specialization order");
  add_common(sp_ord, true);
  sp_ord->add_option("--max-height", opt.max_height, "height horizon H");
  sp_ord->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      specinv::SpecPoset po = specialization_order(ctx, opt.max_height);
      Json out;
      Json pts = Json::array();
      for (const specinv::PrimePoint& P : po.points) pts.push_back(io::point_to_json(P));
      out["points"] = std::move(pts);
      out["leq"] = po.leq;
      return out;
    };
  });

  auto* sp_cl = spec->add_subcommand("closure", "closure of a point set");
  add_common(sp_cl, true);
  sp_cl->add_option("--point", point_args, "point \"subgroup:n\" (repeatable)")
      ->required();
  sp_cl->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      std::vector<specinv::PrimePoint> pts;
      for (const std::string& s : point_args) pts.push_back(io::parse_point(ctx, s));
      specinv::ClosedSet V = specinv::closure(ctx, pts);
      Json out;
      out["boundary"] = io::admfn_to_json(ctx, V.boundary);
      return out;
    };
  });

  auto* sp_adm = spec->add_subcommand("admissible", "check a boundary function");
  add_common(sp_adm, true);
  sp_adm->add_option("--fn", fn_arg, "admissible function (inline JSON or @file)")
      ->required();
  sp_adm->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      specinv::AdmissibleFn f = io::admfn_from_json(ctx, load_payload(fn_arg));
      specinv::AdmissibleCheck chk = specinv::is_admissible(ctx, f);
      Json out;
      out["admissible"] = chk.ok;
      if (!chk.ok) {
        out["sub"] = io::subref_to_json(chk.sub);
        out["super"] = io::subref_to_json(chk.super);
        out["deficit"] = chk.deficit;
      }
      return out;
    };
  });

  // witness realize
  auto* wit = app.add_subcommand("witness", "height-function realization");
  auto* wi_re = wit->add_subcommand("realize", "realize an admissible function");
  add_common(wi_re, true);
  wi_re->add_option("--fn", fn_arg, "admissible function (inline JSON or @file)")
      ->required();
  wi_re->callback([&] {
    action = [&]() {
      specinv::ContextCache cache(opt.prime);
      specinv::SpecContext ctx = load_context(opt);
      specinv::AdmissibleFn f = io::admfn_from_json(ctx, load_payload(fn_arg));
      specinv::WitnessSet W = specinv::realize(ctx, f, cache);
      Json out;
      Json elems = Json::array();
      for (const specinv::ExprPtr& e : W.elements) {
        Json entry;
        entry["expr"] = io::expr_to_json(e);
        entry["display"] = e->to_string();
        entry["heights"] = io::heightfn_to_json(ctx, specinv::expr_height(e, cache));
        elems.push_back(std::move(entry));
      }
      out["elements"] = std::move(elems);
      out["heights"] =
          io::heightfn_to_json(ctx, specinv::witness_height(W, ctx, cache));
      out["verified"] =
          static_cast<bool>(specinv::verify_realization(ctx, f, W, cache));
      return out;
    };
  });

  // fgl pseries / psi / blueshift / gm-c2
  auto* fgl = app.add_subcommand("fgl", "formal-group-law engine");
  long fp = 2;
  int fn_n = 1, fk = 1, fN = 0, mod_in = 0, sign = 1;
  long mult = 0;
  bool typical = false;

  auto* fg_ps = fgl->add_subcommand("pseries", "[m]-series of the universal law");
  fg_ps->add_option("--p", fp, "the prime")->required();
  fg_ps->add_flag("--typical", typical, "universal p-typical law");
  fg_ps->add_option("--trunc", opt.trunc, "truncation degree");
  fg_ps->add_option("--nvars", fN, "number of generators (default: maximal)");
  fg_ps->add_option("--mod-in", mod_in, "reduce mod I_n first");
  fg_ps->add_option("--m", mult, "series multiplier (default: p)");
  fg_ps->add_option("--format", opt.format)->check(CLI::IsMember({"json", "table"}));
  fg_ps->callback([&] {
    action = [&]() {
      if (!typical) throw specinv::DomainError("pseries requires --typical");
      int N = fN;
      if (N == 0)
        for (long pw = fp; pw <= opt.trunc; pw *= fp) ++N;
      specinv::FGL F = specinv::universal_p_typical(fp, opt.trunc, std::max(N, 1));
      if (mod_in > 0) F = specinv::reduce_mod_In(F, mod_in);
      specinv::Series1<specinv::VPoly> ps =
          specinv::n_series(F, mult ? mult : fp);
      Json out;
      out["law_ring"] = F.ring.to_string();
      out["series"] = io::series1_to_json(F.ring, ps);
      return out;
    };
  });

  auto* fg_psi = fgl->add_subcommand("psi", "psi_{p^k}^{(n)} power-operation symbol");
  fg_psi->add_option("--p", fp)->required();
  fg_psi->add_option("--n", fn_n)->required();
  fg_psi->add_option("--k", fk)->required();
  fg_psi->add_option("--trunc", opt.trunc);
  fg_psi->add_option("--format", opt.format)->check(CLI::IsMember({"json", "table"}));
  fg_psi->callback([&] {
    action = [&]() {
      specinv::Series1<specinv::VPoly> s =
          specinv::psi_series(fp, fn_n, fk, opt.trunc);
      specinv::VRing r = s.c.empty() ? specinv::VRing{} : s.c.begin()->second.ring();
      Json out;
      out["series"] = io::series1_to_json(r, s);
      out["constant_term"] = io::vpoly_to_string(s.at(0));
      return out;
    };
  });

  auto* fg_bs = fgl->add_subcommand("blueshift", "blueshift certificate");
  fg_bs->add_option("--p", fp)->required();
  fg_bs->add_option("--n", fn_n)->required();
  fg_bs->add_option("--k", fk)->required();
  fg_bs->add_option("--trunc", opt.trunc);
  fg_bs->add_option("--format", opt.format)->check(CLI::IsMember({"json", "table"}));
  fg_bs->callback([&] {
    action = [&]() {
      specinv::BlueshiftReport rep =
          specinv::blueshift_report(fp, fn_n, fk, opt.trunc);
      Json out;
      out["p"] = rep.p;
      out["n"] = rep.n;
      out["k"] = rep.k;
      out["trunc"] = rep.D;
      out["constant_term"] = io::vpoly_to_string(rep.constant_term);
      out["constant_is_unit_times_vnm1"] = rep.constant_is_unit_times_vnm1;
      out["lowest_coeff_mod_vnm1"] = io::vpoly_to_string(rep.lowest_coeff_mod_vnm1);
      out["lowest_deg_mod_vnm1"] = rep.lowest_deg_mod_vnm1;
      out["lowest_is_unit"] = rep.lowest_is_unit;
      out["height_drop"] = rep.height_drop;
      out["note"] = rep.note;
      return out;
    };
  });

  auto* fg_gm = fgl->add_subcommand("gm-c2", "multiplicative C_2 model");
  fg_gm->add_option("--sign", sign)->required()->check(CLI::IsMember({-1, 1}));
  fg_gm->add_option("--trunc", opt.trunc);
  fg_gm->add_option("--format", opt.format)->check(CLI::IsMember({"json", "table"}));
  fg_gm->callback([&] {
    action = [&]() {
      specinv::GmC2 gm = specinv::gm_c2(sign, opt.trunc);
      Json out;
      out["euler"] = io::int_to_json(gm.euler);
      out["quotient_order"] = io::int_to_json(abs(gm.euler));
      out["law"] = io::series2_to_json(gm.law.ring, gm.law.F);
      return out;
    };
  });

  // support of / smash / wedge / phi / compare / random
  auto* sup = app.add_subcommand("support", "type functions and supports");
  std::string fn2_arg, b_arg;

  auto* su_of = sup->add_subcommand("of", "support of a type function");
  add_common(su_of, true);
  su_of->add_option("--fn", fn_arg, "type function (inline JSON or @file)")->required();
  su_of->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      specinv::TypeFunction t = io::tyfn_from_json(ctx, load_payload(fn_arg));
      specinv::RealizableCheck chk = specinv::is_realizable_type(ctx, t);
      Json out;
      out["realizable"] = chk.ok;
      if (!chk.ok) {
        out["sub"] = io::subref_to_json(chk.sub);
        out["super"] = io::subref_to_json(chk.super);
        out["bound"] = io::ty_to_json(chk.bound);
        return out;
      }
      out["boundary"] = io::admfn_to_json(ctx, specinv::support_of(ctx, t).boundary);
      return out;
    };
  });

  for (const char* which : {"smash", "wedge"}) {
    auto* su_op = sup->add_subcommand(
        which, std::string("type of a ") + which + " of two spectra");
    add_common(su_op, true);
    su_op->add_option("--fn", fn_arg, "first type function")->required();
    su_op->add_option("--fn2", fn2_arg, "second type function")->required();
    std::string w = which;
    su_op->callback([&, w] {
      action = [&, w]() {
        specinv::SpecContext ctx = load_context(opt);
        specinv::TypeFunction t1 = io::tyfn_from_json(ctx, load_payload(fn_arg));
        specinv::TypeFunction t2 = io::tyfn_from_json(ctx, load_payload(fn2_arg));
        specinv::TypeFunction r =
            w == "smash" ? specinv::smash(t1, t2) : specinv::wedge(t1, t2);
        Json out;
        out["type"] = io::tyfn_to_json(ctx, r);
        return out;
      };
    });
  }

  auto* su_phi = sup->add_subcommand("phi", "geometric fixed points");
  add_common(su_phi, true);
  su_phi->add_option("--b", b_arg, "subgroup reference")->required();
  su_phi->add_option("--fn", fn_arg, "type function")->required();
  su_phi->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      if (ctx.circle)
        throw specinv::DomainError("phi is implemented for finite groups only");
      specinv::TypeFunction t = io::tyfn_from_json(ctx, load_payload(fn_arg));
      specinv::SubRef b = io::resolve_subref(ctx, b_arg);
      specinv::PhiResult phi = specinv::geom_fixed_points(
          ctx, t, ctx.lat.subgroups[static_cast<size_t>(b.index)]);
      Json out;
      out["quotient_group"] = io::group_to_json(phi.ctx.group);
      out["type"] = io::tyfn_to_json(phi.ctx, phi.t);
      out["preimage"] = phi.preimage;
      return out;
    };
  });

  auto* su_cmp = sup->add_subcommand("compare", "Balmer vs inclusion order");
  add_common(su_cmp, true);
  su_cmp->add_option("--max-height", opt.max_height, "height horizon H");
  su_cmp->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      specinv::BalmerCompare bc = specinv::balmer_compare(ctx, opt.max_height);
      Json out;
      Json pts = Json::array();
      for (const specinv::PrimePoint& P : bc.points) pts.push_back(io::point_to_json(P));
      out["points"] = std::move(pts);
      out["order_reversed"] = bc.order_reversed;
      out["certificate"] = bc.certificate;
      return out;
    };
  });

  auto* su_rnd = sup->add_subcommand("random", "seeded random realizable type");
  add_common(su_rnd, true);
  su_rnd->add_option("--seed", opt.seed, "RNG seed");
  su_rnd->callback([&] {
    action = [&]() {
      specinv::SpecContext ctx = load_context(opt);
      std::mt19937_64 rng(opt.seed);
      specinv::TypeFunction t = specinv::random_type_function(ctx, rng, 4);
      Json out;
      out["type"] = io::tyfn_to_json(ctx, t);
      return out;
    };
  });

  // acceptance
  std::string filter;
  auto* acc = app.add_subcommand("acceptance", "run the acceptance suite");
  acc->add_option("--filter", filter, "only criteria whose name contains this");
  acc->callback([&] {
    action = [&]() {
      auto results = specinv::run_acceptance(filter);
      bool all = true;
      Json out = Json::array();
      for (const auto& r : results) {
        Json e;
        e["id"] = r.id;
        e["name"] = r.name;
        e["pass"] = r.pass;
        e["seconds"] = r.seconds;
        e["detail"] = r.detail;
        out.push_back(std::move(e));
        all &= r.pass;
      }
      if (!all) throw specinv::DomainError("acceptance criteria failed: " + out.dump());
      return out;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    emit(opt, action());
  } catch (const std::exception& ex) {
    Json err;
    err["error"] = ex.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run_app(argc, argv); }
