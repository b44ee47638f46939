// hecke-atlas: exact verification toolkit for rational-series idempotents
// in small general linear groups, the enriched Coxeter complex with its
// graded Hecke ringoid, and a generic rings-with-many-objects engine.
//
// Exit codes: 0 ok, 2 usage error, 3 budget exceeded, 4 verification
// failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hecke_atlas/cache.hpp"
#include "hecke_atlas/verify.hpp"

using namespace atlas;
using nlohmann::ordered_json;

namespace {

ordered_json cyc_json(const Cyclotomic& c) {
  ordered_json j;
  j["m"] = c.order();
  j["coeffs"] = ordered_json::array();
  for (const auto& r : c.coeffs()) j["coeffs"].push_back(rational_to_string(r));
  return j;
}

Cyclotomic cyc_from_json(const ordered_json& j) {
  int m = j.at("m").get<int>();
  std::vector<Rational> coeffs;
  for (const auto& s : j.at("coeffs"))
    coeffs.push_back(rational_from_string(s.get<std::string>()));
  return Cyclotomic(m, coeffs);
}

ordered_json label_json(const ConjClassLabel& l) {
  ordered_json out = ordered_json::array();
  for (auto& [f, lam] : l.parts) {
    ordered_json p;
    p["poly"] = f.c;
    p["partition"] = lam;
    out.push_back(p);
  }
  return out;
}

ordered_json ss_json(const SemisimpleClass& s) {
  ordered_json out = ordered_json::array();
  for (auto& [f, m] : s.parts) {
    ordered_json p;
    p["poly"] = f.c;
    p["multiplicity"] = m;
    out.push_back(p);
  }
  return out;
}

std::string chartab_payload(QContext& ctx, int n, bool analytic) {
  const CharacterTable& T = analytic ? *new CharacterTable(analytic_gl2_table(ctx))
                                     : ctx.table(n);
  const GroupTable& G = ctx.group(n);
  ordered_json j;
  j["group"] = {{"n", n}, {"q", ctx.q()}, {"order", G.size()}};
  j["classes"] = ordered_json::array();
  for (int c = 0; c < G.num_classes(); ++c) {
    ordered_json cj;
    cj["label"] = label_json(G.class_label_of(c));
    cj["size"] = G.class_size(c);
    j["classes"].push_back(cj);
  }
  j["degrees"] = T.degrees;
  j["irreducibles"] = ordered_json::array();
  for (const auto& row : T.irr) {
    ordered_json rj = ordered_json::array();
    for (const auto& v : row.v) rj.push_back(cyc_json(v));
    j["irreducibles"].push_back(rj);
  }
  if (analytic) delete &T;
  return j.dump(1);
}

std::string series_payload(QContext& ctx, int n, std::optional<u64> ell) {
  SeriesAssignment sa = series_partition(ctx, n);
  ordered_json j;
  j["group"] = {{"n", n}, {"q", ctx.q()}};
  j["classes"] = ordered_json::array();
  for (auto& s : sa.classes) j["classes"].push_back(ss_json(s));
  j["assignment"] = sa.irr_to_class;
  j["fibers"] = sa.fibers;
  j["idempotents"] = ordered_json::array();
  for (auto& s : sa.classes) {
    CentralElt e = idempotent_of_series(ctx, n, sa, s);
    ordered_json ej;
    ej["class"] = ss_json(s);
    ej["coeff_per_class"] = ordered_json::array();
    for (auto& c : e.coeff) ej["coeff_per_class"].push_back(cyc_json(c));
    j["idempotents"].push_back(ej);
  }
  if (ell) {
    ordered_json rj;
    rj["ell"] = *ell;
    rj["fibers"] = ordered_json::array();
    for (auto& [s, fiber] : bm_fibers(ctx, n, *ell)) {
      CentralElt e = idempotent_ell(ctx, n, sa, s, *ell);
      ordered_json fj;
      fj["regular_class"] = ss_json(s);
      fj["members"] = ordered_json::array();
      for (auto& m : fiber) fj["members"].push_back(ss_json(m));
      fj["integral"] = central_ell_integral(e, *ell);
      rj["fibers"].push_back(fj);
    }
    j["integrality"] = rj;
  }
  return j.dump(1);
}

Ringoid ringoid_from_json(const ordered_json& j) {
  int nobj = j.at("objects").get<int>();
  std::vector<int> dims = j.at("dims").get<std::vector<int>>();
  Ringoid R = ringoid_blank(nobj, dims);
  for (const auto& t : j.at("composition")) {
    int x = t.at("x"), y = t.at("y"), z = t.at("z");
    int a = t.at("a"), b = t.at("b"), c = t.at("c");
    R.comp[((size_t)x * nobj + y) * nobj + z].at(c, a * R.hd(y, z) + b) =
        cyc_from_json(t.at("value"));
  }
  int x = 0;
  for (const auto& idj : j.at("identities")) {
    if (R.hd(x, x) > 0) {
      int k = 0;
      for (const auto& cj : idj) R.id[x].at(k++, 0) = cyc_from_json(cj);
    }
    ++x;
  }
  return R;
}

std::string ringoid_to_json(const Ringoid& R) {
  ordered_json j;
  j["objects"] = R.nobj;
  j["dims"] = R.dims;
  j["composition"] = ordered_json::array();
  for (int x = 0; x < R.nobj; ++x)
    for (int y = 0; y < R.nobj; ++y)
      for (int z = 0; z < R.nobj; ++z) {
        const KMat& C = R.ctensor(x, y, z);
        for (int a = 0; a < R.hd(x, y); ++a)
          for (int b = 0; b < R.hd(y, z); ++b)
            for (int c = 0; c < R.hd(x, z); ++c) {
              const Cyclotomic& v = C.at(c, a * R.hd(y, z) + b);
              if (v.is_zero()) continue;
              ordered_json t;
              t["x"] = x; t["y"] = y; t["z"] = z;
              t["a"] = a; t["b"] = b; t["c"] = c;
              t["value"] = cyc_json(v);
              j["composition"].push_back(t);
            }
      }
  j["identities"] = ordered_json::array();
  for (int x = 0; x < R.nobj; ++x) {
    ordered_json idj = ordered_json::array();
    for (int k = 0; k < R.hd(x, x); ++k) idj.push_back(cyc_json(R.id[x].at(k, 0)));
    j["identities"].push_back(idj);
  }
  return j.dump(1);
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
  } else {
    std::ofstream out(out_path);
    out << payload << "\n";
  }
}

int report_exit(const std::vector<VerifyReport>& reports) {
  bool all_ok = true;
  for (const auto& r : reports) {
    std::cout << r.summary_line() << "\n";
    if (!r.ok()) all_ok = false;
  }
  return all_ok ? 0 : 4;
}

void emit_reports(const std::vector<VerifyReport>& reports,
                  const std::string& out_path) {
  if (out_path.empty()) return;
  ordered_json j = ordered_json::array();
  for (const auto& r : reports) j.push_back(ordered_json::parse(r.to_json()));
  std::ofstream out(out_path);
  out << j.dump(1) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hecke-atlas: exact desk-scale verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string cache_dir, out_path;
  u64 budget = 1000000;
  int jobs = 1;
  app.add_option("--cache", cache_dir, "cache directory");
  app.add_option("--budget", budget, "enumeration budget");
  app.add_option("--jobs", jobs, "concurrent suites for verify all");

  // chartab
  auto* chartab = app.add_subcommand("chartab", "character table of GL_n(F_q)");
  int ct_n = 2;
  u64 ct_q = 2;
  bool ct_analytic = false;
  chartab->add_option("--n", ct_n)->required();
  chartab->add_option("--q", ct_q)->required();
  chartab->add_flag("--analytic", ct_analytic, "analytic GL_2 oracle table");
  chartab->add_option("--out", out_path);

  // series
  auto* series = app.add_subcommand("series", "rational series and idempotents");
  int se_n = 2;
  u64 se_q = 2;
  std::optional<u64> se_ell;
  u64 se_ell_raw = 0;
  series->add_option("--n", se_n)->required();
  series->add_option("--q", se_q)->required();
  auto* ell_opt = series->add_option("--ell", se_ell_raw, "group by l-linkage");
  series->add_option("--out", out_path);

  // complex
  auto* complexc = app.add_subcommand("complex", "enriched Coxeter complex checks");
  int cx_n = 2, cx_D = -1, cx_imax = 2;
  u64 cx_q = 2;
  std::string cx_verify = "axioms,torsor,graded";
  complexc->add_option("--n", cx_n)->required();
  complexc->add_option("--q", cx_q)->required();
  complexc->add_option("--window", cx_D, "window radius (default n)");
  complexc->add_option("--imax", cx_imax, "grade bound");
  complexc->add_option("--verify", cx_verify, "axioms|torsor|graded");
  complexc->add_option("--out", out_path);

  // embed
  auto* embedc = app.add_subcommand("embed", "complex embedding checks");
  int em_np = 1, em_f = 2;
  u64 em_q = 2;
  std::string em_verify = "lemmeW,equivariance,centralizer";
  embedc->add_option("--nprime", em_np)->required();
  embedc->add_option("--f", em_f)->required();
  embedc->add_option("--q", em_q)->required();
  embedc->add_option("--verify", em_verify);
  embedc->add_option("--out", out_path);

  // hecke
  auto* heckec = app.add_subcommand("hecke", "graded Hecke ringoid checks");
  int hk_n = 2, hk_D = 2, hk_imax = 2;
  u64 hk_q = 2;
  std::string hk_verify = "central,absorb,decomp,graded";
  std::string hk_series;
  heckec->add_option("--n", hk_n)->required();
  heckec->add_option("--q", hk_q)->required();
  heckec->add_option("--window", hk_D);
  heckec->add_option("--grade-max", hk_imax);
  heckec->add_option("--series", hk_series,
                     "semicolon-separated poly-coefficients:multiplicity");
  heckec->add_option("--verify", hk_verify,
                     "central,absorb,decomp,graded,cartesian");
  heckec->add_option("--out", out_path);

  // ringoid
  auto* ringc = app.add_subcommand("ringoid", "rings-with-many-objects engine");
  std::string rg_file;
  bool rg_dump_sample = false;
  ringc->add_option("--file", rg_file, "ringoid JSON to check");
  ringc->add_flag("--dump-sample", rg_dump_sample, "emit a sample interchange file");
  ringc->add_option("--out", out_path);

  // verify
  auto* verifyc = app.add_subcommand("verify", "verification suites");
  auto* verify_all_c = verifyc->add_subcommand("all", "run the full battery");
  std::string level = "desk";
  verify_all_c->add_option("--level", level, "desk");
  verify_all_c->add_option("--out", out_path);
  auto* verify_compat_c = verifyc->add_subcommand("compat", "parabolic compatibility");
  int vc_n = 2;
  u64 vc_q = 3;
  verify_compat_c->add_option("--n", vc_n);
  verify_compat_c->add_option("--q", vc_q);
  verify_compat_c->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  VerifyOptions opt;
  opt.budget = budget;
  opt.jobs = jobs;

  try {
    if (*chartab) {
      Cache cache(cache_dir);
      std::ostringstream params;
      params << "n=" << ct_n << ";q=" << ct_q << ";analytic=" << ct_analytic;
      std::string payload;
      if (auto hit = cache.load("chartab", params.str())) {
        payload = *hit;
      } else {
        QContext ctx(ct_q, 4, budget);
        payload = chartab_payload(ctx, ct_n, ct_analytic);
        cache.store("chartab", params.str(), payload);
      }
      emit(payload, out_path);
      return 0;
    }
    if (*series) {
      if (ell_opt->count()) se_ell = se_ell_raw;
      Cache cache(cache_dir);
      std::ostringstream params;
      params << "n=" << se_n << ";q=" << se_q
             << ";ell=" << (se_ell ? std::to_string(*se_ell) : "none");
      std::string payload;
      if (auto hit = cache.load("series", params.str())) {
        payload = *hit;
      } else {
        QContext ctx(se_q, 4, budget);
        payload = series_payload(ctx, se_n, se_ell);
        cache.store("series", params.str(), payload);
      }
      emit(payload, out_path);
      return 0;
    }
    if (*complexc) {
      if (cx_D < 0) cx_D = cx_n;
      std::vector<VerifyReport> reports;
      if (cx_verify.find("axioms") != std::string::npos ||
          cx_verify.find("torsor") != std::string::npos)
        reports.push_back(suite_complex_axioms(cx_n, cx_q, opt));
      if (cx_verify.find("graded") != std::string::npos) {
        VerifyReport r;
        r.suite = "complex-graded";
        r.anchor = "composition induces a bijection on graded pieces";
        HeckeRingoid H(cx_n, cx_q, cx_D, cx_imax * cx_n);
        HeckeCheck c = H.check_graded_setlevel(opt.setlevel_budget);
        r.cases.push_back({"set-level bijection (" + std::to_string(c.cases) + ")",
                           c.pass, false, c.detail});
        reports.push_back(r);
      }
      emit_reports(reports, out_path);
      return report_exit(reports);
    }
    if (*embedc) {
      std::vector<VerifyReport> reports;
      VerifyReport r;
      r.suite = "embed";
      r.anchor = "simplicial equivariant embedding of the smaller complex";
      CoxEmbedding e{em_np, em_f};
      if (em_verify.find("lemmeW") != std::string::npos) {
        bool ok = true;
        auto win = window_simplices(em_np, 2);
        u64 cases = 0;
        for (const Simplex& s : win)
          for (const Simplex& tu : win)
            for (int g = -2 * em_np; g <= 2 * em_np; ++g) {
              if (!lemmeW_check(e, s, tu, g)) ok = false;
              ++cases;
            }
        r.cases.push_back({"graded hom descent (" + std::to_string(cases) + ")",
                           ok, false, ""});
      }
      if (em_verify.find("equivariance") != std::string::npos) {
        std::mt19937_64 rng(opt.seed);
        bool ok = true;
        for (int rep = 0; rep < 200; ++rep) {
          WeylElem wp = weyl_identity(em_np);
          for (int i = 0; i < em_np; ++i) wp.t[i] = (int)(rng() % 9) - 4;
          for (int i = em_np - 1; i > 0; --i)
            std::swap(wp.w[i], wp.w[rng() % (i + 1)]);
          std::vector<int> raw(em_np);
          for (int i = 0; i < em_np; ++i) raw[i] = (int)(rng() % 5);
          APoint xp = apoint_make(raw);
          if (!(embed_point(e, weyl_apply(wp, xp)) ==
                weyl_apply(embed_weyl(e, wp), embed_point(e, xp))))
            ok = false;
        }
        r.cases.push_back({"equivariance (200 samples)", ok, false, ""});
      }
      if (em_verify.find("centralizer") != std::string::npos) {
        QContext ctx(em_q, 2 * em_f * em_np, budget);
        const FieldTower& tw = ctx.tower();
        int kext = ctx.level() * em_f;
        // regular class: a generator of the degree-n' extension of F'
        fq_t gen = tw.gen(kext * em_np);
        SemisimpleClass sreg{{{minimal_poly(tw, kext, kext * em_np, gen), 1}}};
        SemisimpleClass s1{{{fqpoly_x_minus(tw, kext, 1), em_np}}};
        bool ok = centralizer_condition(tw, ctx.level(), em_f, em_np, sreg, budget) &&
                  !centralizer_condition(tw, ctx.level(), em_f, em_np, s1, budget);
        r.cases.push_back({"centralizer containment", ok, false, ""});
      }
      reports.push_back(r);
      emit_reports(reports, out_path);
      return report_exit(reports);
    }
    if (*heckec) {
      HeckeRingoid H(hk_n, hk_q, hk_D, hk_imax * hk_n);
      std::vector<SemisimpleClass> targets = H.series_classes();
      if (!hk_series.empty()) {
        // CLASS_SPEC: semicolon-separated "c0,c1,...,1:mult" ascending
        // coefficients of a monic irreducible (leading 1 included)
        targets.clear();
        SemisimpleClass s;
        std::istringstream in(hk_series);
        std::string part;
        while (std::getline(in, part, ';')) {
          auto colon = part.find(':');
          if (colon == std::string::npos) throw CLI::ValidationError("--series", "missing ':'");
          FqPoly f;
          f.k = H.cox().level();
          std::istringstream cs(part.substr(0, colon));
          std::string tok;
          while (std::getline(cs, tok, ',')) f.c.push_back((fq_t)std::stoul(tok));
          s.parts.push_back({f, std::stoi(part.substr(colon + 1))});
        }
        std::sort(s.parts.begin(), s.parts.end());
        targets.push_back(s);
      }
      std::vector<VerifyReport> reports;
      VerifyReport r;
      r.suite = "hecke";
      r.anchor = "series idempotents cut the graded Hecke ringoid into summands";
      if (hk_verify.find("central") != std::string::npos)
        for (auto& s : targets) {
          HeckeCheck c = H.check_centrality(s);
          r.cases.push_back({"central " + s.to_string(H.cox().tower()), c.pass,
                             false, c.detail});
        }
      if (hk_verify.find("absorb") != std::string::npos)
        for (auto& s : targets) {
          HeckeCheck c = H.check_absorption(s);
          r.cases.push_back({"absorb " + s.to_string(H.cox().tower()), c.pass,
                             false, c.detail});
        }
      if (hk_verify.find("decomp") != std::string::npos) {
        HeckeCheck c = H.check_decomposition();
        r.cases.push_back({"decomp", c.pass, false, c.detail});
      }
      if (hk_verify.find("graded") != std::string::npos) {
        HeckeCheck sl = H.check_graded_setlevel(opt.setlevel_budget);
        r.cases.push_back({"graded set-level", sl.pass, false, sl.detail});
        auto cfgs = H.curated_module_configs(opt.module_dim_budget);
        for (auto& s : targets) {
          HeckeCheck gm = H.check_graded_module(s, cfgs);
          r.cases.push_back({"graded module " + s.to_string(H.cox().tower()),
                             gm.pass, false, gm.detail});
        }
      }
      if (hk_verify.find("cartesian") != std::string::npos) {
        int vi = 0;
        while (vi < (int)H.window().size() && H.window()[vi].dim() != 0) ++vi;
        for (auto& s : targets) {
          auto rep = H.cartesian_report(vi, s);
          bool consistent = true;
          for (auto& cc : rep)
            if (!cc.dim_consistent) consistent = false;
          r.cases.push_back({"cartesian dims " + s.to_string(H.cox().tower()) +
                                 " (" + std::to_string(rep.size()) + ")",
                             consistent, false, ""});
        }
      }
      reports.push_back(r);
      emit_reports(reports, out_path);
      return report_exit(reports);
    }
    if (*ringc) {
      if (rg_dump_sample) {
        Ringoid R = matrix_pattern_ringoid({1, 2}, {{1, 1}, {0, 1}});
        emit(ringoid_to_json(R), out_path);
        return 0;
      }
      if (!rg_file.empty()) {
        std::ifstream in(rg_file);
        if (!in) throw std::runtime_error("cannot open " + rg_file);
        ordered_json j;
        in >> j;
        Ringoid R = ringoid_from_json(j);
        CheckResult res = ringoid_check(R);
        std::cout << (res.ok ? "OK" : ("INVALID: " + res.witness)) << "\n";
        return res.ok ? 0 : 4;
      }
      std::vector<VerifyReport> reports{suite_ringoid_engine(opt)};
      emit_reports(reports, out_path);
      return report_exit(reports);
    }
    if (*verifyc) {
      if (*verify_all_c) {
        if (level != "desk") throw CLI::ValidationError("--level", "only 'desk'");
        auto reports = verify_all(opt);
        emit_reports(reports, out_path);
        return report_exit(reports);
      }
      if (*verify_compat_c) {
        std::vector<VerifyReport> reports{suite_parabolic_compat(opt)};
        (void)vc_n;
        (void)vc_q;
        emit_reports(reports, out_path);
        return report_exit(reports);
      }
      std::cerr << "verify: expected a subcommand (all, compat)\n";
      return 2;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
