// rpcd: command-line front end for the coordinate-descent rate toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "rpcd/bounds.hpp"
#include "rpcd/exactpoly.hpp"
#include "rpcd/experiments.hpp"
#include "rpcd/io.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/runners.hpp"
#include "rpcd/verify.hpp"
#include "rpcd/worstcase.hpp"

using namespace rpcd;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFlagError = 2;
constexpr int kVerifyFailed = 3;
constexpr int kNumericFailed = 4;

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.10g", v);
  return b;
}

std::vector<PlotSeries> setting_series(const SettingResult& r) {
  PlotSeries a{"RCD", {}, {}, {}, {}}, b{"RPCD", {}, {}, {}, {}};
  for (const auto& s : r.rcd.per_step) {
    a.x.push_back(static_cast<double>(s.step));
    a.mean.push_back(s.mean);
    a.lo.push_back(s.min);
    a.hi.push_back(s.max);
  }
  for (const auto& s : r.rpcd.per_step) {
    b.x.push_back(static_cast<double>(s.step) * r.n);  // epoch k sits at iteration n k
    b.mean.push_back(s.mean);
    b.lo.push_back(s.min);
    b.hi.push_back(s.max);
  }
  return {a, b};
}

void emit_setting(const SettingResult& r, const std::string& dir, bool svg) {
  for (const auto* st : {&r.rcd, &r.rpcd}) {
    const std::string stem = join(dir, r.setting.id + "_" + to_string(st->algorithm));
    write_text_file(stem + ".csv", to_csv(*st));
    json side = to_json(*st);
    side.erase("per_step");
    side["objective"] = describe(r.setting.spec);
    side["csv"] = std::filesystem::path(stem + ".csv").filename().string();
    write_text_file(stem + ".json", side.dump(2) + "\n");
  }
  if (svg)
    write_text_file(join(dir, r.setting.id + ".svg"),
                    svg_line_plot(describe(r.setting.spec) + " (RPCD epoch k at iteration nk)", "iteration",
                                  "||x_k - x*|| / ||x_0 - x*||", setting_series(r)));
  const auto& a = r.rcd.per_step.back();
  const auto& b = r.rpcd.per_step.back();
  std::cout << r.setting.id << ": RCD mean " << num(a.mean) << " at iteration " << a.step << ", RPCD mean "
            << num(b.mean) << " at epoch " << b.step << "\n";
}

int emit_rho_curves(const RhoCurveConfig& cfg, const std::string& dir, bool svg) {
  auto rows = rho_curves(cfg);
  const std::string stem = join(dir, "rho_curves_n" + std::to_string(cfg.n));
  write_text_file(stem + ".csv", to_csv(rows, cfg.norm));
  bool ordered = true;
  for (const auto& r : rows) ordered = ordered && r.rho_max_k <= r.rpcd_ub + 1e-10;
  if (svg) {
    std::vector<PlotSeries> s(4);
    s[0].label = "rho_n";
    s[1].label = "rho_max_k";
    s[2].label = "rpcd_ub";
    s[3].label = "rcd_lb_pi^n";
    if (cfg.norm != NormMode::None) s.push_back(PlotSeries{"norm_bound", {}, {}, {}, {}});
    for (const auto& r : rows) {
      double v[] = {r.rho_n, r.rho_max_k, r.rpcd_ub, r.rcd_lb_pi_pow_n, r.norm_bound};
      for (size_t i = 0; i < s.size(); ++i) {
        s[i].x.push_back(r.sigma);
        s[i].mean.push_back(v[i]);
      }
    }
    write_text_file(stem + ".svg", svg_line_plot("per-epoch rates, n = " + std::to_string(cfg.n), "sigma", "rate", s));
  }
  std::cout << "wrote " << stem << ".csv (" << rows.size() << " rows); rho_max_k <= rpcd_ub everywhere: "
            << (ordered ? "yes" : "NO") << "\n";
  return kOk;
}

int emit_sturm(const std::string& out, bool as_json, bool reference, bool tamper) {
  CoefficientTable table;
  if (tamper)
    table = [](Which w, int n, int k) {
      long t = t_coefficient(w, n, k);
      return w == Which::T2 && k == 0 ? -t : t;
    };
  InequalityReport rep = verify_appendix_c(reference ? Normalization::Reference : Normalization::Single, table);
  WorkedExample we = worked_example();
  bool we_ok = we.v_06 == 3 && we.v_1 == 3 && we.roots == 0 && we.sequence.size() == 8;
  json j = to_json(rep);
  j["worked_example"] = {{"sequence", json::array()}, {"V_a", we.v_06}, {"V_b", we.v_1}, {"roots", we.roots},
                         {"signs_a", we.signs_06}, {"signs_b", we.signs_1}};
  for (const auto& p : we.sequence) j["worked_example"]["sequence"].push_back(p.to_string("s"));
  if (!out.empty()) write_text_file(join(out, "verify_sturm.json"), j.dump(2) + "\n");
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    int prev = 0;
    for (const auto& c : rep.cases) {
      if (c.case_id != prev) {
        if (prev) std::cout << "\n";
        std::cout << "case " << c.case_id << " " << c.interval << ":";
        prev = c.case_id;
      }
      std::cout << " " << (c.which == Which::T1 ? "T1" : "T2") << "(m=" << c.m;
      if (c.case_id == 1) std::cout << ",n=" << c.n;
      std::cout << ")=" << (c.ok ? "pass" : "FAIL");
    }
    std::cout << "\n";
    std::cout << "table/symbolic consistency: " << (rep.tables_consistent ? "pass" : "FAIL") << "\n";
    for (const auto& f : rep.consistency_failures) std::cout << "  " << f << "\n";
    std::cout << "worked example: V(3/5) = " << we.v_06 << ", V(1) = " << we.v_1 << ", roots = " << we.roots << " -> "
              << (we_ok ? "pass" : "FAIL") << "\n";
    std::cout << "all inequalities: " << (rep.all_ok ? "pass" : "FAIL") << "\n";
  }
  return rep.all_ok && we_ok ? kOk : kVerifyFailed;
}

int emit_nonasymptotic(const std::vector<std::pair<int, double>>& cells, const std::string& out, bool as_json) {
  json arr = json::array();
  bool ok = true;
  for (auto [n, s] : cells) {
    NonasymptoticCheck c = verify_nonasymptotic(n, s);
    arr.push_back(to_json(c));
    ok = ok && c.ok;
    if (!as_json)
      std::cout << "n=" << n << " sigma=" << num(s) << " K0=" << c.k0 << " margin(K0)=" << num(c.margin_k0)
                << " margin(K0-1)=" << num(c.margin_prev) << " -> " << (c.ok ? "pass" : "FAIL") << "\n";
  }
  if (as_json) std::cout << arr.dump(2) << "\n";
  if (!out.empty()) write_text_file(join(out, "verify_nonasymptotic.json"), arr.dump(2) + "\n");
  return ok ? kOk : kVerifyFailed;
}

std::vector<int> parse_signs(const std::string& s) {
  std::vector<int> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int x = std::stoi(tok);
    if (x != 1 && x != -1) throw DomainError("sign entries must be 1 or -1");
    v.push_back(x);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinate descent rate toolkit: RCD vs random-permutation CD"};
  app.require_subcommand(1);
  std::function<int()> action;

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Rate bounds and restricted spectral radius for the PI Hessian");
  int b_n = 0;
  double b_sigma = 0;
  bool b_json = false;
  std::string b_out;
  bounds->add_option("--n", b_n, "dimension")->required();
  bounds->add_option("--sigma", b_sigma, "minimum eigenvalue in (0, 1]")->required();
  bounds->add_flag("--json", b_json, "print JSON");
  bounds->add_option("--out", b_out, "write bounds.json into this directory");
  bounds->callback([&] {
    action = [&] {
      RateReport r = rate_report(b_n, b_sigma);
      if (b_json)
        std::cout << to_json(r).dump(2) << "\n";
      else
        std::cout << format_table(r);
      if (!b_out.empty()) write_text_file(join(b_out, "bounds.json"), to_json(r).dump(2) + "\n");
      return kOk;
    };
  });

  // run
  auto* run = app.add_subcommand("run", "Monte-Carlo trajectories (CSV + SVG)");
  std::string r_preset, r_objective = "pi", r_algorithm = "both", r_instance, r_out = "out";
  int r_n = 25, r_k = 0, r_m = 100, r_trials = 10, r_init = 10;
  double r_sigma = 0.7, r_alpha = 0.5, r_lambda = 0.1, r_flip = 0.1;
  long r_steps = 200, r_epochs = -1;
  std::uint64_t r_seed = 11, r_iseed = 7;
  bool r_nosvg = false;
  run->add_option("--preset", r_preset, "preset id")->check(CLI::IsMember(preset_ids()));
  run->add_option("--objective", r_objective, "pi, block, random, lse, logistic")
      ->check(CLI::IsMember({"pi", "block", "random", "lse", "logistic"}));
  run->add_option("--instance", r_instance, "quadratic instance JSON file (overrides --objective)");
  run->add_option("--algorithm", r_algorithm, "rcd, rpcd, ccd or both")->check(CLI::IsMember({"rcd", "rpcd", "ccd", "both"}));
  run->add_option("--n", r_n, "dimension");
  run->add_option("--sigma", r_sigma, "minimum eigenvalue");
  run->add_option("--k", r_k, "block size for --objective block (default n)");
  run->add_option("--alpha", r_alpha, "LSE scale");
  run->add_option("--m", r_m, "logistic sample count");
  run->add_option("--lambda", r_lambda, "ridge parameter");
  run->add_option("--flip-prob", r_flip, "logistic label flip probability");
  run->add_option("--instance-seed", r_iseed, "seed for generated matrices and data");
  run->add_option("--steps", r_steps, "RCD iterations (or the single algorithm's steps)");
  run->add_option("--epochs", r_epochs, "RPCD/CCD epochs with --algorithm both (default ceil(steps/n))");
  run->add_option("--trials", r_trials, "runs per initial point");
  run->add_option("--init-points", r_init, "initial points");
  run->add_option("--seed", r_seed, "trial seed root");
  run->add_option("--out", r_out, "artifact directory");
  run->add_flag("--no-svg", r_nosvg, "skip SVG output");
  run->callback([&] {
    action = [&]() -> int {
      if (!r_preset.empty()) {
        ExperimentPreset p = preset(r_preset);
        const std::string dir = join(r_out, p.id);
        if (p.kind == "rho-curves") return emit_rho_curves(p.rho, dir, !r_nosvg);
        if (p.kind == "verify-sturm") return emit_sturm(dir, false, false, false);
        if (p.kind == "verify-nonasymptotic") return emit_nonasymptotic(p.cells, dir, false);
        for (const Setting& s : p.settings) emit_setting(run_setting(s), dir, !r_nosvg);
        return kOk;
      }
      if (r_steps < 0) throw DomainError("--steps must be >= 0");
      if (!r_instance.empty()) {
        QuadraticInstance inst = instance_from_json(json::parse(read_text_file(r_instance)));
        validate(inst);
        Objective obj(inst.hessian, Objective::Term::None, Matrix(), Vector(), 0.0);
        RunConfig c{algorithm_from_string(r_algorithm == "both" ? "rcd" : r_algorithm), r_steps, r_trials, r_init, r_seed};
        if (r_algorithm != "both") {
          TrajectoryStats st = run_monte_carlo(obj, Vector::Zero(inst.n), c);
          write_text_file(join(r_out, "instance_" + to_string(st.algorithm) + ".csv"), to_csv(st));
          std::cout << "final mean " << num(st.per_step.back().mean) << "\n";
          return kOk;
        }
        SettingResult sr;
        sr.setting.id = "instance";
        sr.setting.spec = RandomQuadratic{inst.n, inst.sigma, inst.seed};
        sr.n = inst.n;
        sr.rcd = run_monte_carlo(obj, Vector::Zero(inst.n), c);
        c.algorithm = Algorithm::RPCD;
        c.steps = r_epochs >= 0 ? r_epochs : (r_steps + inst.n - 1) / inst.n;
        sr.rpcd = run_monte_carlo(obj, Vector::Zero(inst.n), c);
        emit_setting(sr, r_out, !r_nosvg);
        return kOk;
      }
      ObjectiveSpec spec;
      if (r_objective == "pi")
        spec = PIQuadratic{r_n, r_sigma, r_n};
      else if (r_objective == "block")
        spec = PIQuadratic{r_n, r_sigma, r_k > 0 ? r_k : r_n};
      else if (r_objective == "random")
        spec = RandomQuadratic{r_n, r_sigma, r_iseed};
      else if (r_objective == "lse")
        spec = QuadraticLSE{r_n, r_sigma, r_alpha, r_iseed};
      else
        spec = Logistic{r_n, r_m, r_lambda, r_flip, r_iseed};
      validate(spec);
      if (r_algorithm == "both") {
        Setting s;
        s.id = r_objective;
        s.spec = spec;
        s.rcd_iterations = r_steps;
        s.rpcd_epochs = r_epochs >= 0 ? r_epochs : (r_steps + r_n - 1) / r_n;
        s.trials = r_trials;
        s.init_points = r_init;
        s.seed = r_seed;
        emit_setting(run_setting(s), r_out, !r_nosvg);
        return kOk;
      }
      BuiltObjective b = build_objective(spec);
      Vector xs = solve_reference(b.objective);
      RunConfig c{algorithm_from_string(r_algorithm), r_steps, r_trials, r_init, r_seed};
      TrajectoryStats st = run_monte_carlo(b.objective, xs, c);
      const std::string stem = join(r_out, r_objective + "_" + to_string(st.algorithm));
      write_text_file(stem + ".csv", to_csv(st));
      json side = to_json(st);
      side.erase("per_step");
      side["objective"] = describe(spec);
      write_text_file(stem + ".json", side.dump(2) + "\n");
      if (!r_nosvg) {
        PlotSeries ps{to_string(st.algorithm), {}, {}, {}, {}};
        for (const auto& s : st.per_step) {
          ps.x.push_back(static_cast<double>(s.step));
          ps.mean.push_back(s.mean);
          ps.lo.push_back(s.min);
          ps.hi.push_back(s.max);
        }
        write_text_file(stem + ".svg", svg_line_plot(describe(spec), st.axis, "||x_k - x*|| / ||x_0 - x*||", {ps}));
      }
      std::cout << "wrote " << stem << ".csv; final mean " << num(st.per_step.back().mean) << "\n";
      return kOk;
    };
  });

  // rho-curves
  auto* rho = app.add_subcommand("rho-curves", "Restricted spectral radii and bound curves against sigma");
  std::string c_preset, c_out = "out";
  int c_n = 40;
  double c_step = 0.01;
  bool c_norm = false, c_nosvg = false;
  std::uint64_t c_samples = 0, c_seed = 0;
  rho->add_option("--preset", c_preset, "fig2 or fig3")->check(CLI::IsMember({"fig2", "fig3"}));
  rho->add_option("--n", c_n, "dimension");
  rho->add_option("--grid-step", c_step, "sigma grid spacing (grid runs up to 1)");
  rho->add_flag("--norm-bound", c_norm, "add the A^{-1/2} M(A) A^{-1/2} norm curve");
  rho->add_option("--samples", c_samples, "sampled norm estimate with this many permutations (0: exact PI formula)");
  rho->add_option("--seed", c_seed, "seed for the sampled norm");
  rho->add_option("--out", c_out, "artifact directory");
  rho->add_flag("--no-svg", c_nosvg, "skip SVG output");
  rho->callback([&] {
    action = [&] {
      RhoCurveConfig cfg;
      if (!c_preset.empty()) {
        cfg = preset(c_preset).rho;
      } else {
        if (!(c_step > 0 && c_step <= 1)) throw DomainError("--grid-step must lie in (0, 1]");
        cfg.n = c_n;
        cfg.sigma_grid = sigma_grid(c_step, 1.0);
        if (c_norm) cfg.norm = c_samples > 0 ? NormMode::Sampled : NormMode::ExactPI;
        cfg.samples = c_samples;
        cfg.seed = c_seed;
      }
      return emit_rho_curves(cfg, c_out, !c_nosvg);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Verification suites (nonzero exit on failure)");
  verify->require_subcommand(1);
  bool v_json = false;
  std::string v_out;
  auto* vs = verify->add_subcommand("sturm", "Exact Sturm certificates for the four inequality families");
  bool vs_reference = false, vs_tamper = false;
  vs->add_flag("--reference-normalization", vs_reference, "replay the reference check (double normalization, its intervals)");
  vs->add_flag("--tamper-t20", vs_tamper, "negate the t_{2,0} coefficients (harness self-test; expected to fail)");
  auto* vo = verify->add_subcommand("operators", "Operator property suite");
  std::uint64_t vo_seed = 0;
  vo->add_option("--seed", vo_seed, "seed for random sign flips and instances");
  auto* vc = verify->add_subcommand("conjecture", "Worst-case search scan against the family maximum");
  std::vector<int> vc_n{3, 4};
  double vc_step = 0.1;
  int vc_seeds = 1, vc_restarts = 10;
  std::uint64_t vc_seed = 1;
  vc->add_option("--n", vc_n, "dimensions (3..6)")->delimiter(',');
  vc->add_option("--grid-step", vc_step, "sigma grid spacing, grid up to 0.9");
  vc->add_option("--seeds", vc_seeds, "seeds per cell");
  vc->add_option("--seed", vc_seed, "first seed");
  vc->add_option("--restarts", vc_restarts, "restarts per search");
  auto* vn = verify->add_subcommand("nonasymptotic", "K0 bracketing for the finite-epoch gap");
  int vn_n = 0;
  double vn_sigma = 0;
  vn->add_option("--n", vn_n, "dimension (default: the three reference cells)");
  vn->add_option("--sigma", vn_sigma, "minimum eigenvalue");
  for (auto* sc : {vs, vo, vc, vn}) {
    sc->add_flag("--json", v_json, "print the JSON report");
    sc->add_option("--out", v_out, "write the JSON report into this directory");
  }
  vs->callback([&] { action = [&] { return emit_sturm(v_out, v_json, vs_reference, vs_tamper); }; });
  vo->callback([&] {
    action = [&] {
      SuiteReport r = verify_operators(vo_seed);
      json j = to_json(r);
      if (v_json)
        std::cout << j.dump(2) << "\n";
      else
        for (const auto& c : r.checks)
          std::cout << c.name << ": worst " << num(c.worst) << " (tol " << num(c.tolerance) << ", " << c.cases
                    << " cases) -> " << (c.ok ? "pass" : "FAIL") << "\n";
      if (!v_out.empty()) write_text_file(join(v_out, "verify_operators.json"), j.dump(2) + "\n");
      return r.all_ok() ? kOk : kVerifyFailed;
    };
  });
  vc->callback([&] {
    action = [&] {
      if (vc_seeds < 1) throw DomainError("--seeds must be >= 1");
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < vc_seeds; ++i) seeds.push_back(vc_seed + i);
      auto rows = conjecture_scan(vc_n, sigma_grid(vc_step, 0.9), seeds, vc_restarts);
      bool ok = true;
      json arr = json::array();
      for (const auto& r : rows) {
        ok = ok && r.search_ok && r.bound_ok;
        arr.push_back({{"n", r.n}, {"sigma", r.sigma}, {"seed", r.seed}, {"rho", r.rho}, {"family_max", r.family_max},
                       {"rpcd_ub", r.rpcd_ub}, {"residual", r.residual}, {"k", r.k},
                       {"search_ok", r.search_ok}, {"bound_ok", r.bound_ok}});
        if (!v_json)
          std::cout << "n=" << r.n << " sigma=" << num(r.sigma) << " seed=" << r.seed << " rho=" << num(r.rho)
                    << " family_max=" << num(r.family_max) << " residual=" << num(r.residual) << " -> "
                    << (r.search_ok && r.bound_ok ? "pass" : "FAIL") << "\n";
      }
      if (v_json) std::cout << arr.dump(2) << "\n";
      if (!v_out.empty()) {
        write_text_file(join(v_out, "conjecture_scan.csv"), to_csv(rows));
        write_text_file(join(v_out, "verify_conjecture.json"), arr.dump(2) + "\n");
      }
      return ok ? kOk : kVerifyFailed;
    };
  });
  vn->callback([&] {
    action = [&] {
      std::vector<std::pair<int, double>> cells = preset("appendixG").cells;
      if (vn_n != 0 || vn_sigma != 0) cells = {{vn_n, vn_sigma}};
      return emit_nonasymptotic(cells, v_out, v_json);
    };
  });

  // search-worst
  auto* sw = app.add_subcommand("search-worst", "Maximize the RPCD operator spectral radius over unit-diagonal Hessians");
  int sw_n = 3, sw_seeds = 1, sw_restarts = 10;
  double sw_sigma = 0.3;
  std::uint64_t sw_seed = 1;
  std::string sw_out;
  sw->add_option("--n", sw_n, "dimension (3..6)");
  sw->add_option("--sigma", sw_sigma, "minimum eigenvalue");
  sw->add_option("--seeds", sw_seeds, "number of seeds, starting at --seed");
  sw->add_option("--seed", sw_seed, "first seed");
  sw->add_option("--restarts", sw_restarts, "restarts per seed");
  sw->add_option("--out", sw_out, "write SearchResult JSON files into this directory");
  sw->callback([&] {
    action = [&] {
      if (sw_seeds < 1) throw DomainError("--seeds must be >= 1");
      bool ok = true;
      for (int i = 0; i < sw_seeds; ++i) {
        SearchResult r = search(sw_n, sw_sigma, sw_seed + i, sw_restarts);
        ok = ok && r.conjecture_ok;
        std::cout << "seed " << r.seed << ": rho " << num(r.rho) << ", family max " << num(r.family_max)
                  << ", nearest k=" << r.nearest.k << " v=(";
        for (size_t j = 0; j < r.nearest.v.size(); ++j) std::cout << (j ? "," : "") << r.nearest.v[j];
        std::cout << ") residual " << num(r.nearest.residual) << (r.nearest.ambiguous ? " [ambiguous sign]" : "")
                  << ", conjecture_ok " << (r.conjecture_ok ? "yes" : "NO") << "\n";
        if (!sw_out.empty()) {
          char name[96];
          std::snprintf(name, sizeof name, "search_n%d_s%g_seed%llu.json", sw_n, sw_sigma,
                        static_cast<unsigned long long>(r.seed));
          write_text_file(join(sw_out, name), to_json(r).dump(2) + "\n");
        }
      }
      return ok ? kOk : kVerifyFailed;
    };
  });

  // operator
  auto* op = app.add_subcommand("operator", "Spectral radius and span{I, 11^T} restriction for an instance file");
  std::string op_file, op_alg = "rpcd";
  bool op_json = false;
  op->add_option("--instance", op_file, "instance JSON")->required();
  op->add_option("--algorithm", op_alg, "rcd or rpcd")->check(CLI::IsMember({"rcd", "rpcd"}));
  op->add_flag("--json", op_json, "print JSON");
  op->callback([&] {
    action = [&] {
      QuadraticInstance a = instance_from_json(json::parse(read_text_file(op_file)));
      validate(a);
      OperatorMatrix m = op_alg == "rcd" ? rcd_operator_matrix(a.hessian) : rpcd_operator_matrix(a.hessian);
      Restricted2x2 r = restrict_operator(m);
      Matrix mi = op_alg == "rcd" ? rcd_operator_apply(a.hessian, Matrix::Identity(a.n, a.n))
                                  : rpcd_operator_apply(a.hessian, Matrix::Identity(a.n, a.n));
      json j = {{"n", a.n}, {"sigma", a.sigma}, {"algorithm", op_alg}, {"rho_full", spectral_radius(m.m)},
                {"restricted", to_json(r)}, {"rho_restricted", spectral_radius(r)},
                {"span_residual_M_I", span_i_ones_residual(mi)}};
      if (op_alg == "rpcd") j["norm_upper_bound"] = norm_upper_bound(a.hessian).value;
      if (op_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "n " << a.n << ", sigma " << num(a.sigma) << ", " << op_alg << "\n"
                  << "rho(full operator)      " << num(j["rho_full"]) << "\n"
                  << "restriction [[" << num(r.m(0, 0)) << ", " << num(r.m(0, 1)) << "], [" << num(r.m(1, 0))
                  << ", " << num(r.m(1, 1)) << "]]\n"
                  << "rho(restriction)        " << num(j["rho_restricted"]) << "\n"
                  << "M(I) distance to span   " << num(j["span_residual_M_I"]) << "\n";
        if (op_alg == "rpcd") std::cout << "norm upper bound        " << num(j["norm_upper_bound"]) << "\n";
      }
      return kOk;
    };
  });

  // instance
  auto* inst = app.add_subcommand("instance", "Generate or inspect instance files");
  inst->require_subcommand(1);
  auto* ig = inst->add_subcommand("generate", "Write an instance JSON");
  std::string ig_kind = "pi", ig_signs, ig_out;
  int ig_n = 4, ig_k = 0;
  double ig_sigma = 0.5;
  std::uint64_t ig_seed = 0;
  ig->add_option("--kind", ig_kind, "pi, block or random")->check(CLI::IsMember({"pi", "block", "random"}));
  ig->add_option("--n", ig_n, "dimension");
  ig->add_option("--sigma", ig_sigma, "minimum eigenvalue");
  ig->add_option("--k", ig_k, "block size for --kind block");
  ig->add_option("--seed", ig_seed, "seed for --kind random");
  ig->add_option("--signs", ig_signs, "comma-separated +-1 sign flips");
  ig->add_option("--out", ig_out, "output file (default stdout)");
  ig->callback([&] {
    action = [&] {
      QuadraticInstance a = ig_kind == "pi"      ? make_pi(ig_n, ig_sigma)
                            : ig_kind == "block" ? make_block_pi(ig_n, ig_k, ig_sigma)
                                                 : random_unit_diag(ig_n, ig_sigma, ig_seed);
      if (!ig_signs.empty()) a = apply_sign_flip(a, parse_signs(ig_signs));
      std::string text = to_json(a).dump(2) + "\n";
      if (ig_out.empty())
        std::cout << text;
      else
        write_text_file(ig_out, text);
      return kOk;
    };
  });
  auto* ii = inst->add_subcommand("inspect", "Validate and summarize an instance JSON");
  std::string ii_file;
  ii->add_option("--file", ii_file, "instance JSON")->required();
  ii->callback([&] {
    action = [&]() -> int {
      QuadraticInstance a = instance_from_json(json::parse(read_text_file(ii_file)));
      std::cout << "n " << a.n << ", kind " << a.kind << ", sigma " << num(a.sigma) << "\n"
                << "lambda_min " << num(lambda_min(a.hessian)) << ", lambda_max " << num(lambda_max(a.hessian)) << "\n";
      try {
        validate(a);
        std::cout << "valid\n";
        return kOk;
      } catch (const DomainError& e) {
        std::cout << "invalid: " << e.what() << "\n";
        return kVerifyFailed;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kFlagError;
  }
  try {
    return action ? action() : kFlagError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFlagError;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericFailed;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFlagError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
