#include "rpcd/experiments.hpp"

#include <cmath>
#include <cstdio>

#include "rpcd/bounds.hpp"
#include "rpcd/operators.hpp"

namespace rpcd {

namespace {

constexpr std::uint64_t kInstanceSeed = 7;
constexpr std::uint64_t kRunSeed = 11;

Setting make_setting(std::string id, ObjectiveSpec spec, long iterations) {
  Setting s;
  s.id = std::move(id);
  s.spec = spec;
  const long n = dimension(spec);
  s.rcd_iterations = iterations;
  s.rpcd_epochs = (iterations + n - 1) / n;
  s.seed = kRunSeed;
  return s;
}

std::string tag(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

void add_family(std::vector<Setting>& out, const std::string& family, int n, double sigma, long iterations,
                double extra = 0) {
  const std::string base = family + "_n" + std::to_string(n) + "_s" + tag(sigma);
  if (family == "pi") {
    out.push_back(make_setting(base, PIQuadratic{n, sigma, n}, iterations));
  } else if (family == "random") {
    out.push_back(make_setting(base, RandomQuadratic{n, sigma, kInstanceSeed}, iterations));
  } else {
    out.push_back(make_setting(base + "_a" + tag(extra), QuadraticLSE{n, sigma, extra, kInstanceSeed}, iterations));
  }
}

}  // namespace

std::vector<double> sigma_grid(double step, double last) {
  std::vector<double> g;
  const long count = std::lround(last / step);
  for (long i = 1; i <= count; ++i) g.push_back(std::round(i * step * 1e12) / 1e12);
  return g;
}

std::vector<std::string> preset_ids() {
  return {"fig1", "fig2", "fig3", "fig4_i", "fig4_ii", "fig4_iii", "fig4_iv", "appendixF_grid", "appendixC", "appendixG"};
}

ExperimentPreset preset(const std::string& id) {
  ExperimentPreset p;
  p.id = id;
  p.kind = "run";
  if (id == "fig1") {
    add_family(p.settings, "pi", 25, 0.7, 200);
  } else if (id == "fig2") {
    p.kind = "rho-curves";
    p.rho.n = 40;
    p.rho.sigma_grid = sigma_grid(0.01, 1.0);
  } else if (id == "fig3") {
    p.kind = "rho-curves";
    p.rho.n = 100;
    p.rho.sigma_grid = sigma_grid(0.01, 1.0);
    p.rho.norm = NormMode::ExactPI;
  } else if (id == "fig4_i" || id == "fig4_ii") {
    for (double s : {0.3, 0.7}) add_family(p.settings, id == "fig4_i" ? "pi" : "random", 25, s, 200);
  } else if (id == "fig4_iii") {
    for (double s : {0.3, 0.7})
      for (double a : {0.5, 2.0}) add_family(p.settings, "lse", 25, s, 200, a);
  } else if (id == "fig4_iv") {
    for (double lam : {1e-4, 1e-3, 1e-2, 1e-1, 1.0})
      p.settings.push_back(make_setting("logistic_n100_m100_l" + tag(lam), Logistic{100, 100, lam, 0.1, kInstanceSeed}, 600));
  } else if (id == "appendixF_grid") {
    for (int n : {25, 50}) {
      const long iters = n == 25 ? 200 : 300;
      for (double s : sigma_grid(0.1, 0.9)) {
        add_family(p.settings, "pi", n, s, iters);
        add_family(p.settings, "random", n, s, iters);
        for (double a : {0.5, 2.0, 20.0}) add_family(p.settings, "lse", n, s, iters, a);
      }
    }
    for (double lam : {1e-4, 1e-3, 1e-2, 1e-1, 1.0})
      p.settings.push_back(make_setting("logistic_n100_m100_l" + tag(lam), Logistic{100, 100, lam, 0.1, kInstanceSeed}, 600));
  } else if (id == "appendixC") {
    p.kind = "verify-sturm";
  } else if (id == "appendixG") {
    p.kind = "verify-nonasymptotic";
    p.cells = {{25, 0.7}, {2, 0.5}, {50, 0.3}};
  } else {
    throw DomainError("unknown preset '" + id + "'");
  }
  return p;
}

SettingResult run_setting(const Setting& s) {
  validate(s.spec);
  BuiltObjective b = build_objective(s.spec);
  Vector x_star = solve_reference(b.objective);
  SettingResult r;
  r.setting = s;
  r.n = b.objective.dim();
  RunConfig c;
  c.trials = s.trials;
  c.init_points = s.init_points;
  c.seed = s.seed;
  c.algorithm = Algorithm::RCD;
  c.steps = s.rcd_iterations;
  r.rcd = run_monte_carlo(b.objective, x_star, c);
  c.algorithm = Algorithm::RPCD;
  c.steps = s.rpcd_epochs;
  r.rpcd = run_monte_carlo(b.objective, x_star, c);
  return r;
}

std::vector<RhoRow> rho_curves(const RhoCurveConfig& cfg) {
  if (cfg.n < 2) throw DomainError("rho-curves: n must be >= 2");
  if (cfg.n > 64 && cfg.norm == NormMode::None)
    throw DomainError("rho-curves: n must be <= 64 unless a norm curve is requested");
  std::vector<RhoRow> rows;
  for (double s : cfg.sigma_grid) {
    if (!(s > 0 && s <= 1)) throw DomainError("rho-curves: sigma must lie in (0, 1]");
    RhoRow r;
    r.sigma = s;
    r.rho_n = spectral_radius(restricted_rpcd(cfg.n, s));
    r.rho_max_k = family_max_rho(cfg.n, s);
    r.rpcd_ub = rpcd_upper_bound(cfg.n, s);
    r.rcd_lb_pi_pow_n = std::pow(rcd_lower_bound_pi(cfg.n, s), cfg.n);
    if (cfg.norm == NormMode::ExactPI) {
      r.norm_bound = norm_upper_bound_pi(cfg.n, s).value;
    } else if (cfg.norm == NormMode::Sampled) {
      NormBound nb = norm_upper_bound_sampled(make_pi(cfg.n, s).hessian, cfg.samples, cfg.seed);
      r.norm_bound = nb.value;
      r.norm_se = nb.standard_error;
    }
    rows.push_back(r);
  }
  return rows;
}

std::string to_csv(const std::vector<RhoRow>& rows, NormMode norm) {
  std::string out = "sigma,rho_n,rho_max_k,rpcd_ub,rcd_lb_pi_pow_n";
  if (norm != NormMode::None) out += ",norm_bound,norm_se";
  out += "\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", r.sigma, r.rho_n, r.rho_max_k, r.rpcd_ub,
                  r.rcd_lb_pi_pow_n);
    out += buf;
    if (norm != NormMode::None) {
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", r.norm_bound, r.norm_se);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace rpcd
