#include "rpcd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rpcd/bounds.hpp"
#include "rpcd/experiments.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"

namespace rpcd {

bool SuiteReport::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.ok; });
}

namespace {

void see(CheckLine& c, double r) {
  ++c.cases;
  c.worst = std::max(c.worst, r);
}

SignPattern random_signs(Rng& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  SignPattern v(n);
  for (int& s : v) s = coin(rng) ? 1 : -1;
  return v;
}

}  // namespace

SuiteReport verify_operators(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "operators";
  CheckLine restr{"restricted_vs_full_rho", false, 0, 1e-8, 0};
  CheckLine block{"block_reduction", false, 0, 1e-9, 0};
  CheckLine flip{"sign_flip_spectrum", false, 0, 1e-10, 0};
  CheckLine closure{"arrow_closure", false, 0, 1e-10, 0};
  CheckLine pairing{"complementary_pairing", false, 0, 1e-10, 0};
  Rng rng(derive_seed(seed, 0x0e5));
  for (int n = 2; n <= 6; ++n) {
    for (double s : sigma_grid(0.1, 0.9)) {
      QuadraticInstance a = make_pi(n, s);
      const double rr = spectral_radius(restricted_rpcd(n, s));
      const double rf = spectral_radius(rpcd_operator_matrix(a.hessian).m);
      see(restr, std::abs(rf - rr));
      for (int t = 0; t < 3; ++t) {
        QuadraticInstance b = apply_sign_flip(a, random_signs(rng, n));
        const double rb = spectral_radius(rpcd_operator_matrix(b.hessian).m);
        see(restr, std::abs(rb - rr));
        see(flip, std::abs(rb - rf));
      }
      for (int k = 2; k < n; ++k) {
        double x = 0, y = 0;
        block_reduction_check(n, k, s, &x, &y);
        see(block, std::abs(x - y));
      }
    }
  }
  std::uniform_real_distribution<double> ua(-0.4, 0.4), ub(0.0, 0.8);
  std::uniform_int_distribution<int> un(3, 6);
  for (int t = 0; t < 20;) {
    const int n = un(rng);
    Matrix m = arrow_matrix(n, ua(rng), ub(rng));
    if (lambda_min(m) <= 1e-3) continue;
    see(closure, partially_invariant_closure_check(m, 4, derive_seed(seed, 0xc10, t)));
    ++t;
  }
  for (int n = 2; n <= 5; ++n)
    for (int t = 0; t < 3; ++t)
      see(pairing, complementary_pairing_residual(random_unit_diag(n, 0.3, derive_seed(seed, 0xca1, n * 8 + t)).hessian));
  for (CheckLine* c : {&restr, &block, &flip, &closure, &pairing}) {
    c->ok = c->worst <= c->tolerance;
    rep.checks.push_back(*c);
  }
  return rep;
}

NonasymptoticCheck verify_nonasymptotic(int n, double sigma, double tol) {
  NonasymptoticCheck c;
  c.n = n;
  c.sigma = sigma;
  c.k0 = nonasymptotic_K0(n, sigma);
  if (c.k0 == kNoFiniteGap) {
    c.margin_k0 = c.margin_prev = std::numeric_limits<double>::quiet_NaN();
    c.ok = false;
    return c;
  }
  c.margin_k0 = nonasymptotic_margin(n, sigma, c.k0);
  c.margin_prev = c.k0 > 1 ? nonasymptotic_margin(n, sigma, c.k0 - 1) : std::numeric_limits<double>::quiet_NaN();
  c.ok = c.margin_k0 >= -tol && (c.k0 == 1 || c.margin_prev < tol);
  return c;
}

nlohmann::json to_json(const CheckLine& c) {
  return {{"name", c.name}, {"ok", c.ok}, {"worst", c.worst}, {"tolerance", c.tolerance}, {"cases", c.cases}};
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json ch = nlohmann::json::array();
  for (const auto& c : r.checks) ch.push_back(to_json(c));
  return {{"suite", r.suite}, {"all_ok", r.all_ok()}, {"checks", ch}};
}

nlohmann::json to_json(const NonasymptoticCheck& c) {
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  return {{"n", c.n}, {"sigma", c.sigma}, {"K0", c.k0 == kNoFiniteGap ? nlohmann::json(nullptr) : nlohmann::json(c.k0)},
          {"margin_at_K0", num(c.margin_k0)}, {"margin_at_K0_minus_1", num(c.margin_prev)}, {"ok", c.ok}};
}

}  // namespace rpcd
