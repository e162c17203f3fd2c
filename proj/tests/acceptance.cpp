// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "rpcd/bounds.hpp"
#include "rpcd/exactpoly.hpp"
#include "rpcd/experiments.hpp"
#include "rpcd/instances.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"
#include "rpcd/runners.hpp"
#include "rpcd/verify.hpp"
#include "rpcd/worstcase.hpp"

using namespace rpcd;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }
RationalPolynomial poly(std::vector<Rational> c) { return RationalPolynomial(std::move(c)); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::printf("[%s] %2d %-34s %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Rational rpow(const Rational& x, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<Permutation> all_perms(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Outcome c1_sturm() {
  Outcome o;
  InequalityReport rep = verify_appendix_c();
  WorkedExample w = worked_example();
  const std::vector<RationalPolynomial> shown = {
      poly({q(7, 36), q(1, 9), q(-1, 18), q(0), q(-1, 9), q(2, 9), q(-1, 9)}),
      poly({q(1, 9), q(-1, 9), q(0), q(-4, 9), q(10, 9), q(-2, 3)}),
      poly({q(-65, 324), q(-7, 81), q(1, 27), q(2, 81), q(-2, 81)}),
      poly({q(7, 2), q(-15, 4), q(-3), q(1)}),
      poly({q(1, 36), q(5, 27), q(11, 54)}),
      poly({q(-488, 121), q(161, 484)}),
      poly({q(-10021099, 311052)}),
      RationalPolynomial()};
  const std::vector<Rational> at06 = {q(134329, 562500), q(1142, 28125),  q(-47993, 202500),     q(193, 500),
                                      q(191, 900),       q(-9277, 2420), q(-10021099, 311052), q(0)};
  const std::vector<Rational> at1 = {q(1, 4),   q(0),         q(-1, 4),  q(-9, 4), q(5, 12), q(-1791, 484),
                                     q(-10021099, 311052), q(0)};
  int poly_match = 0, value_match = 0;
  if (w.sequence.size() == shown.size())
    for (size_t i = 0; i < shown.size(); ++i) {
      poly_match += w.sequence[i] == shown[i];
      value_match += (w.values_06[i] == at06[i]) + (w.values_1[i] == at1[i]);
    }
  bool signs = w.signs_06 == std::vector<int>{1, 1, -1, 1, 1, -1, -1, 0} &&
               w.signs_1 == std::vector<int>{1, 0, -1, -1, 1, -1, -1, 0};
  bool identity = RationalPolynomial::constant(q(1, 4)) - build_T(3, Which::T2, Route::Coefficients) * q(1, 6) == shown[0];
  int passed = 0;
  for (const auto& c : rep.cases) passed += c.ok;
  o.ok = rep.all_ok && poly_match == 8 && value_match == 16 && signs && w.v_06 == 3 && w.v_1 == 3 && w.roots == 0 &&
         identity;
  o.detail = std::to_string(passed) + "/" + std::to_string(rep.cases.size()) + " certificates, worked example " +
             std::to_string(poly_match) + "/8 polynomials, " + std::to_string(value_match) + "/16 endpoint values, V=" +
             std::to_string(w.v_06) + "," + std::to_string(w.v_1);
  return o;
}

Outcome c2_operators() {
  SuiteReport r = verify_operators(0);
  Outcome o;
  o.ok = true;
  for (const auto& c : r.checks)
    if (c.name == "restricted_vs_full_rho" || c.name == "block_reduction") {
      o.ok = o.ok && c.ok;
      o.detail += c.name + " " + std::to_string(c.cases) + " cases worst " + fmt("%.2e", c.worst) + "; ";
    }
  return o;
}

Outcome c3_family_below_bound() {
  double worst = -1;
  int bad = 0;
  for (int n = 2; n <= 64; ++n)
    for (int k = 1; k <= 99; ++k) {
      double s = k / 100.0;
      double gap = family_max_rho(n, s) - rpcd_upper_bound(n, s);
      worst = std::max(worst, gap);
      bad += gap > 1e-10;
    }
  return {bad == 0, "63 x 99 cells, max(family - bound) = " + fmt("%.3e", worst)};
}

Outcome c4_gap_exact() {
  int bad = 0, cells = 0;
  for (int n = 2; n <= 64; ++n)
    for (int k = 1; k <= 99; ++k) {
      Rational s = q(k, 100);
      ++cells;
      if (!(rpow(rcd_lower_bound_pi_exact(n, s), n) > rpcd_upper_bound_exact(n, s))) ++bad;
    }
  return {bad == 0, std::to_string(cells - bad) + "/" + std::to_string(cells) + " exact strict inequalities"};
}

Outcome c5_monte_carlo() {
  Outcome o;
  double worst = 0;
  Rng g(5);
  for (int n = 2; n <= 5; ++n)
    for (double s : {0.2, 0.5, 0.8})
      for (bool pi : {true, false}) {
        Matrix a = pi ? make_pi(n, s).hessian : random_unit_diag(n, s, 100 + n).hessian;
        Vector x = standard_normal(g, n);
        Matrix I = Matrix::Identity(n, n);
        double rcd = 0, rpcd = 0;
        for (int i = 0; i < n; ++i) rcd += rcd_step(a, x, i).squaredNorm() / n;
        auto ps = all_perms(n);
        for (const auto& p : ps) rpcd += rpcd_epoch(a, x, p).squaredNorm();
        rpcd /= static_cast<double>(ps.size());
        worst = std::max(worst, std::abs(rcd - x.dot(rcd_operator_apply(a, I) * x)));
        worst = std::max(worst, std::abs(rpcd - x.dot(rpcd_operator_apply(a, I) * x)));
      }
  SettingResult r = run_setting(preset("fig1").settings[0]);
  const long epochs = r.rpcd.per_step.back().step;
  const long iters = epochs * r.n;
  double m_rcd = r.rcd.per_step.at(iters).mean, se_rcd = r.rcd.std_error.at(iters);
  double m_rpcd = r.rpcd.per_step.back().mean, se_rpcd = r.rpcd.std_error.back();
  double pooled = std::sqrt(se_rcd * se_rcd + se_rpcd * se_rpcd);
  double z = (m_rcd - m_rpcd) / pooled;
  o.ok = worst <= 1e-10 && z >= 3;
  o.detail = "exhaustive worst " + fmt("%.2e", worst) + "; RPCD epoch " + std::to_string(epochs) + " mean " +
             fmt("%.4g", m_rpcd) + " vs RCD iteration " + std::to_string(iters) + " mean " + fmt("%.4g", m_rcd) +
             ", separation " + fmt("%.1f", z) + " pooled SE";
  return o;
}

Outcome c6_search() {
  Outcome o;
  double worst = 0;
  for (int n : {3, 4})
    for (double s : {0.3, 0.7}) {
      SearchResult r = search(n, s, 1, 10);
      worst = std::max(worst, r.nearest.residual);
      o.ok = o.ok && r.conjecture_ok && r.nearest.residual <= 1e-4;
    }
  std::vector<double> grid = sigma_grid(0.1, 0.9);
  auto rows = conjecture_scan({3, 4}, grid, {1}, 10);
  int violations = 0;
  for (const auto& r : rows) violations += !(r.search_ok && r.bound_ok);
  o.ok = o.ok && violations == 0;
  o.detail = "4 cells worst residual " + fmt("%.2e", worst) + "; scan " + std::to_string(rows.size()) + " cells, " +
             std::to_string(violations) + " violations";
  return o;
}

Outcome c7_bridge() {
  int route_bad = 0;
  for (int m = 2; m <= 20; ++m)
    for (Which w : {Which::T1, Which::T2})
      route_bad += build_T(m, w, Route::Coefficients) != build_T(m, w, Route::Symbolic);
  double worst = 0;
  int points = 0;
  for (int m = 2; m <= 11; ++m) {
    RationalPolynomial t1 = build_T(m, Which::T1, Route::Coefficients), t2 = build_T(m, Which::T2, Route::Coefficients);
    for (int j = 1; j <= 5; ++j) {
      double s = j / 5.0 - 0.07;
      Restricted2x2 r = restricted_rpcd(m, s);
      worst = std::max(worst, std::abs(r.m.row(0).sum() - t1.evaluate(s)));
      worst = std::max(worst, std::abs(r.m.row(1).sum() - t2.evaluate(s)));
      ++points;
    }
  }
  return {route_bad == 0 && worst <= 1e-9, "route mismatches " + std::to_string(route_bad) + "/38; row sums at " +
                                               std::to_string(points) + " points worst " + fmt("%.2e", worst)};
}

Outcome c8_nonasymptotic() {
  Outcome o;
  for (auto [n, s] : {std::pair{25, 0.7}, std::pair{2, 0.5}, std::pair{50, 0.3}}) {
    NonasymptoticCheck c = verify_nonasymptotic(n, s, 1e-12);
    o.ok = o.ok && c.ok;
    o.detail += "(" + std::to_string(n) + "," + fmt("%g", s) + ") K0=" + std::to_string(c.k0) + " ";
  }
  return o;
}

Outcome c9_taylor() {
  int bad = 0, cells = 0;
  for (int n = 7; n <= 30; ++n) {
    RationalPolynomial d1 = taylor4_upper(n, Which::T1) - build_T(n, Which::T1, Route::Coefficients);
    RationalPolynomial d2 = taylor4_upper(n, Which::T2) - build_T(n, Which::T2, Route::Coefficients);
    for (int k = 1; k <= 600; ++k) {
      Rational s = q(k, 1000);
      cells += 2;
      bad += (sign(d1.evaluate(s)) < 0) + (sign(d2.evaluate(s)) < 0);
    }
  }
  return {bad == 0, std::to_string(cells - bad) + "/" + std::to_string(cells) + " exact comparisons"};
}

Outcome c10_partial_invariance() {
  Outcome o;
  SuiteReport r = verify_operators(0);
  for (const auto& c : r.checks)
    if (c.name == "arrow_closure") {
      o.ok = o.ok && c.ok && c.cases >= 20;
      o.detail += "closure " + std::to_string(c.cases) + " worst " + fmt("%.2e", c.worst) + "; ";
    }
  int nb = 0, cases = 0;
  for (int n = 2; n <= 6; ++n)
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (int v = 0; v < 2; ++v) {
        Matrix a = v == 0 ? make_pi(n, s).hessian : random_unit_diag(n, s, 31 * n + v).hessian;
        ++cases;
        nb += norm_upper_bound(a).value < spectral_radius(rpcd_operator_matrix(a).m) - 1e-9;
      }
  o.ok = o.ok && nb == 0;
  o.detail += "norm >= rho " + std::to_string(cases - nb) + "/" + std::to_string(cases) + "; ";
  bool below = true, above = false;
  std::string curve;
  for (double s : {0.1, 0.2, 0.3, 0.4, 0.6, 0.7, 0.8, 0.9}) {
    NormBound b = norm_upper_bound_sampled(make_pi(100, s).hessian, 4000, 3);
    double ub = rpcd_upper_bound(100, s);
    if (s < 0.5) below = below && b.value < ub;
    else above = above || b.value > ub;
    curve += fmt("%.2f:", s) + (b.value < ub ? "<" : ">");
  }
  o.ok = o.ok && below && above;
  o.detail += "n=100 sampled " + curve;
  return o;
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");
  report(1, "exact Sturm replay", c1_sturm);
  report(2, "operator consistency", c2_operators);
  report(3, "family maximum below epoch bound", c3_family_below_bound);
  report(4, "PI lower bound gap (exact)", c4_gap_exact);
  report(5, "Monte Carlo vs operator", c5_monte_carlo);
  report(6, "worst-case search", c6_search);
  report(7, "exact / closed-form bridge", c7_bridge);
  report(8, "nonasymptotic threshold", c8_nonasymptotic);
  report(9, "quartic dominance", c9_taylor);
  report(10, "partial invariance and norm bound", c10_partial_invariance);
  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
