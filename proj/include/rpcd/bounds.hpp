#pragma once

#include <json.hpp>

#include <string>

#include "rpcd/exactpoly.hpp"

namespace rpcd {

// max{1 - 1/n, (1 - s/n)^2} (per iteration).
double rcd_lower_bound(int n, double sigma);
// max{(1 - 1/n)^n, (1 - s/n)^{2n}} (per epoch); the n-th power of rcd_lower_bound.
double rpcd_upper_bound(int n, double sigma);
// 1 - 1/n + (1 - s)^2/n, PI Hessians (per iteration).
double rcd_lower_bound_pi(int n, double sigma);
// Leading terms of the Lee-Wright epoch rate for PI Hessians: 1 - 2s - 2s/n + 2s^2.
double lee_rate_reference(int n, double sigma);

Rational rcd_lower_bound_exact(int n, const Rational& sigma);
Rational rpcd_upper_bound_exact(int n, const Rational& sigma);
Rational rcd_lower_bound_pi_exact(int n, const Rational& sigma);

// Degree-4 truncation of T_i(n, s)/(n(n-1)). T2 needs n >= 5 (validity window).
RationalPolynomial taylor4_upper(int n, Which which);
// Hand-simplified quartics (T1 linear coefficient -(2 + 1/n), looser than the truncation), kept for comparison.
RationalPolynomial taylor4_displayed(int n, Which which);
// Upper end of the T2 validity window, min{(n-1)/(n+1), (n-3)/(n-2)}.
Rational taylor_t2_window(int n);

constexpr long kNoFiniteGap = -1;

// log of the left/right ratio of the nonasymptotic inequality at K, minus log(2 sqrt(2(n^2+1)))/K.
// Nonnegative exactly when the inequality holds.
double nonasymptotic_margin(int n, double sigma, long k);
// Smallest K >= 1 with nonnegative margin; kNoFiniteGap at sigma = 1.
long nonasymptotic_K0(int n, double sigma);

struct RateReport {
  int n = 0;
  double sigma = 0;
  double rcd_lb_per_iter = 0;
  double rcd_lb_pi_per_iter = 0;
  double rpcd_ub_per_epoch = 0;
  double rcd_lb_pi_per_epoch = 0;  // n-th power, the matching epoch-scale quantity
  double taylor_t1_ub = 0;
  double taylor_t2_ub = 0;  // NaN outside the validity window
  double lee_rate_reference = 0;
  long nonasymptotic_K0 = kNoFiniteGap;
  double rho_restricted = 0;  // rho of the RPCD 2x2 restriction for the PI Hessian
};

RateReport rate_report(int n, double sigma);
nlohmann::json to_json(const RateReport& r);
std::string format_table(const RateReport& r);

}  // namespace rpcd
