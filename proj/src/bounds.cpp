#include "rpcd/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "rpcd/operators.hpp"

namespace rpcd {

namespace {

void check(int n, double sigma) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
}

void check(int n, const Rational& sigma) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(sigma > 0 && sigma <= 1)) throw DomainError("sigma must lie in (0, 1]");
}

Rational rpow(const Rational& x, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

}  // namespace

double rcd_lower_bound(int n, double sigma) {
  check(n, sigma);
  double a = 1.0 - 1.0 / n;
  double b = (1.0 - sigma / n) * (1.0 - sigma / n);
  return std::max(a, b);
}

double rpcd_upper_bound(int n, double sigma) { return std::pow(rcd_lower_bound(n, sigma), n); }

double rcd_lower_bound_pi(int n, double sigma) {
  check(n, sigma);
  return 1.0 - 1.0 / n + (1.0 - sigma) * (1.0 - sigma) / n;
}

double lee_rate_reference(int n, double sigma) {
  check(n, sigma);
  return 1.0 - 2.0 * sigma - 2.0 * sigma / n + 2.0 * sigma * sigma;
}

Rational rcd_lower_bound_exact(int n, const Rational& sigma) {
  check(n, sigma);
  Rational a = 1 - Rational(1, n);
  Rational t = 1 - sigma / n;
  Rational b = t * t;
  return a > b ? a : b;
}

Rational rpcd_upper_bound_exact(int n, const Rational& sigma) { return rpow(rcd_lower_bound_exact(n, sigma), n); }

Rational rcd_lower_bound_pi_exact(int n, const Rational& sigma) {
  check(n, sigma);
  Rational u = 1 - sigma;
  Rational r = 1 - Rational(1, n) + u * u / n;
  r.canonicalize();
  return r;
}

RationalPolynomial taylor4_upper(int n, Which which) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (which == Which::T2 && n < 5) throw DomainError("the T2 quartic bound needs n >= 5");
  return build_T(n, which, Route::Coefficients).truncated(4);
}

RationalPolynomial taylor4_displayed(int n, Which which) {
  if (n < 2) throw DomainError("n must be at least 2");
  const long N = n;
  const Rational nn1(N * (N - 1));
  std::vector<Rational> c(5);
  if (which == Which::T1) {
    c[0] = 1;
    c[1] = -(2 + Rational(1, N));
    c[2] = Rational(2 * N, N - 1);
    c[3] = -2;
    c[4] = Rational(2 * (N * N - N - 1)) / nn1;
  } else {
    Rational q = 1 - Rational(2, N);
    c[0] = q;
    c[1] = -2 * q;
    c[2] = Rational(2 * (N * N - 3 * N + 1)) / nn1;
    c[3] = -2 * q;
    c[4] = Rational(2 * (N * N - 3 * N + 3)) / nn1;
  }
  for (auto& x : c) x.canonicalize();
  return RationalPolynomial(c);
}

Rational taylor_t2_window(int n) {
  if (n < 4) throw DomainError("the T2 window needs n >= 4");
  Rational a(n - 1, n + 1), b(n - 3, n - 2);
  a.canonicalize();
  b.canonicalize();
  return a < b ? a : b;
}

double nonasymptotic_margin(int n, double sigma, long k) {
  check(n, sigma);
  if (k < 1) throw DomainError("K must be positive");
  const double log_pi = n * std::log1p(-sigma * (2.0 - sigma) / n);
  const double log_thm2 = std::max(n * std::log1p(-1.0 / n), 2.0 * n * std::log1p(-sigma / n));
  const double log_c = std::log(2.0) + 0.5 * std::log(2.0 * (static_cast<double>(n) * n + 1.0));
  return (log_pi - log_thm2) - log_c / static_cast<double>(k);
}

long nonasymptotic_K0(int n, double sigma) {
  check(n, sigma);
  if (sigma == 1.0) return kNoFiniteGap;
  constexpr long kCap = 1000000;
  for (long k = 1; k <= kCap; ++k)
    if (nonasymptotic_margin(n, sigma, k) >= 0.0) return k;
  throw NumericalError("nonasymptotic_K0: no K below the 1e6 cap");
}

RateReport rate_report(int n, double sigma) {
  check(n, sigma);
  RateReport r;
  r.n = n;
  r.sigma = sigma;
  r.rcd_lb_per_iter = rcd_lower_bound(n, sigma);
  r.rcd_lb_pi_per_iter = rcd_lower_bound_pi(n, sigma);
  r.rpcd_ub_per_epoch = rpcd_upper_bound(n, sigma);
  r.rcd_lb_pi_per_epoch = std::pow(r.rcd_lb_pi_per_iter, n);
  r.taylor_t1_ub = taylor4_upper(n, Which::T1).evaluate(sigma);
  r.taylor_t2_ub = n >= 5 && sigma <= taylor_t2_window(n).get_d() ? taylor4_upper(n, Which::T2).evaluate(sigma)
                                                                 : std::numeric_limits<double>::quiet_NaN();
  r.lee_rate_reference = lee_rate_reference(n, sigma);
  try {
    r.nonasymptotic_K0 = nonasymptotic_K0(n, sigma);
  } catch (const NumericalError&) {
    r.nonasymptotic_K0 = kNoFiniteGap;
  }
  r.rho_restricted = spectral_radius(restricted_rpcd(n, sigma));
  return r;
}

nlohmann::json to_json(const RateReport& r) {
  auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
  return {{"n", r.n},
          {"sigma", r.sigma},
          {"rcd_lb_per_iter", r.rcd_lb_per_iter},
          {"rcd_lb_pi_per_iter", r.rcd_lb_pi_per_iter},
          {"rpcd_ub_per_epoch", r.rpcd_ub_per_epoch},
          {"rcd_lb_pi_per_epoch", r.rcd_lb_pi_per_epoch},
          {"taylor_t1_ub", num(r.taylor_t1_ub)},
          {"taylor_t2_ub", num(r.taylor_t2_ub)},
          {"lee_rate_reference", r.lee_rate_reference},
          {"nonasymptotic_K0", r.nonasymptotic_K0 == kNoFiniteGap ? nlohmann::json(nullptr) : nlohmann::json(r.nonasymptotic_K0)},
          {"rho_restricted", r.rho_restricted}};
}

std::string format_table(const RateReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  auto row = [&os](const std::string& k, const std::string& v) { os << std::left << std::setw(24) << k << v << "\n"; };
  auto d = [](double v) {
    if (std::isnan(v)) return std::string("n/a");
    std::ostringstream s;
    s << std::setprecision(10) << v;
    return s.str();
  };
  row("n", std::to_string(r.n));
  row("sigma", d(r.sigma));
  row("rcd_lb_per_iter", d(r.rcd_lb_per_iter));
  row("rcd_lb_pi_per_iter", d(r.rcd_lb_pi_per_iter));
  row("rpcd_ub_per_epoch", d(r.rpcd_ub_per_epoch));
  row("rcd_lb_pi_per_epoch", d(r.rcd_lb_pi_per_epoch));
  row("rho_restricted", d(r.rho_restricted));
  row("taylor_t1_ub", d(r.taylor_t1_ub));
  row("taylor_t2_ub", d(r.taylor_t2_ub));
  row("lee_rate_reference", d(r.lee_rate_reference));
  row("nonasymptotic_K0", r.nonasymptotic_K0 == kNoFiniteGap ? "none (sigma = 1)" : std::to_string(r.nonasymptotic_K0));
  return os.str();
}

}  // namespace rpcd
