#include <doctest.h>

#include <cmath>

#include "rpcd/bounds.hpp"
#include "rpcd/exactpoly.hpp"

using namespace rpcd;

TEST_CASE("per-iteration and per-epoch rates") {
  for (int n : {2, 7, 40}) {
    CHECK(rcd_lower_bound(n, 1.0) == doctest::Approx(1 - 1.0 / n));
    CHECK(rpcd_upper_bound(n, 1.0) == doctest::Approx(std::pow(1 - 1.0 / n, n)));
    CHECK(rcd_lower_bound_pi(n, 1.0) == doctest::Approx(1 - 1.0 / n));
    CHECK(rcd_lower_bound_pi(n, 1e-12) == doctest::Approx(1.0));
  }
  CHECK(rcd_lower_bound(25, 0.7) == doctest::Approx(0.96));
  CHECK(rcd_lower_bound(2, 0.1) == doctest::Approx(0.9025));
  CHECK(rpcd_upper_bound(25, 0.7) == doctest::Approx(std::pow(0.96, 25)));
  CHECK(std::abs(rpcd_upper_bound(25, 0.7) - 0.3604) < 1e-4);
  CHECK(rpcd_upper_bound(100, 0.3) == doctest::Approx(std::pow(0.997, 200)));
  CHECK(std::pow(0.997, 200) > std::pow(0.99, 100));
  CHECK(rcd_lower_bound_pi(25, 0.7) == doctest::Approx(0.9636));
  CHECK_THROWS_AS(rcd_lower_bound(1, 0.5), DomainError);
  CHECK_THROWS_AS(rcd_lower_bound(4, 0.0), DomainError);
  CHECK_THROWS_AS(rpcd_upper_bound(4, 1.2), DomainError);
}

TEST_CASE("epoch rate is the n-th power and the gap is strict") {
  for (int n = 2; n <= 100; ++n)
    for (int k = 1; k <= 99; ++k) {
      double s = k / 100.0;
      double ub = rpcd_upper_bound(n, s);
      CHECK(std::abs(ub - std::pow(rcd_lower_bound(n, s), n)) <= 1e-15 * std::max(ub, 1e-300));
      CHECK(std::pow(rcd_lower_bound_pi(n, s), n) > ub);
    }
}

TEST_CASE("(1 - 1/n)^n is nondecreasing") {
  double prev = 0;
  for (int n = 1; n <= 10000; ++n) {
    double v = std::pow(1 - 1.0 / n, n);
    CHECK(v >= prev - 1e-15);
    prev = v;
  }
}

TEST_CASE("exact rational rates") {
  Rational s = make_rational(7, 10);
  CHECK(rcd_lower_bound_exact(25, s) == make_rational(24, 25));
  CHECK(rcd_lower_bound_pi_exact(25, s) == make_rational(9636, 10000));
  Rational prod = 1;
  for (int i = 0; i < 25; ++i) prod *= make_rational(24, 25);
  CHECK(rpcd_upper_bound_exact(25, s) == prod);
  Rational s2 = make_rational(1, 10);
  CHECK(rcd_lower_bound_exact(2, s2) == make_rational(361, 400));
}

TEST_CASE("quartic truncations") {
  // coefficients of T1 tend to 1, -2, 2, -2, 2
  RationalPolynomial big = taylor4_upper(100000, Which::T1);
  const double lim[] = {1, -2, 2, -2, 2};
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(big.coeff(k).get_d() - lim[k]) < 1e-4);

  CHECK(taylor4_upper(10, Which::T1).evaluate(make_rational(1, 5)) >=
        build_T(10, Which::T1, Route::Coefficients).evaluate(make_rational(1, 5)));
  CHECK(taylor4_upper(10, Which::T2).evaluate(make_rational(3, 10)) >=
        build_T(10, Which::T2, Route::Coefficients).evaluate(make_rational(3, 10)));
  CHECK_THROWS_AS(taylor4_upper(4, Which::T2), DomainError);
  CHECK(taylor_t2_window(10) == make_rational(9, 11));
  CHECK(taylor_t2_window(5) == make_rational(2, 3));
}

TEST_CASE("quartic truncations dominate on (0, 0.6]") {
  // exact rational grid s = 0.6 k / 600, k = 1..600
  for (int n = 7; n <= 30; ++n) {
    RationalPolynomial t1 = build_T(n, Which::T1, Route::Coefficients);
    RationalPolynomial t2 = build_T(n, Which::T2, Route::Coefficients);
    RationalPolynomial u1 = taylor4_upper(n, Which::T1), u2 = taylor4_upper(n, Which::T2);
    RationalPolynomial d1 = u1 - t1, d2 = u2 - t2;
    int bad = 0;
    for (int k = 1; k <= 600; ++k) {
      Rational s = make_rational(k, 1000);
      if (sign(d1.evaluate(s)) < 0) ++bad;
      if (sign(d2.evaluate(s)) < 0) ++bad;
    }
    CHECK_MESSAGE(bad == 0, "n=" << n);
  }
}

TEST_CASE("hand-simplified quartics also dominate") {
  for (int n : {7, 12, 30}) {
    RationalPolynomial t1 = build_T(n, Which::T1, Route::Coefficients);
    RationalPolynomial d = taylor4_displayed(n, Which::T1);
    for (int k = 1; k <= 60; ++k) {
      Rational s = make_rational(k, 100);
      CHECK(sign(d.evaluate(s) - t1.evaluate(s)) >= 0);
    }
    CHECK(d.degree() == 4);
  }
}

TEST_CASE("nonasymptotic threshold") {
  for (auto [n, s] : {std::pair{25, 0.7}, std::pair{2, 0.5}, std::pair{50, 0.3}}) {
    long k0 = nonasymptotic_K0(n, s);
    REQUIRE(k0 >= 1);
    CHECK(nonasymptotic_margin(n, s, k0) >= 0);
    if (k0 > 1) CHECK(nonasymptotic_margin(n, s, k0 - 1) < 0);
  }
  CHECK(nonasymptotic_K0(25, 1.0) == kNoFiniteGap);
  CHECK(nonasymptotic_K0(25, 0.95) > nonasymptotic_K0(25, 0.9));
}

TEST_CASE("rate report") {
  for (int n : {2, 10, 100})
    for (double s : {0.05, 0.5, 0.95}) {
      RateReport r = rate_report(n, s);
      for (double v : {r.rcd_lb_per_iter, r.rcd_lb_pi_per_iter, r.rpcd_ub_per_epoch, r.rcd_lb_pi_per_epoch, r.rho_restricted}) {
        CHECK(v >= 0);
        CHECK(v <= 1);
      }
      CHECK(r.rpcd_ub_per_epoch <= std::pow(r.rcd_lb_pi_per_iter, n));
      CHECK(r.rho_restricted <= r.rpcd_ub_per_epoch + 1e-12);
    }
  RateReport r = rate_report(25, 0.7);
  CHECK(to_json(r)["nonasymptotic_K0"] == 46);
  CHECK(format_table(r).find("0.3603967") != std::string::npos);
}
