#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpcd/instances.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"
#include "rpcd/runners.hpp"

using namespace rpcd;

namespace {

double quad(const Matrix& a, const Vector& x) { return 0.5 * x.dot(a * x); }

std::vector<Permutation> all_perms(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("single steps on the 2x2 PI Hessian") {
  Matrix a = make_pi(2, 0.5).hessian;
  Vector x = Vector::Ones(2);
  Vector y = rcd_step(a, x, 0);
  CHECK(y(0) == -0.5);
  CHECK(y(1) == 1.0);
  Vector z = rpcd_epoch(a, x, {0, 1});
  CHECK(z(0) == -0.5);
  CHECK(z(1) == 0.25);
  CHECK_THROWS_AS(rcd_step(a, x, 2), DomainError);
  CHECK_THROWS_AS(rpcd_epoch(a, x, {0, 0}), DomainError);
}

TEST_CASE("sequential and matrix epochs agree") {
  Rng g(3);
  for (int c = 0; c < 50; ++c) {
    int n = 2 + c % 9;
    Matrix a = random_unit_diag(n, 0.05 + 0.018 * c, 200 + c).hessian;
    Vector x = standard_normal(g, n);
    Permutation p = random_permutation(g, n);
    Vector s = rpcd_epoch(a, x, p);
    Vector m = rpcd_epoch_matrix(a, x, p);
    CHECK((s - m).norm() <= 1e-12 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("coordinate steps never increase the quadratic") {
  Rng g(4);
  for (int c = 0; c < 30; ++c) {
    int n = 3 + c % 5;
    Matrix a = random_unit_diag(n, 0.1, 300 + c).hessian;
    Vector x = standard_normal(g, n);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 40; ++k) {
      Vector y = rcd_step(a, x, pick(g));
      CHECK(quad(a, y) <= quad(a, x) + 1e-14);
      x = y;
    }
  }
}

TEST_CASE("one-step second moments match the expectation operators") {
  Rng g(5);
  for (int n = 2; n <= 5; ++n)
    for (double s : {0.2, 0.6}) {
      Matrix a = random_unit_diag(n, s, 40 + n).hessian;
      Vector x = standard_normal(g, n);
      Matrix I = Matrix::Identity(n, n);
      double rcd = 0;
      for (int i = 0; i < n; ++i) rcd += rcd_step(a, x, i).squaredNorm() / n;
      CHECK(std::abs(rcd - x.dot(rcd_operator_apply(a, I) * x)) < 1e-10);
      auto ps = all_perms(n);
      double rp = 0;
      for (const auto& p : ps) rp += rpcd_epoch(a, x, p).squaredNorm();
      rp /= static_cast<double>(ps.size());
      CHECK(std::abs(rp - x.dot(rpcd_operator_apply(a, I) * x)) < 1e-10);
    }
}

TEST_CASE("Monte Carlo mean after one step matches enumeration") {
  const int n = 4;
  QuadraticInstance a = random_unit_diag(n, 0.3, 9);
  Vector x0 = initial_point(123, n, 0);
  double rcd = 0, rpcd = 0;
  for (int i = 0; i < n; ++i) rcd += rcd_step(a.hessian, x0, i).norm() / x0.norm() / n;
  auto ps = all_perms(n);
  for (const auto& p : ps) rpcd += rpcd_epoch(a.hessian, x0, p).norm() / x0.norm() / ps.size();

  RunConfig cfg;
  cfg.steps = 1;
  cfg.trials = 100000;
  cfg.init_points = 1;
  cfg.seed = 123;
  cfg.algorithm = Algorithm::RCD;
  TrajectoryStats s = run_monte_carlo(a, cfg);
  CHECK(std::abs(s.per_step[1].mean - rcd) <= 3 * s.std_error[1]);
  cfg.algorithm = Algorithm::RPCD;
  cfg.trials = 20000;
  TrajectoryStats t = run_monte_carlo(a, cfg);
  CHECK(std::abs(t.per_step[1].mean - rpcd) <= 3 * t.std_error[1]);
  CHECK(t.axis == "epoch");
  CHECK(s.axis == "iteration");
}

TEST_CASE("identity Hessian: second moment decays by (1 - 1/n) per iteration") {
  // each RCD step zeroes one coordinate, so ||x_k||^2 is a sum over the untouched coordinates
  const int n = 5;
  Matrix a = Matrix::Identity(n, n);
  Rng g(6);
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int runs = 40000, steps = 6;
  Vector x0 = Vector::Ones(n);
  std::vector<double> acc(steps + 1, 0.0);
  for (int r = 0; r < runs; ++r) {
    Vector x = x0;
    for (int k = 1; k <= steps; ++k) {
      x = rcd_step(a, x, pick(g));
      acc[k] += x.squaredNorm() / n;
    }
  }
  for (int k = 1; k <= steps; ++k) CHECK(std::abs(acc[k] / runs - std::pow(1.0 - 1.0 / n, k)) < 0.01);
  // one RPCD epoch reaches the minimizer
  CHECK(rpcd_epoch(a, x0, {3, 1, 4, 0, 2}).norm() == 0.0);
}

TEST_CASE("run configuration edge cases") {
  QuadraticInstance a = make_pi(3, 0.5);
  RunConfig cfg;
  cfg.steps = 0;
  TrajectoryStats s = run_monte_carlo(a, cfg);
  REQUIRE(s.per_step.size() == 1);
  CHECK(to_csv(s) == "step,mean,min,max\n0,1,1,1\n");
  cfg.trials = 0;
  CHECK_THROWS_AS(run_monte_carlo(a, cfg), DomainError);
  cfg.trials = 2;
  cfg.steps = 10;
  cfg.seed = 77;
  CHECK(to_csv(run_monte_carlo(a, cfg)) == to_csv(run_monte_carlo(a, cfg)));
  TrajectoryStats u = run_monte_carlo(a, cfg);
  for (const auto& r : u.per_step) {
    CHECK(r.min <= r.mean + 1e-15);
    CHECK(r.mean <= r.max + 1e-15);
  }
  CHECK(to_json(u)["per_step"].size() == 11);
}

TEST_CASE("scalar minimization") {
  auto f = [](double t) { return (t - 3) * (t - 3); };
  auto df = [](double t) { return 2 * (t - 3); };
  CHECK(std::abs(coordinate_minimize_scalar(f, 0.0).x - 3) < 1e-6);
  CHECK(std::abs(coordinate_minimize_scalar(f, 10.0, df).x - 3) < 1e-12);
  CHECK(std::abs(coordinate_minimize_scalar(f, -50.0, df).x - 3) < 1e-12);
  CHECK_THROWS_AS(coordinate_minimize_scalar(f, 0.0, {}, 3), NumericalError);

  // matches the closed-form coordinate step on a quadratic restriction
  Matrix a = random_unit_diag(5, 0.4, 8).hessian;
  Rng g(7);
  Vector x = standard_normal(g, 5);
  for (int i = 0; i < 5; ++i) {
    auto fi = [&](double t) {
      Vector z = x;
      z(i) = t;
      return quad(a, z);
    };
    auto dfi = [&](double t) {
      Vector z = x;
      z(i) = t;
      return a.row(i).dot(z);
    };
    double want = rcd_step(a, x, i)(i);
    CHECK(std::abs(coordinate_minimize_scalar(fi, x(i), dfi).x - want) < 1e-12);
  }

  // LSE restriction: the partial derivative vanishes at the returned point
  BuiltObjective lse = build_objective(QuadraticLSE{6, 0.3, 0.5, 2});
  const Objective& o = lse.objective;
  Vector y = standard_normal(g, 6);
  Vector aux = o.aux(y);
  for (int i = 0; i < 6; ++i) {
    ScalarResult r = coordinate_minimize_scalar([&](double t) { return o.restricted_value(y, aux, i, t); }, y(i),
                                                [&](double t) { return o.restricted_derivative(y, aux, i, t); });
    CHECK(std::abs(o.restricted_derivative(y, aux, i, r.x)) < 1e-8);
    CHECK(r.evaluations <= 200);
  }
}

TEST_CASE("reference minimizers") {
  BuiltObjective q = build_objective(RandomQuadratic{6, 0.3, 1});
  CHECK(solve_reference(q.objective).norm() == 0.0);

  BuiltObjective lg = build_objective(Logistic{10, 40, 1.0, 0.1, 3});
  Vector xs = solve_reference(lg.objective);
  CHECK(lg.objective.gradient(xs).norm() < 1e-10);

  BuiltObjective lse = build_objective(QuadraticLSE{25, 0.5, 0.5, 4});
  Vector xr = solve_reference(lse.objective);
  CHECK(lse.objective.gradient(xr).norm() < 1e-10);
  Vector xc = ccd_fixed_point(lse.objective, Vector::Zero(25), 400);
  CHECK((xc - xr).norm() < 1e-6);
}

TEST_CASE("nonquadratic Monte Carlo converges to the reference") {
  BuiltObjective lse = build_objective(QuadraticLSE{8, 0.4, 2.0, 5});
  Vector xs = solve_reference(lse.objective);
  RunConfig cfg;
  cfg.algorithm = Algorithm::RPCD;
  cfg.steps = 60;
  cfg.trials = 3;
  cfg.init_points = 2;
  cfg.seed = 1;
  TrajectoryStats s = run_monte_carlo(lse.objective, xs, cfg);
  CHECK(s.per_step.back().max < 1e-6);
}
