#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpcd/instances.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"
#include "rpcd/runners.hpp"

using namespace rpcd;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }
Matrix ones(int n) { return Matrix::Ones(n, n); }

std::vector<Permutation> all_perms(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Independent radius: eigenvalues of a general real matrix.
double radius(const Matrix& m) { return Eigen::EigenSolver<Matrix>(m, false).eigenvalues().cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("RCD operator closed form") {
  for (int n : {2, 3, 5}) {
    Matrix I = Matrix::Identity(n, n);
    CHECK(max_abs(rcd_operator_apply(I, I) - (1.0 - 1.0 / n) * I) < 1e-14);
    Matrix a = make_pi(n, 0.4).hessian;
    CHECK(max_abs(rcd_operator_apply(a, I) - (I - 2 * a / n + a * a / n)) < 1e-13);
  }
  CHECK(span_i_ones_residual(rcd_operator_apply(make_pi(3, 0.5).hessian, ones(3))) < 1e-12);

  Rng g(1);
  for (int c = 0; c < 10; ++c) {
    int n = 2 + c % 5;
    Matrix a = random_unit_diag(n, 0.3, c).hessian;
    Matrix z = standard_normal(g, n, n);
    Matrix x = z + z.transpose();
    Matrix brute = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      Matrix t = rcd_step_matrix(a, i);
      brute += t.transpose() * x * t / n;
    }
    CHECK(max_abs(rcd_operator_apply(a, x) - brute) < 1e-12);
  }
  CHECK_THROWS_AS(rcd_operator_apply(Matrix::Identity(3, 3), Matrix::Identity(2, 2)), DomainError);
}

TEST_CASE("RPCD iteration matrix") {
  CHECK(max_abs(rpcd_iteration_matrix(Matrix::Identity(4, 4), {2, 0, 3, 1})) == 0);
  Matrix a = make_pi(3, 0.6).hessian;
  Matrix gamma = a.triangularView<Eigen::Lower>();
  Matrix want = Matrix::Identity(3, 3) - gamma.inverse() * a;
  CHECK(max_abs(rpcd_iteration_matrix(a, {0, 1, 2}) - want) < 1e-14);

  Matrix b = make_pi(2, 0.5).hessian;
  Matrix t = rpcd_iteration_matrix(b, {1, 0});
  for (int j = 0; j < 2; ++j) {
    Vector e = Vector::Unit(2, j);
    CHECK((t * e - rpcd_epoch(b, e, {1, 0})).norm() < 1e-15);
  }
}

TEST_CASE("RPCD operator matrix") {
  CHECK(max_abs(rpcd_operator_matrix(Matrix::Identity(3, 3)).m) == 0);
  CHECK_THROWS_AS(rpcd_operator_matrix(make_pi(9, 0.5).hessian), DomainError);

  // brute-force vec(E[T^T X T]) for a random symmetric X
  Rng g(2);
  Matrix a = random_unit_diag(4, 0.2, 5).hessian;
  Matrix z = standard_normal(g, 4, 4);
  Matrix x = z + z.transpose();
  Matrix brute = Matrix::Zero(4, 4);
  auto ps = all_perms(4);
  for (const auto& p : ps) {
    Matrix t = rpcd_iteration_matrix(a, p);
    brute += t.transpose() * x * t;
  }
  brute /= static_cast<double>(ps.size());
  OperatorMatrix op = rpcd_operator_matrix(a);
  Vector vx = Eigen::Map<const Vector>(x.data(), 16);
  Vector img = op.m * vx;
  CHECK(max_abs(Eigen::Map<const Matrix>(img.data(), 4, 4) - brute) < 1e-12);
  CHECK(max_abs(rpcd_operator_apply(a, x) - brute) < 1e-12);

  for (double s : {0.2, 0.5, 0.8}) {
    Restricted2x2 r = restrict_operator(rpcd_operator_matrix(make_pi(2, s).hessian));
    CHECK(max_abs(r.m - restricted_rpcd(2, s).m) < 1e-12);
  }
}

TEST_CASE("expected permutation conjugation") {
  auto [a1, b1] = expected_permutation_conjugation(Matrix::Identity(4, 4));
  CHECK(a1 == doctest::Approx(1));
  CHECK(std::abs(b1) < 1e-15);
  auto [a2, b2] = expected_permutation_conjugation(ones(4));
  CHECK(std::abs(a2) < 1e-15);
  CHECK(b2 == doctest::Approx(1));
  Matrix e = Matrix::Zero(2, 2);
  e(0, 0) = 1;
  auto [a3, b3] = expected_permutation_conjugation(e);
  CHECK(a3 == doctest::Approx(0.5));
  CHECK(std::abs(b3) < 1e-15);

  Rng g(3);
  for (int n = 2; n <= 5; ++n) {
    Matrix q = standard_normal(g, n, n);
    Matrix avg = Matrix::Zero(n, n);
    auto ps = all_perms(n);
    for (const auto& p : ps) {
      Matrix pm = Matrix::Zero(n, n);
      for (int i = 0; i < n; ++i) pm(p[i], i) = 1;
      avg += pm * q * pm.transpose();
    }
    avg /= static_cast<double>(ps.size());
    auto [t1, t2] = expected_permutation_conjugation(q);
    CHECK(max_abs(avg - t1 * Matrix::Identity(n, n) - t2 * ones(n)) < 1e-12);
  }
}

TEST_CASE("RPCD restriction") {
  for (int n : {2, 5, 9}) CHECK(max_abs(restricted_rpcd(n, 1.0).m) == 0);
  for (double s : {0.1, 0.35, 0.9}) {
    double u = 1 - s;
    double beta = u * u + std::pow(u, 4), delta = s * s * u * u;
    Eigen::Matrix2d want;
    want << beta, delta, 0, 0;
    CHECK(max_abs(restricted_rpcd(2, s).m - 0.5 * want) < 1e-14);
  }
  CHECK(restricted_rpcd(6, 0.3).m.minCoeff() >= -1e-12);
  // ratio and summation forms agree away from 1; near 1 the radius goes to 0 continuously
  for (int n : {3, 7, 40}) {
    ABCDValues r = abcd_values(n, 0.98), q = abcd_values_summation(n, 0.98);
    CHECK(std::abs(r.alpha - q.alpha) < 1e-11 * n);
    CHECK(std::abs(r.beta - q.beta) < 1e-11 * n);
    CHECK(std::abs(r.gamma - q.gamma) < 1e-11 * n * n);
    CHECK(std::abs(r.delta - q.delta) < 1e-11 * n);
    double prev = 1;
    for (double e : {1e-2, 1e-3, 1e-5, 1e-8, 1e-12}) {
      double rho = spectral_radius(restricted_rpcd(n, 1 - e));
      CHECK(rho <= prev);
      prev = rho;
    }
    CHECK(prev < 1e-10);
  }
}

TEST_CASE("RCD restriction") {
  // the displayed matrix lists images of I and 11^T as rows; Restricted2x2 stores them as columns
  for (double s : {0.2, 0.5, 0.8}) {
    Eigen::Matrix2d disp;
    disp << 1 + (1 - s) * (1 - s), 0, s * s, 0;
    CHECK(max_abs(restricted_rcd(2, s).m - 0.5 * disp.transpose()) < 1e-14);
  }
  for (int n : {3, 6}) {
    Eigen::Matrix2d disp;
    disp << 1 - 1.0 / n, 0, 1.0 / n, 1 - 2.0 / n;
    CHECK(max_abs(restricted_rcd(n, 1.0).m - disp.transpose()) < 1e-14);
  }
  Matrix a = make_pi(3, 0.5).hessian;
  Restricted2x2 r = restricted_rcd(3, 0.5);
  Eigen::Vector2d img_i = project_span_i_ones(rcd_operator_apply(a, Matrix::Identity(3, 3)));
  Eigen::Vector2d img_j = project_span_i_ones(rcd_operator_apply(a, ones(3)));
  CHECK((r.m.col(0) - img_i).norm() < 1e-13);
  CHECK((r.m.col(1) - img_j).norm() < 1e-13);
  CHECK(r.m.minCoeff() >= 0);
}

TEST_CASE("spectral radius") {
  CHECK(spectral_radius(Matrix(Matrix::Identity(2, 2))) == doctest::Approx(1));
  Eigen::Matrix2d nil;
  nil << 0, 1, 0, 0;
  CHECK(spectral_radius(nil) == 0);
  Eigen::Matrix2d rot;
  rot << 0, -2, 2, 0;
  CHECK(spectral_radius(rot) == doctest::Approx(2));
  for (int n : {2, 4, 10, 40})
    for (double s : {0.1, 0.5, 0.9})
      CHECK(spectral_radius(restricted_rcd(n, s)) >= 1 - 1.0 / n + (1 - s) * (1 - s) / n - 1e-14);
  Rng g(4);
  Matrix m = standard_normal(g, 9, 9);
  CHECK(std::abs(spectral_radius(m) - radius(m)) < 1e-10);
}

TEST_CASE("restriction carries the full spectral radius") {
  for (int n = 2; n <= 6; ++n)
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double full = radius(rpcd_operator_matrix(make_pi(n, s).hessian).m);
      CHECK(std::abs(full - spectral_radius(restricted_rpcd(n, s))) < 1e-8);
    }
}

TEST_CASE("block reduction") {
  CHECK(block_reduction_check(4, 4, 0.5));
  CHECK(block_reduction_check(5, 3, 0.3));
  CHECK(block_reduction_check(4, 2, 0.9));
  CHECK_THROWS_AS(block_reduction_check(7, 3, 0.5), DomainError);
}

TEST_CASE("sign flips leave the spectrum unchanged") {
  Matrix a = random_unit_diag(4, 0.25, 12).hessian;
  double base = radius(rpcd_operator_matrix(a).m);
  QuadraticInstance inst{4, a, lambda_min(a)};
  for (SignPattern v : {SignPattern{1, -1, 1, 1}, SignPattern{-1, -1, 1, -1}}) {
    Matrix f = apply_sign_flip(inst, v).hessian;
    CHECK(std::abs(radius(rpcd_operator_matrix(f).m) - base) < 1e-9);
  }
}

TEST_CASE("norm upper bound") {
  CHECK(norm_upper_bound(Matrix::Identity(3, 3)).value < 1e-14);
  Matrix a = make_pi(4, 0.3).hessian;
  CHECK(norm_upper_bound(a).value >= radius(rpcd_operator_matrix(a).m) - 1e-9);
  for (int n : {3, 5})
    for (double s : {0.2, 0.6}) CHECK(std::abs(norm_upper_bound_pi(n, s).value - norm_upper_bound(make_pi(n, s).hessian).value) < 1e-10);
  NormBound sb = norm_upper_bound_sampled(make_pi(6, 0.5).hessian, 2000, 3);
  double exact = norm_upper_bound_pi(6, 0.5).value;
  CHECK(sb.sampled);
  CHECK(sb.standard_error > 0);
  CHECK(std::abs(sb.value - exact) < 5 * sb.standard_error + 1e-3);
}

TEST_CASE("arrow closure") {
  CHECK(partially_invariant_closure_check(arrow_matrix(4, 0.5, 0.5), 4) < 1e-12);
  CHECK(partially_invariant_closure_check(arrow_matrix(4, 0.3, 0.5), 4) < 1e-10);
  CHECK(partially_invariant_closure_check(random_unit_diag(4, 0.3, 2).hessian, 4) > 1e-6);
}

TEST_CASE("symmetric similar form and complementary pairing") {
  for (int n = 2; n <= 5; ++n) {
    Matrix a = random_unit_diag(n, 0.3, 60 + n).hessian;
    for (Algorithm alg : {Algorithm::RCD, Algorithm::RPCD}) {
      Matrix s = similar_operator_matrix(a, alg);
      CHECK(max_abs(s - s.transpose()) < 1e-9);
    }
    CHECK(complementary_pairing_residual(a) < 1e-10);
  }
  Matrix a6 = random_unit_diag(6, 0.4, 66).hessian;
  Matrix s6 = similar_operator_matrix(a6, Algorithm::RPCD);
  CHECK(max_abs(s6 - s6.transpose()) < 1e-9);
}

TEST_CASE("json export") {
  nlohmann::json j = to_json(restricted_rpcd(3, 0.5));
  CHECK(j["n"] == 3);
  CHECK(j.contains("m"));
}
