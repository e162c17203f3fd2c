#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>

#include "rpcd/common.hpp"
#include "rpcd/instances.hpp"

namespace rpcd {

/// Restriction of an expectation operator to span{I, 11^T}. The matrix acts on the
/// coordinate vector (coefficient of I, coefficient of 11^T): column j is the image of the
/// j-th basis matrix.
struct Restricted2x2 {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  int n = 0;
  Algorithm algorithm = Algorithm::RPCD;
};

/// Dense n^2 x n^2 representation of X -> E[T^T X T] under column-major vec.
struct OperatorMatrix {
  int n = 0;
  Algorithm algorithm = Algorithm::RPCD;
  Matrix m;
};

struct ABCDValues {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
};

// (a, b) with X ~ a I + b 11^T recovered from (tr X, 1^T X 1).
Eigen::Vector2d project_span_i_ones(const Matrix& x);
// Frobenius distance from X to span{I, 11^T}.
double span_i_ones_residual(const Matrix& x);

Matrix rcd_operator_apply(const Matrix& a, const Matrix& x);
Matrix rcd_step_matrix(const Matrix& a, int i);  // I - E_i A
OperatorMatrix rcd_operator_matrix(const Matrix& a);

Matrix rpcd_iteration_matrix(const Matrix& a, const Permutation& p);
// Exact permutation average; refuses n > 8.
OperatorMatrix rpcd_operator_matrix(const Matrix& a);
// Exact permutation average of T^T X T.
Matrix rpcd_operator_apply(const Matrix& a, const Matrix& x);

// E_P[P Q P^T] = tau1 I + tau2 11^T.
std::pair<double, double> expected_permutation_conjugation(const Matrix& q);

// alpha, beta, gamma, delta of the PI Hessian; summation forms when |1 - sigma| < 1e-3.
ABCDValues abcd_values(int n, double sigma);
ABCDValues abcd_values_summation(int n, double sigma);

Restricted2x2 restricted_rpcd(int n, double sigma);
Restricted2x2 restricted_rcd(int n, double sigma);
// Matrix of an arbitrary operator restricted to span{I, 11^T} by applying it to I and 11^T.
Restricted2x2 restrict_operator(const OperatorMatrix& op);

double spectral_radius(const Matrix& m);
double spectral_radius(const Eigen::Matrix2d& m);
double spectral_radius(const Restricted2x2& r);

// max over 2 <= k <= n of rho(restricted_rpcd(k, sigma)).
double family_max_rho(int n, double sigma);

bool block_reduction_check(int n, int k, double sigma, double* rho_block = nullptr, double* rho_small = nullptr);

struct NormBound {
  double value = 0;
  double standard_error = 0;  // 0 in exact mode
  bool sampled = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// ||A^{-1/2} M(A) A^{-1/2}|| with the exact permutation average (n <= 8).
NormBound norm_upper_bound(const Matrix& a);
// Exact value for the PI Hessian at any n: max(tau1/sigma, (tau1 + n tau2)/L).
NormBound norm_upper_bound_pi(int n, double sigma);
// Sampled estimate: a pilot average of A^{-1/2} T^T A T A^{-1/2} seeds the top eigenvector,
// eight stochastic power rounds (max(256, samples/2) permutations each) refine it to u, and fresh samples
// estimate u^T (.) u with its standard error. A Rayleigh quotient, so it approaches the norm
// from below.
NormBound norm_upper_bound_sampled(const Matrix& a, std::uint64_t samples, std::uint64_t seed,
                                   std::uint64_t pilot = 64);

// Arrow-form matrix [[1, a 1^T], [a 1, (1-b) I + b 11^T]].
Matrix arrow_matrix(int n, double a, double b);
// Largest Frobenius residual of M^RPCD(V) projected onto span{V1..V4}, over V1..V4 and
// `trials` random combinations.
double partially_invariant_closure_check(const Matrix& a, int trials, std::uint64_t seed = 0);

// E[T~^T (x) T~^T] with T~ = A^{1/2} T A^{-1/2}.
Matrix similar_operator_matrix(const Matrix& a, Algorithm alg);
// max over p of |T~_{p'} - T~_p^T| (entrywise), p' the reversed update order p'(i) = n+1-p(i).
double complementary_pairing_residual(const Matrix& a);

nlohmann::json to_json(const Restricted2x2& r);
nlohmann::json to_json(const OperatorMatrix& op);

}  // namespace rpcd
