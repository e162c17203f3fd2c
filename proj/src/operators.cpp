#include "rpcd/operators.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rpcd/rng.hpp"

namespace rpcd {

namespace {

constexpr int kMaxExactN = 8;

void check_square(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 1) throw DomainError("expected a square matrix");
}

void check_exact_n(int n) {
  if (n > kMaxExactN) {
    std::ostringstream os;
    os << "exact permutation average refused for n = " << n << " (cost grows like n^4 n!; n <= " << kMaxExactN
       << " only); use the sampled mode";
    throw DomainError(os.str());
  }
}

Permutation identity_perm(int n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

std::vector<Matrix> all_iteration_matrices(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  check_exact_n(n);
  std::vector<Matrix> out;
  Permutation p = identity_perm(n);
  do {
    out.push_back(rpcd_iteration_matrix(a, p));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct SqrtPair {
  Matrix half, inv_half;
};

SqrtPair sqrt_pair(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  if (es.eigenvalues().minCoeff() <= 0) throw DomainError("matrix is not positive definite");
  return {es.operatorSqrt(), es.operatorInverseSqrt()};
}

double sym_norm(const Matrix& s) {
  Matrix sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::Vector2d project_span_i_ones(const Matrix& x) {
  const double n = static_cast<double>(x.rows());
  const double tr = x.trace();
  const double tot = x.sum();
  double b = (tot - tr) / (n * (n - 1));
  double a = tr / n - b;
  return {a, b};
}

double span_i_ones_residual(const Matrix& x) {
  Eigen::Vector2d c = project_span_i_ones(x);
  Matrix y = Matrix::Constant(x.rows(), x.cols(), c(1));
  y.diagonal().array() += c(0);
  return (x - y).norm();
}

Matrix rcd_operator_apply(const Matrix& a, const Matrix& x) {
  check_square(a);
  if (x.rows() != a.rows() || x.cols() != a.cols()) throw DomainError("operator argument dimension mismatch");
  const double n = static_cast<double>(a.rows());
  Matrix b = Matrix::Identity(a.rows(), a.cols()) - a / n;
  Matrix d = x.diagonal().asDiagonal();
  return b.transpose() * x * b + a.transpose() * (n * d - x) * a / (n * n);
}

Matrix rcd_step_matrix(const Matrix& a, int i) {
  check_square(a);
  if (i < 0 || i >= a.rows()) throw DomainError("coordinate index out of range");
  Matrix t = Matrix::Identity(a.rows(), a.cols());
  t.row(i) -= a.row(i) / a(i, i);
  return t;
}

OperatorMatrix rcd_operator_matrix(const Matrix& a) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  OperatorMatrix op;
  op.n = n;
  op.algorithm = Algorithm::RCD;
  op.m = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    Matrix tt = rcd_step_matrix(a, i).transpose();
    op.m += Eigen::kroneckerProduct(tt, tt).eval();
  }
  op.m /= n;
  return op;
}

Matrix rpcd_iteration_matrix(const Matrix& a, const Permutation& p) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  if (!is_permutation(p, n)) throw DomainError("invalid permutation");
  // Columns of P are e_{p(i)}: P^T A P has entries A(p(i), p(j)).
  Matrix ap(n, n), pta(n, n);
  for (int i = 0; i < n; ++i) {
    pta.row(i) = a.row(p[i]);
    for (int j = 0; j < n; ++j) ap(i, j) = a(p[i], p[j]);
  }
  for (int i = 0; i < n; ++i)
    if (ap(i, i) == 0.0) throw NumericalError("singular Gamma_P (zero diagonal)");
  Matrix g = ap.triangularView<Eigen::Lower>().solve(pta);
  Matrix t = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) t.row(p[i]) -= g.row(i);
  return t;
}

OperatorMatrix rpcd_operator_matrix(const Matrix& a) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  check_exact_n(n);
  OperatorMatrix op;
  op.n = n;
  op.algorithm = Algorithm::RPCD;
  op.m = Matrix::Zero(n * n, n * n);
  Permutation p = identity_perm(n);
  std::uint64_t count = 0;
  do {
    Matrix tt = rpcd_iteration_matrix(a, p).transpose();
    op.m += Eigen::kroneckerProduct(tt, tt).eval();
    ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  op.m /= static_cast<double>(count);
  return op;
}

Matrix rpcd_operator_apply(const Matrix& a, const Matrix& x) {
  check_square(a);
  if (x.rows() != a.rows() || x.cols() != a.cols()) throw DomainError("operator argument dimension mismatch");
  auto ts = all_iteration_matrices(a);
  Matrix acc = Matrix::Zero(a.rows(), a.cols());
  for (const auto& t : ts) acc += t.transpose() * x * t;
  return acc / static_cast<double>(ts.size());
}

std::pair<double, double> expected_permutation_conjugation(const Matrix& q) {
  check_square(q);
  const double n = static_cast<double>(q.rows());
  if (n < 2) throw DomainError("expected_permutation_conjugation needs n >= 2");
  double tau2 = (q.sum() - q.trace()) / (n * (n - 1));
  double tau1 = q.trace() / n - tau2;
  return {tau1, tau2};
}

ABCDValues abcd_values_summation(int n, double s) {
  const double L = n - (n - 1) * s;
  ABCDValues r;
  double sum_v = 0;
  double pw = 1;
  for (int i = 0; i < n; ++i) {
    double vi = 1 - L * pw;
    r.alpha += vi * vi;
    sum_v += vi;
    pw *= s;
  }
  const double sn = pw;  // s^n
  r.gamma = sum_v * sum_v;
  pw = s;
  for (int i = 1; i <= n; ++i) {
    double d = sn - pw;
    r.delta += d * d;
    pw *= s;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      double c = i < j ? -(1 - s) * std::pow(s, i - 1) : (1 - s) * (std::pow(s, i - j) - std::pow(s, i - 1));
      r.beta += c * c;
    }
  return r;
}

ABCDValues abcd_values(int n, double s) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  // the ratio forms lose about eps/(1 - s) relative accuracy
  if (std::abs(1.0 - s) < 1e-3) return abcd_values_summation(n, s);
  const double L = n - (n - 1) * s;
  const double sn = std::pow(s, n), s2n = sn * sn;
  const double sn_sum = (1 - sn) / (1 - s);
  const double tn_sum = (1 - s2n) / (1 - s * s);
  ABCDValues r;
  r.alpha = n - 2 * L * sn_sum + L * L * tn_sum;
  r.beta = ((1 - s) / (1 + s)) * (2.0 * n - n * s2n - 2 * (1 - sn * s) * sn_sum - s * s * tn_sum);
  double g = 1 - 1 / (1 - s) + (n - 1 + 1 / (1 - s)) * sn;
  r.gamma = g * g;
  r.delta = n * s2n - 2 * sn * s * sn_sum + s * s * tn_sum;
  return r;
}

Restricted2x2 restricted_rpcd(int n, double sigma) {
  ABCDValues v = abcd_values(n, sigma);
  Restricted2x2 r;
  r.n = n;
  r.algorithm = Algorithm::RPCD;
  r.m << n * v.beta - v.alpha, n * v.delta - v.gamma, v.alpha - v.beta, v.gamma - v.delta;
  r.m /= static_cast<double>(n) * (n - 1);
  return r;
}

Restricted2x2 restricted_rcd(int n, double sigma) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  const double u = (1 - sigma) * (1 - sigma), s2 = sigma * sigma;
  Restricted2x2 r;
  r.n = n;
  r.algorithm = Algorithm::RCD;
  // columns are the images of I and 11^T
  r.m << n - 1 + u, s2, u * (n - 2), s2 * (n - 2);
  r.m /= n;
  return r;
}

Restricted2x2 restrict_operator(const OperatorMatrix& op) {
  const int n = op.n;
  Restricted2x2 r;
  r.n = n;
  r.algorithm = op.algorithm;
  Matrix ident = Matrix::Identity(n, n), ones = Matrix::Ones(n, n);
  Vector yi = op.m * Eigen::Map<const Vector>(ident.data(), n * n);
  Vector yo = op.m * Eigen::Map<const Vector>(ones.data(), n * n);
  r.m.col(0) = project_span_i_ones(Eigen::Map<const Matrix>(yi.data(), n, n));
  r.m.col(1) = project_span_i_ones(Eigen::Map<const Matrix>(yo.data(), n, n));
  return r;
}

double spectral_radius(const Eigen::Matrix2d& m) {
  const double half_tr = 0.5 * (m(0, 0) + m(1, 1));
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double disc = half_tr * half_tr - det;
  if (disc >= 0) {
    double r = std::sqrt(disc);
    return std::max(std::abs(half_tr + r), std::abs(half_tr - r));
  }
  return std::sqrt(det);
}

double spectral_radius(const Matrix& m) {
  check_square(m);
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2) return spectral_radius(Eigen::Matrix2d(m));
  if (m.rows() > 4096) throw DomainError("spectral_radius: matrix too large");
  Eigen::EigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed to converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double spectral_radius(const Restricted2x2& r) { return spectral_radius(r.m); }

double family_max_rho(int n, double sigma) {
  double best = 0;
  for (int k = 2; k <= n; ++k) best = std::max(best, spectral_radius(restricted_rpcd(k, sigma)));
  return best;
}

bool block_reduction_check(int n, int k, double sigma, double* rho_block, double* rho_small) {
  if (n > 6) throw DomainError("block_reduction_check refused for n > 6 (factorial cost)");
  double rb = spectral_radius(rpcd_operator_matrix(make_block_pi(n, k, sigma).hessian).m);
  double rs = spectral_radius(rpcd_operator_matrix(make_pi(k, sigma).hessian).m);
  if (rho_block) *rho_block = rb;
  if (rho_small) *rho_small = rs;
  return std::abs(rb - rs) <= 1e-9;
}

NormBound norm_upper_bound(const Matrix& a) {
  check_square(a);
  SqrtPair sp = sqrt_pair(a);
  Matrix ma = rpcd_operator_apply(a, a);
  NormBound nb;
  nb.value = sym_norm(sp.inv_half * ma * sp.inv_half);
  return nb;
}

NormBound norm_upper_bound_pi(int n, double sigma) {
  QuadraticInstance a = make_pi(n, sigma);
  Matrix t = rpcd_iteration_matrix(a.hessian, identity_perm(n));
  Matrix q = t.transpose() * a.hessian * t;
  auto [tau1, tau2] = expected_permutation_conjugation(q);
  const double L = n - (n - 1) * sigma;
  NormBound nb;
  nb.value = std::max(std::abs(tau1 / sigma), std::abs((tau1 + n * tau2) / L));
  return nb;
}

NormBound norm_upper_bound_sampled(const Matrix& a, std::uint64_t samples, std::uint64_t seed,
                                   std::uint64_t pilot) {
  check_square(a);
  if (samples < 2 || pilot < 1) throw DomainError("sampled norm bound needs samples >= 2 and pilot >= 1");
  const int n = static_cast<int>(a.rows());
  SqrtPair sp = sqrt_pair(a);
  Rng rng(derive_seed(seed, 0x9170));
  Matrix acc = Matrix::Zero(n, n);
  for (std::uint64_t s = 0; s < pilot; ++s) {
    Matrix t = rpcd_iteration_matrix(a, random_permutation(rng, n));
    acc += t.transpose() * a * t;
  }
  Matrix s_hat = sp.inv_half * (acc / static_cast<double>(pilot)) * sp.inv_half;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s_hat + s_hat.transpose()));
  Vector u = es.eigenvectors().col(n - 1);

  // Stochastic power rounds on fresh samples: the top eigenspace can be nearly degenerate
  // with the next one, where a single noisy pilot eigenvector underestimates the norm.
  Rng rng1(derive_seed(seed, 0x9172));
  const std::uint64_t batch = std::max<std::uint64_t>(256, samples / 2);
  for (int round = 0; round < 8; ++round) {
    Vector su = Vector::Zero(n);
    const Vector w0 = sp.inv_half * u;
    for (std::uint64_t s = 0; s < batch; ++s) {
      Permutation p = random_permutation(rng1, n);
      Vector y = w0;
      for (int i : p) y(i) -= a.row(i).dot(y) / a(i, i);
      // T^T v = v - A P G^{-T} P^T v with G = tril(P^T A P)
      Vector v = a * y;
      Vector pv(n);
      for (int i = 0; i < n; ++i) pv(i) = v(p[i]);
      Vector q(n);
      for (int i = n - 1; i >= 0; --i) {
        double acc2 = pv(i);
        for (int j = i + 1; j < n; ++j) acc2 -= a(p[j], p[i]) * q(j);
        q(i) = acc2 / a(p[i], p[i]);
      }
      Vector pq = Vector::Zero(n);
      for (int i = 0; i < n; ++i) pq(p[i]) = q(i);
      su += v - a * pq;
    }
    su = sp.inv_half * su;
    const double nrm = su.norm();
    if (!(nrm > 0)) break;
    u = su / nrm;
  }
  Vector w = sp.inv_half * u;

  // u^T A^{-1/2} T^T A T A^{-1/2} u = y^T A y with y = T w: one epoch on w.
  Rng rng2(derive_seed(seed, 0x9171));
  double mean = 0, m2 = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Permutation p = random_permutation(rng2, n);
    Vector y = w;
    for (int i : p) y(i) -= a.row(i).dot(y) / a(i, i);
    double r = y.dot(a * y);
    double d = r - mean;
    mean += d / static_cast<double>(s + 1);
    m2 += d * (r - mean);
  }
  NormBound nb;
  nb.sampled = true;
  nb.samples = samples;
  nb.seed = seed;
  nb.value = mean;
  nb.standard_error = std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
  return nb;
}

Matrix arrow_matrix(int n, double a, double b) {
  if (n < 3) throw DomainError("arrow matrix needs n >= 3");
  Matrix m = Matrix::Constant(n, n, b);
  m.row(0).setConstant(a);
  m.col(0).setConstant(a);
  m.diagonal().setOnes();
  return m;
}

namespace {

// Orthogonal projection onto span{V1..V4}: average entries within each pattern class.
Matrix project_arrow_span(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  const int r = n - 1;
  double off = 0;
  for (int j = 1; j < n; ++j) off += x(0, j) + x(j, 0);
  off /= 2.0 * r;
  double diag = x.diagonal().tail(r).mean();
  double lower_off = 0;
  if (r > 1) {
    lower_off = (x.bottomRightCorner(r, r).sum() - x.diagonal().tail(r).sum()) / (r * (r - 1.0));
  }
  Matrix p = Matrix::Constant(n, n, lower_off);
  p.row(0).setConstant(off);
  p.col(0).setConstant(off);
  p(0, 0) = x(0, 0);
  for (int i = 1; i < n; ++i) p(i, i) = diag;
  return p;
}

}  // namespace

double partially_invariant_closure_check(const Matrix& a, int trials, std::uint64_t seed) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  if (n < 3 || n > 6) throw DomainError("closure check needs 3 <= n <= 6");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw DomainError("closure check needs a symmetric matrix");
  if (trials < 0) throw DomainError("trials must be nonnegative");
  auto ts = all_iteration_matrices(a);
  std::vector<Matrix> basis(4, Matrix::Zero(n, n));
  basis[0](0, 0) = 1;
  basis[1].row(0).tail(n - 1).setOnes();
  basis[1].col(0).tail(n - 1).setOnes();
  basis[2].bottomRightCorner(n - 1, n - 1).setIdentity();
  basis[3].bottomRightCorner(n - 1, n - 1).setOnes();
  std::vector<Matrix> inputs = basis;
  Rng rng(derive_seed(seed, 0xc105e));
  for (int t = 0; t < trials; ++t) {
    Vector c = standard_normal(rng, 4);
    Matrix x = Matrix::Zero(n, n);
    for (int k = 0; k < 4; ++k) x += c(k) * basis[k];
    inputs.push_back(x);
  }
  double worst = 0;
  for (const auto& x : inputs) {
    Matrix y = Matrix::Zero(n, n);
    for (const auto& t : ts) y += t.transpose() * x * t;
    y /= static_cast<double>(ts.size());
    worst = std::max(worst, (y - project_arrow_span(y)).norm());
  }
  return worst;
}

Matrix similar_operator_matrix(const Matrix& a, Algorithm alg) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  SqrtPair sp = sqrt_pair(a);
  Matrix out = Matrix::Zero(n * n, n * n);
  auto add = [&](const Matrix& t) {
    Matrix tt = (sp.half * t * sp.inv_half).transpose();
    out += Eigen::kroneckerProduct(tt, tt).eval();
  };
  if (alg == Algorithm::RCD) {
    for (int i = 0; i < n; ++i) add(rcd_step_matrix(a, i));
    out /= n;
  } else if (alg == Algorithm::CCD) {
    add(rpcd_iteration_matrix(a, identity_perm(n)));
  } else {
    auto ts = all_iteration_matrices(a);
    for (const auto& t : ts) add(t);
    out /= static_cast<double>(ts.size());
  }
  return out;
}

double complementary_pairing_residual(const Matrix& a) {
  check_square(a);
  const int n = static_cast<int>(a.rows());
  check_exact_n(n);
  SqrtPair sp = sqrt_pair(a);
  double worst = 0;
  Permutation p = identity_perm(n);
  do {
    Permutation q(p.rbegin(), p.rend());
    Matrix tp = sp.half * rpcd_iteration_matrix(a, p) * sp.inv_half;
    Matrix tq = sp.half * rpcd_iteration_matrix(a, q) * sp.inv_half;
    worst = std::max(worst, (tq - tp.transpose()).cwiseAbs().maxCoeff());
  } while (std::next_permutation(p.begin(), p.end()));
  return worst;
}

nlohmann::json to_json(const Restricted2x2& r) {
  return {{"n", r.n},
          {"algorithm", to_string(r.algorithm)},
          {"layout", "columns are images of I and 11^T"},
          {"m", {{r.m(0, 0), r.m(0, 1)}, {r.m(1, 0), r.m(1, 1)}}},
          {"rho", spectral_radius(r)}};
}

nlohmann::json to_json(const OperatorMatrix& op) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < op.m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < op.m.cols(); ++j) row.push_back(op.m(i, j));
    rows.push_back(row);
  }
  return {{"n", op.n}, {"algorithm", to_string(op.algorithm)}, {"matrix", rows}, {"rho", spectral_radius(op.m)}};
}

}  // namespace rpcd
