#include "rpcd/instances.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rpcd/rng.hpp"

namespace rpcd {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kDiagTol = 1e-12;
constexpr double kEigTol = 1e-8;

void check_sigma(double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
}

double softplus(double u) { return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u))); }

double logistic_fn(double u) {
  if (u >= 0) return 1.0 / (1.0 + std::exp(-u));
  double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

Vector sorted_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolver failed");
  return es.eigenvalues();
}

double lambda_min(const Matrix& a) { return sorted_eigenvalues(a)(0); }
double lambda_max(const Matrix& a) { return sorted_eigenvalues(a)(a.rows() - 1); }

void validate(const QuadraticInstance& a) {
  const Matrix& h = a.hessian;
  if (a.n < 2 || h.rows() != a.n || h.cols() != a.n) throw DomainError("instance dimension mismatch");
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > kSymTol) throw DomainError("hessian is not symmetric");
  if ((h.diagonal().array() - 1.0).abs().maxCoeff() > kDiagTol) throw DomainError("hessian diagonal is not unit");
  check_sigma(a.sigma);
  double mu = lambda_min(h);
  if (std::abs(mu - a.sigma) > kEigTol) {
    std::ostringstream os;
    os << "lambda_min " << mu << " does not match sigma " << a.sigma;
    throw DomainError(os.str());
  }
}

QuadraticInstance make_pi(int n, double sigma) {
  if (n < 2) throw DomainError("n must be at least 2");
  check_sigma(sigma);
  QuadraticInstance a;
  a.n = n;
  a.sigma = sigma;
  a.kind = "pi";
  a.hessian = Matrix::Constant(n, n, 1.0 - sigma);
  a.hessian.diagonal().setOnes();
  return a;
}

QuadraticInstance make_block_pi(int n, int k, double sigma) {
  if (k < 2 || k > n) throw DomainError("block size k must satisfy 2 <= k <= n");
  QuadraticInstance a = make_pi(n, sigma);
  a.hessian.setIdentity();
  a.hessian.topLeftCorner(k, k) = make_pi(k, sigma).hessian;
  a.kind = "block_pi";
  return a;
}

QuadraticInstance apply_sign_flip(const QuadraticInstance& a, const SignPattern& v) {
  if (static_cast<int>(v.size()) != a.n) throw DomainError("sign pattern dimension mismatch");
  Vector s(a.n);
  for (int i = 0; i < a.n; ++i) {
    if (v[i] != 1 && v[i] != -1) throw DomainError("sign pattern entries must be +1 or -1");
    s(i) = v[i];
  }
  QuadraticInstance out = a;
  out.hessian = a.hessian.cwiseProduct(s * s.transpose());
  return out;
}

Matrix unit_diagonal(const Matrix& y) {
  Vector d = y.diagonal();
  if ((d.array() <= 0.0).any()) throw NumericalError("nonpositive diagonal");
  Vector r = d.array().sqrt().inverse();
  Matrix z = r.asDiagonal() * y * r.asDiagonal();
  z = 0.5 * (z + z.transpose());
  z.diagonal().setOnes();
  return z;
}

Matrix set_min_eigenvalue(const Matrix& z, double sigma) {
  double mu = lambda_min(z);
  if (1.0 - mu < 1e-10) throw NumericalError("lambda_min of the unit-diagonal matrix is 1; affine map undefined");
  double a = (1.0 - sigma) / (1.0 - mu);
  double b = (sigma - mu) / (1.0 - mu);
  Matrix out = a * z;
  out.diagonal().array() += b;
  out.diagonal().setOnes();
  return out;
}

QuadraticInstance random_unit_diag(int n, double sigma, std::uint64_t seed) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0, 1)");
  for (int attempt = 0; attempt <= 16; ++attempt) {
    Rng rng(derive_seed(seed, 0x7d1u, attempt));
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix l = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) l(i, j) = nd(rng);
    if ((l.diagonal().array() == 0.0).any()) continue;
    Matrix z = unit_diagonal(l.transpose() * l);
    if (1.0 - lambda_min(z) < 1e-10) continue;
    QuadraticInstance a;
    a.n = n;
    a.sigma = sigma;
    a.kind = "random";
    a.seed = seed;
    a.hessian = set_min_eigenvalue(z, sigma);
    return a;
  }
  throw NumericalError("random_unit_diag: 16 retries exhausted");
}

Rescaled rescale_to_unit_diag(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() < 2) throw DomainError("rescale_to_unit_diag needs a square matrix, n >= 2");
  if ((a.diagonal().array() <= 0.0).any()) throw DomainError("rescale_to_unit_diag: nonpositive diagonal");
  Rescaled r;
  r.scaling = a.diagonal().array().sqrt();
  Vector inv = r.scaling.array().inverse();
  Matrix h = inv.asDiagonal() * a * inv.asDiagonal();
  h = 0.5 * (h + h.transpose());
  h.diagonal().setOnes();
  double mu = lambda_min(h);
  if (!(mu > 0.0)) throw DomainError("rescale_to_unit_diag: matrix is not positive definite");
  r.instance.n = static_cast<int>(a.rows());
  r.instance.hessian = h;
  r.instance.sigma = std::min(mu, 1.0);
  r.instance.kind = "rescaled";
  return r;
}

nlohmann::json to_json(const QuadraticInstance& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < a.n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < a.n; ++j) row.push_back(a.hessian(i, j));
    rows.push_back(row);
  }
  return {{"n", a.n}, {"sigma", a.sigma}, {"kind", a.kind}, {"seed", a.seed}, {"hessian", rows}};
}

QuadraticInstance instance_from_json(const nlohmann::json& j) {
  QuadraticInstance a;
  a.n = j.at("n").get<int>();
  a.sigma = j.at("sigma").get<double>();
  a.kind = j.value("kind", std::string("custom"));
  a.seed = j.value("seed", std::uint64_t{0});
  const auto& rows = j.at("hessian");
  if (static_cast<int>(rows.size()) != a.n) throw DomainError("hessian row count does not match n");
  a.hessian.resize(a.n, a.n);
  for (int i = 0; i < a.n; ++i) {
    if (static_cast<int>(rows[i].size()) != a.n) throw DomainError("hessian row length does not match n");
    for (int k = 0; k < a.n; ++k) a.hessian(i, k) = rows[i][k].get<double>();
  }
  validate(a);
  return a;
}

// ---- objectives ----------------------------------------------------------

Matrix haar_orthogonal(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix g = standard_normal(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

void validate(const ObjectiveSpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if (s.n < 2) throw DomainError("objective dimension must be at least 2");
        if constexpr (std::is_same_v<T, Logistic>) {
          if (s.m < 1) throw DomainError("logistic: m must be positive");
          if (!(s.lambda > 0)) throw DomainError("logistic: lambda must be positive");
          if (!(s.flip_prob >= 0 && s.flip_prob < 1)) throw DomainError("logistic: flip_prob must lie in [0, 1)");
        } else {
          check_sigma(s.sigma);
          if constexpr (std::is_same_v<T, PIQuadratic>) {
            if (s.k < 2 || s.k > s.n) throw DomainError("PI block size must satisfy 2 <= k <= n");
          }
          if constexpr (std::is_same_v<T, RandomQuadratic> || std::is_same_v<T, QuadraticLSE>) {
            if (s.sigma >= 1.0) throw DomainError("random quadratic needs sigma < 1");
          }
          if constexpr (std::is_same_v<T, QuadraticLSE>) {
            if (!(s.alpha >= 0)) throw DomainError("LSE scale alpha must be nonnegative");
          }
        }
      },
      spec);
}

int dimension(const ObjectiveSpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

std::string describe(const ObjectiveSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PIQuadratic>)
          os << "pi_quadratic(n=" << s.n << ", sigma=" << s.sigma << ", k=" << s.k << ")";
        else if constexpr (std::is_same_v<T, RandomQuadratic>)
          os << "random_quadratic(n=" << s.n << ", sigma=" << s.sigma << ", seed=" << s.seed << ")";
        else if constexpr (std::is_same_v<T, QuadraticLSE>)
          os << "quadratic_lse(n=" << s.n << ", sigma=" << s.sigma << ", alpha=" << s.alpha << ", seed=" << s.seed << ")";
        else
          os << "logistic(n=" << s.n << ", m=" << s.m << ", lambda=" << s.lambda << ", flip=" << s.flip_prob
             << ", seed=" << s.seed << ")";
      },
      spec);
  return os.str();
}

Objective::Objective(Matrix h, Term term, Matrix b, Vector labels, double alpha)
    : h_(std::move(h)), term_(term), b_(std::move(b)), labels_(std::move(labels)), alpha_(alpha) {
  if (term_ == Term::None) b_.resize(0, h_.cols());
}

double Objective::term_value(const Vector& z) const {
  switch (term_) {
    case Term::None: return 0.0;
    case Term::LSE: {
      if (alpha_ == 0.0) return 0.0;
      double m = z.maxCoeff();
      return alpha_ * (m + std::log((z.array() - m).exp().sum()));
    }
    case Term::Logistic: {
      double s = 0;
      for (int j = 0; j < z.size(); ++j) s += softplus(-labels_(j) * z(j));
      return s / static_cast<double>(z.size());
    }
  }
  return 0.0;
}

Vector Objective::term_gradient(const Vector& z) const {
  switch (term_) {
    case Term::None: return Vector::Zero(0);
    case Term::LSE: {
      double m = z.maxCoeff();
      Vector p = (z.array() - m).exp();
      return alpha_ * p / p.sum();
    }
    case Term::Logistic: {
      Vector g(z.size());
      double inv_m = 1.0 / static_cast<double>(z.size());
      for (int j = 0; j < z.size(); ++j) g(j) = -labels_(j) * logistic_fn(-labels_(j) * z(j)) * inv_m;
      return g;
    }
  }
  return Vector::Zero(0);
}

double Objective::value(const Vector& x) const {
  double q = 0.5 * x.dot(h_ * x);
  if (term_ == Term::None) return q;
  return q + term_value(b_ * x);
}

Vector Objective::gradient(const Vector& x) const {
  Vector g = h_ * x;
  if (term_ != Term::None) g += b_.transpose() * term_gradient(b_ * x);
  return g;
}

Matrix Objective::hessian(const Vector& x) const {
  Matrix out = h_;
  if (term_ == Term::None) return out;
  Vector z = b_ * x;
  if (term_ == Term::LSE) {
    Vector p = term_gradient(z) / (alpha_ == 0.0 ? 1.0 : alpha_);
    Matrix w = Matrix(p.asDiagonal()) - p * p.transpose();
    out += alpha_ * b_.transpose() * w * b_;
  } else {
    Vector d(z.size());
    double inv_m = 1.0 / static_cast<double>(z.size());
    for (int j = 0; j < z.size(); ++j) {
      double s = logistic_fn(-labels_(j) * z(j));
      d(j) = s * (1.0 - s) * inv_m;
    }
    out += b_.transpose() * d.asDiagonal() * b_;
  }
  return out;
}

Vector Objective::aux(const Vector& x) const {
  Vector a(h_.rows() + b_.rows());
  a.head(h_.rows()) = h_ * x;
  if (b_.rows() > 0) a.tail(b_.rows()) = b_ * x;
  return a;
}

double Objective::restricted_value(const Vector& x, const Vector& aux, int i, double t) const {
  const int n = dim();
  double d = t - x(i);
  double q = 0.5 * x.dot(aux.head(n)) + d * aux(i) + 0.5 * d * d * h_(i, i);
  if (term_ == Term::None) return q;
  const int r = static_cast<int>(b_.rows());
  auto z = aux.tail(r);
  auto col = b_.col(i);
  if (term_ == Term::LSE) {
    if (alpha_ == 0.0) return q;
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < r; ++j) m = std::max(m, z(j) + d * col(j));
    double s = 0;
    for (int j = 0; j < r; ++j) s += std::exp(z(j) + d * col(j) - m);
    return q + alpha_ * (m + std::log(s));
  }
  double s = 0;
  for (int j = 0; j < r; ++j) s += softplus(-labels_(j) * (z(j) + d * col(j)));
  return q + s / static_cast<double>(r);
}

double Objective::restricted_derivative(const Vector& x, const Vector& aux, int i, double t) const {
  double d = t - x(i);
  double g = aux(i) + d * h_(i, i);
  if (term_ == Term::None) return g;
  const int r = static_cast<int>(b_.rows());
  auto z = aux.tail(r);
  auto col = b_.col(i);
  if (term_ == Term::LSE) {
    if (alpha_ == 0.0) return g;
    double m = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < r; ++j) m = std::max(m, z(j) + d * col(j));
    double s = 0, w = 0;
    for (int j = 0; j < r; ++j) {
      double e = std::exp(z(j) + d * col(j) - m);
      s += e;
      w += e * col(j);
    }
    return g + alpha_ * w / s;
  }
  double w = 0;
  for (int j = 0; j < r; ++j) w += -labels_(j) * col(j) * logistic_fn(-labels_(j) * (z(j) + d * col(j)));
  return g + w / static_cast<double>(r);
}

void Objective::commit(Vector& x, Vector& aux, int i, double t) const {
  const int n = dim();
  double d = t - x(i);
  aux.head(n) += d * h_.col(i);
  if (b_.rows() > 0) aux.tail(b_.rows()) += d * b_.col(i);
  x(i) = t;
}

BuiltObjective build_objective(const ObjectiveSpec& spec) {
  validate(spec);
  return std::visit(
      [](const auto& s) -> BuiltObjective {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PIQuadratic>) {
          QuadraticInstance a = s.k == s.n ? make_pi(s.n, s.sigma) : make_block_pi(s.n, s.k, s.sigma);
          return {Objective(a.hessian, Objective::Term::None, Matrix(), Vector(), 0.0), a};
        } else if constexpr (std::is_same_v<T, RandomQuadratic>) {
          QuadraticInstance a = random_unit_diag(s.n, s.sigma, s.seed);
          return {Objective(a.hessian, Objective::Term::None, Matrix(), Vector(), 0.0), a};
        } else if constexpr (std::is_same_v<T, QuadraticLSE>) {
          QuadraticInstance a = random_unit_diag(s.n, s.sigma, s.seed);
          Matrix q = haar_orthogonal(s.n, derive_seed(s.seed, 0x15e));
          return {Objective(a.hessian, Objective::Term::LSE, q, Vector(), s.alpha), a};
        } else {
          Rng rng(s.seed);
          Vector x_true = standard_normal(rng, s.n);
          Matrix data = standard_normal(rng, s.m, s.n);
          Vector b(s.m);
          for (int j = 0; j < s.m; ++j) b(j) = data.row(j).dot(x_true) >= 0 ? 1.0 : -1.0;
          std::uniform_real_distribution<double> u(0.0, 1.0);
          for (int j = 0; j < s.m; ++j)
            if (u(rng) < s.flip_prob) b(j) = -b(j);
          Matrix h = s.lambda * Matrix::Identity(s.n, s.n);
          return {Objective(h, Objective::Term::Logistic, data, b, 0.0), std::nullopt};
        }
      },
      spec);
}

}  // namespace rpcd
