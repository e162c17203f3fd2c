#pragma once

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "rpcd/common.hpp"

namespace rpcd {

// Unit-diagonal symmetric positive definite Hessian with sigma = lambda_min.
struct QuadraticInstance {
  int n = 0;
  Matrix hessian;
  double sigma = 1.0;
  std::string kind = "custom";
  std::uint64_t seed = 0;
};

using SignPattern = std::vector<int>;

// Throws DomainError unless symmetric, unit-diagonal and lambda_min == sigma.
void validate(const QuadraticInstance& a);

double lambda_min(const Matrix& a);
double lambda_max(const Matrix& a);
Vector sorted_eigenvalues(const Matrix& a);

QuadraticInstance make_pi(int n, double sigma);
QuadraticInstance make_block_pi(int n, int k, double sigma);
QuadraticInstance apply_sign_flip(const QuadraticInstance& a, const SignPattern& v);

// Steps 1-3 of the worst-case search parametrization with a Gaussian factor.
QuadraticInstance random_unit_diag(int n, double sigma, std::uint64_t seed);

// Affine map Z -> ((1-sigma)/(1-mu)) Z + ((sigma-mu)/(1-mu)) I with mu = lambda_min(Z).
// Z must have unit diagonal. Throws NumericalError when 1 - mu < 1e-10.
Matrix set_min_eigenvalue(const Matrix& z, double sigma);

// D^{-1/2} Y D^{-1/2}.
Matrix unit_diagonal(const Matrix& y);

struct Rescaled {
  QuadraticInstance instance;
  Vector scaling;  // diagonal of F = D^{1/2}
};

Rescaled rescale_to_unit_diag(const Matrix& a);

nlohmann::json to_json(const QuadraticInstance& a);
QuadraticInstance instance_from_json(const nlohmann::json& j);

// ---- objectives ----------------------------------------------------------

struct PIQuadratic {
  int n;
  double sigma;
  int k;
};
struct RandomQuadratic {
  int n;
  double sigma;
  std::uint64_t seed;
};
struct QuadraticLSE {
  int n;
  double sigma;
  double alpha;
  std::uint64_t seed;
};
struct Logistic {
  int n;
  int m;
  double lambda;
  double flip_prob;
  std::uint64_t seed;
};

using ObjectiveSpec = std::variant<PIQuadratic, RandomQuadratic, QuadraticLSE, Logistic>;

void validate(const ObjectiveSpec& spec);
std::string describe(const ObjectiveSpec& spec);
int dimension(const ObjectiveSpec& spec);

// f(x) = 1/2 x^T H x + h(B x), where h is nothing, alpha*LSE, or the mean logistic loss.
// Auxiliary state aux = [H x; B x] makes one-coordinate restrictions O(n + rows(B)).
class Objective {
 public:
  enum class Term { None, LSE, Logistic };

  Objective(Matrix h, Term term, Matrix b, Vector labels, double alpha);

  int dim() const { return static_cast<int>(h_.rows()); }
  bool is_quadratic() const { return term_ == Term::None; }
  const Matrix& quadratic_part() const { return h_; }
  Term term() const { return term_; }
  const Matrix& linear_map() const { return b_; }
  const Vector& labels() const { return labels_; }

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;
  Matrix hessian(const Vector& x) const;

  Vector aux(const Vector& x) const;
  // f with coordinate i replaced by t.
  double restricted_value(const Vector& x, const Vector& aux, int i, double t) const;
  // d/dt of restricted_value.
  double restricted_derivative(const Vector& x, const Vector& aux, int i, double t) const;
  // Sets x(i) = t and updates aux in place.
  void commit(Vector& x, Vector& aux, int i, double t) const;

 private:
  double term_value(const Vector& z) const;
  Vector term_gradient(const Vector& z) const;

  Matrix h_;
  Term term_;
  Matrix b_;
  Vector labels_;
  double alpha_;
};

struct BuiltObjective {
  Objective objective;
  std::optional<QuadraticInstance> instance;  // the quadratic part when it is an instance
};

BuiltObjective build_objective(const ObjectiveSpec& spec);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with R-diagonal sign fix.
Matrix haar_orthogonal(int n, std::uint64_t seed);

}  // namespace rpcd
