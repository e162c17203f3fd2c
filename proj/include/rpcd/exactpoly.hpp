#pragma once

#include <gmpxx.h>
#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

#include "rpcd/common.hpp"

namespace rpcd {

using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
// Exact value of a decimal literal such as "0.6" or a fraction "3/5".
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
int sign(const Rational& r);

/// Dense univariate polynomial with exact rational coefficients; index = degree.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, int degree);
  static RationalPolynomial identity();  // the variable itself

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const;
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& leading() const;

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  RationalPolynomial derivative() const;
  RationalPolynomial truncated(int max_degree) const;
  RationalPolynomial pow(int e) const;

  RationalPolynomial operator-() const;
  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& c);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
  friend RationalPolynomial operator*(const Rational& c, RationalPolynomial a) { return a *= c; }
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const RationalPolynomial& a, const RationalPolynomial& b) { return !(a == b); }

  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct Division {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};

// True rational long division; throws DomainError for a zero divisor.
Division divide(const RationalPolynomial& a, const RationalPolynomial& b);

// f0 = f, f1 = f', f_{i+1} = -rem(f_{i-1}, f_i) until the remainder vanishes.
// The vanishing remainder is appended only when include_terminal_zero is set.
std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& f, bool include_terminal_zero = false);

int sign_variations(const std::vector<Rational>& values);

class EndpointZero : public DomainError {
 public:
  EndpointZero(const std::string& which, const Rational& at);
  const std::string& endpoint() const { return which_; }

 private:
  std::string which_;
};

struct SturmCertificate {
  RationalPolynomial polynomial;
  Rational a, b;
  std::vector<RationalPolynomial> sequence;  // includes the terminal zero
  std::vector<Rational> values_a, values_b;
  int variations_a = 0;
  int variations_b = 0;
  int root_count = 0;
};

// Distinct real roots of f in (a, b). Requires f(a) != 0 and f(b) != 0.
SturmCertificate count_roots(const RationalPolynomial& f, const Rational& a, const Rational& b);

enum class Endpoint { A, B };

struct NonnegCertificate {
  bool ok = false;
  std::string method;  // "sturm", "constant", "deflated-sturm"
  Rational a, b;
  bool closed_a = true, closed_b = true;
  Endpoint positive_endpoint = Endpoint::A;
  Rational endpoint_value;
  int deflation_a = 0;  // multiplicity of the root removed at a
  int deflation_b = 0;
  SturmCertificate sturm;  // on the deflated polynomial when deflation happened
};

// p >= 0 on [a, b]: no roots in (a, b) and p(endpoint) > 0.
NonnegCertificate verify_nonneg(const RationalPolynomial& p, const Rational& a, const Rational& b, Endpoint positive_endpoint);

// p >= 0 on an interval whose endpoints may be open. A zero of p at an endpoint is divided
// out (with sign tracking) before the Sturm count; constants use a direct sign test.
NonnegCertificate certify_nonneg(const RationalPolynomial& p, const Rational& a, const Rational& b, bool closed_a,
                                 bool closed_b);

// ---- T polynomials ------------------------------------------------------

enum class Which { T1, T2 };
enum class Route { Coefficients, Symbolic };

// Closed-form coefficient tables t_{1,k}(n), t_{2,k}(n), 0 <= k <= 2n.
long t_coefficient(Which which, int n, int k);

struct ABCD {
  RationalPolynomial alpha, beta, gamma, delta;
};
// alpha = v^T v, beta = sum C_ij^2, gamma = (1^T v)^2, delta = w^T w with v = C1, w = C^T 1.
ABCD abcd_symbolic(int m);
// Closed-form coefficient tables for alpha, beta, gamma, delta.
ABCD abcd_tables(int m);
// Entry (i, j) (1-based) of the identity-order iteration matrix of the PI Hessian.
RationalPolynomial c_entry(int i, int j);

using CoefficientTable = std::function<long(Which, int, int)>;

// T_i(m, s) / (m(m-1)). The coefficient route reads `table` when one is supplied.
RationalPolynomial build_T(int m, Which which, Route route, const CoefficientTable& table = {});

// ---- inequality certificates --------------------------------------------

enum class Normalization {
  Single,    // T_i/(m(m-1)) as in the stated inequalities
  Reference  // replay of the reference check: cases 2-4 divide by m(m-1) twice
};

struct CaseCertificate {
  int case_id = 0;
  int m = 0;
  int n = 0;  // outer dimension for case 1, equal to m otherwise
  Which which = Which::T1;
  std::string interval;
  RationalPolynomial difference;
  NonnegCertificate certificate;
  bool precondition_violated = false;  // reference replay counted roots across an endpoint zero
  bool ok = false;
};

struct InequalityReport {
  Normalization normalization;
  std::vector<CaseCertificate> cases;
  // Coefficient-table polynomials agree with the symbolic route and vanish at s = 1.
  bool tables_consistent = false;
  std::vector<std::string> consistency_failures;
  bool all_ok = false;
};

// Certificates are built from the coefficient tables (`table` overrides them, which is how
// the mutation test injects a tampered coefficient).
InequalityReport verify_appendix_c(Normalization norm = Normalization::Single, const CoefficientTable& table = {});

// Reference-check replay of one difference polynomial: Sturm count over [a, b] without
// the endpoint precondition, plus a positivity test at the chosen endpoint.
bool reference_check(const RationalPolynomial& d, const Rational& a, const Rational& b, const Rational& end,
                     bool* precondition_violated = nullptr);

struct WorkedExample {
  RationalPolynomial p0;
  std::vector<RationalPolynomial> sequence;  // p0 … p7 including the terminal zero
  std::vector<Rational> values_06, values_1;
  std::vector<int> signs_06, signs_1;
  int v_06 = 0, v_1 = 0, roots = 0;
};

// The m = 3 T2 example on (3/5, 1): p0 = 1/4 - build_T(3, T2) / 6.
WorkedExample worked_example();

nlohmann::json to_json(const RationalPolynomial& p);
nlohmann::json to_json(const SturmCertificate& c);
nlohmann::json to_json(const NonnegCertificate& c);
nlohmann::json to_json(const CaseCertificate& c);
nlohmann::json to_json(const InequalityReport& r);

}  // namespace rpcd
