#include "rpcd/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rpcd {

Rational make_rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw DomainError("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational r(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    if (r.get_den() == 0) throw DomainError("zero denominator in " + text);
    r.canonicalize();
    return r;
  }
  std::string mant = s;
  long exp10 = 0;
  auto e = s.find_first_of("eE");
  if (e != std::string::npos) {
    mant = s.substr(0, e);
    exp10 = std::stol(s.substr(e + 1));
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant = mant.substr(1);
  }
  std::string digits;
  long frac = 0;
  bool dot = false;
  for (char ch : mant) {
    if (ch == '.') {
      if (dot) throw DomainError("bad rational literal: " + text);
      dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (dot) ++frac;
    } else {
      throw DomainError("bad rational literal: " + text);
    }
  }
  if (digits.empty()) throw DomainError("bad rational literal: " + text);
  mpz_class num(digits);
  mpz_class den = 1;
  long shift = exp10 - frac;
  mpz_class ten = 10;
  mpz_class p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift < 0)
    den = p;
  else
    num *= p;
  Rational r(neg ? -num : num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

int sign(const Rational& r) { return sgn(r); }

// ---- RationalPolynomial ---------------------------------------------------

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void RationalPolynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::monomial(const Rational& c, int degree) {
  if (degree < 0) throw DomainError("negative monomial degree");
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::identity() { return monomial(Rational(1), 1); }

Rational RationalPolynomial::coeff(int k) const {
  if (k < 0 || k > degree()) return Rational(0);
  return c_[k];
}

const Rational& RationalPolynomial::leading() const {
  if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
  return c_.back();
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double RationalPolynomial::evaluate(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<Rational> d(degree());
  for (int k = 1; k <= degree(); ++k) d[k - 1] = c_[k] * k;
  return RationalPolynomial(std::move(d));
}

RationalPolynomial RationalPolynomial::truncated(int max_degree) const {
  std::vector<Rational> v(c_.begin(), c_.begin() + std::min<int>(c_.size(), max_degree + 1));
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  RationalPolynomial out = constant(1), base = *this;
  while (e > 0) {
    if (e & 1) out *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return out;
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& c) {
  for (auto& x : c_) x *= c;
  trim();
  return *this;
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[k];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    bool unit = a == 1;
    if (!unit || k == 0) os << a.get_str();
    if (k >= 1) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
    first = false;
  }
  return os.str();
}

Division divide(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.coefficients();
  const int db = b.degree();
  const Rational& lb = b.leading();
  if (a.degree() < db) return {RationalPolynomial(), a};
  std::vector<Rational> q(a.degree() - db + 1, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    if (sgn(r[k]) == 0) continue;
    Rational t = r[k] / lb;
    q[k - db] = t;
    for (int j = 0; j <= db; ++j) r[k - db + j] -= t * b.coefficients()[j];
  }
  r.resize(db);
  return {RationalPolynomial(std::move(q)), RationalPolynomial(std::move(r))};
}

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& f, bool include_terminal_zero) {
  std::vector<RationalPolynomial> seq{f};
  if (f.degree() < 1) {
    if (include_terminal_zero) seq.emplace_back();
    return seq;
  }
  seq.push_back(f.derivative());
  while (true) {
    const auto& prev = seq[seq.size() - 2];
    const auto& cur = seq.back();
    RationalPolynomial next = -divide(prev, cur).remainder;
    if (next.is_zero()) {
      if (include_terminal_zero) seq.push_back(next);
      break;
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

int sign_variations(const std::vector<Rational>& values) {
  int last = 0, count = 0;
  for (const auto& v : values) {
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

EndpointZero::EndpointZero(const std::string& which, const Rational& at)
    : DomainError("polynomial vanishes at endpoint " + which + " = " + at.get_str()), which_(which) {}

SturmCertificate count_roots(const RationalPolynomial& f, const Rational& a, const Rational& b) {
  if (!(a < b)) throw DomainError("count_roots needs a < b");
  if (sgn(f.evaluate(a)) == 0) throw EndpointZero("a", a);
  if (sgn(f.evaluate(b)) == 0) throw EndpointZero("b", b);
  SturmCertificate c;
  c.polynomial = f;
  c.a = a;
  c.b = b;
  c.sequence = sturm_sequence(f, true);
  for (const auto& p : c.sequence) {
    c.values_a.push_back(p.evaluate(a));
    c.values_b.push_back(p.evaluate(b));
  }
  c.variations_a = sign_variations(c.values_a);
  c.variations_b = sign_variations(c.values_b);
  c.root_count = c.variations_a - c.variations_b;
  return c;
}

NonnegCertificate verify_nonneg(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                Endpoint positive_endpoint) {
  NonnegCertificate c;
  c.a = a;
  c.b = b;
  c.positive_endpoint = positive_endpoint;
  c.endpoint_value = p.evaluate(positive_endpoint == Endpoint::A ? a : b);
  if (p.degree() <= 0) {
    c.method = "constant";
    c.ok = sgn(c.endpoint_value) > 0;
    return c;
  }
  c.method = "sturm";
  c.sturm = count_roots(p, a, b);
  c.ok = c.sturm.root_count == 0 && sgn(c.endpoint_value) > 0;
  return c;
}

NonnegCertificate certify_nonneg(const RationalPolynomial& p, const Rational& a, const Rational& b, bool closed_a,
                                 bool closed_b) {
  if (!(a < b)) throw DomainError("certify_nonneg needs a < b");
  NonnegCertificate c;
  c.a = a;
  c.b = b;
  c.closed_a = closed_a;
  c.closed_b = closed_b;
  c.positive_endpoint = closed_b && !closed_a ? Endpoint::B : Endpoint::A;
  if (p.degree() <= 0) {
    c.method = "constant";
    c.endpoint_value = p.coeff(0);
    c.ok = sgn(c.endpoint_value) >= 0;
    return c;
  }
  // p = (s - a)^ra (s - b)^rb q with q(a), q(b) != 0; on (a, b) sign p = (-1)^rb sign q.
  const RationalPolynomial lin_a = RationalPolynomial::identity() - RationalPolynomial::constant(a);
  const RationalPolynomial lin_b = RationalPolynomial::identity() - RationalPolynomial::constant(b);
  RationalPolynomial q = p;
  while (q.degree() >= 1 && sgn(q.evaluate(a)) == 0) {
    q = divide(q, lin_a).quotient;
    ++c.deflation_a;
  }
  while (q.degree() >= 1 && sgn(q.evaluate(b)) == 0) {
    q = divide(q, lin_b).quotient;
    ++c.deflation_b;
  }
  const int parity = (c.deflation_b % 2 == 0) ? 1 : -1;
  const Rational& at = c.positive_endpoint == Endpoint::A ? a : b;
  c.endpoint_value = parity * q.evaluate(at);
  bool deflated = c.deflation_a + c.deflation_b > 0;
  if (q.degree() <= 0) {
    c.method = deflated ? "deflated-constant" : "constant";
    c.ok = sgn(c.endpoint_value) > 0;
    return c;
  }
  c.method = deflated ? "deflated-sturm" : "sturm";
  c.sturm = count_roots(q, a, b);
  c.ok = c.sturm.root_count == 0 && sgn(c.endpoint_value) > 0;
  return c;
}

// ---- T polynomials --------------------------------------------------------

long t_coefficient(Which which, int n, int k) {
  if (n < 2 || k < 0 || k > 2 * n) throw DomainError("t_coefficient index out of range");
  const long N = n, K = k;
  const bool odd = k % 2 == 1;
  if (which == Which::T1) {
    if (k == 0) return N * N - N;
    if (k <= n) return odd ? (N - 1) * K - 2 * N * N - N + 3 : -(N + 1) * K + 2 * N * N + 2 * N + 2;
    return odd ? (N + 1) * K - 2 * N * N - 3 * N - 1 : -(N - 1) * K + 2 * N * N - 2;
  }
  if (k == 0) return N * N - 3 * N + 2;
  if (k <= n - 1) return odd ? -2 * N * N + 6 * N - 4 : 2 * K + 2 * N * N - 6 * N - 2;
  if (k == n) return (n % 2 == 1) ? -2 * N * N + 8 * N - 6 : 2 * N * N - 2 * N - 4;
  return odd ? -2 * K - 2 * N * N + 6 * N + 2 : 2 * N * N - 6 * N + 4;
}

RationalPolynomial c_entry(int i, int j) {
  const RationalPolynomial one = RationalPolynomial::constant(1);
  const RationalPolynomial s = RationalPolynomial::identity();
  const RationalPolynomial one_minus = one - s;
  if (i < j) return -(one_minus * s.pow(i - 1));
  return one_minus * (s.pow(i - j) - s.pow(i - 1));
}

ABCD abcd_symbolic(int m) {
  if (m < 2) throw DomainError("m must be at least 2");
  std::vector<RationalPolynomial> c(m * m);
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j) c[(i - 1) * m + (j - 1)] = c_entry(i, j);
  std::vector<RationalPolynomial> v(m), w(m);
  ABCD r;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const auto& e = c[i * m + j];
      v[i] += e;
      w[j] += e;
      r.beta += e * e;
    }
  RationalPolynomial sum_v;
  for (int i = 0; i < m; ++i) {
    r.alpha += v[i] * v[i];
    r.delta += w[i] * w[i];
    sum_v += v[i];
  }
  r.gamma = sum_v * sum_v;
  return r;
}

ABCD abcd_tables(int m) {
  if (m < 2) throw DomainError("m must be at least 2");
  const long n = m;
  std::vector<Rational> a(2 * m + 1), b(2 * m + 1), c(2 * m + 1), d(2 * m + 1);
  for (int k = 0; k <= 2 * m; ++k) {
    const bool odd = k % 2 == 1;
    const bool n_odd = m % 2 == 1;
    long ak, bk, ck, dk;
    if (k == 0) ak = n * n - n;
    else if (k <= m - 1) ak = odd ? -2 * n * n + 2 * n - 2 : 2 * n * n - 2 * n - 1;
    else if (k == m) ak = n_odd ? -2 * (n - 1) * (n - 1) : 2 * n * n - 1;
    else if (k <= 2 * m - 1) ak = odd ? -2 * n * (n - 1) : 2 * n * n - 2 * n + 1;
    else ak = (n - 1) * (n - 1);

    if (k == 0) bk = 2 * n - 2;
    else if (k == m) bk = n_odd ? -3 * n + 3 : 3 * n + 1;
    else if (k == 2 * m) bk = n - 1;
    else bk = (odd ? -1 : 1) * (4 * n - 1 - k);

    if (k == 0) ck = 0;
    else if (k <= m) ck = k - 1;
    else if (k <= 2 * m - 1) ck = 1 - k;
    else ck = (n - 1) * (n - 1);

    if (k == 0) dk = 0;
    else if (k <= m) dk = odd ? 0 : 1;
    else if (k <= 2 * m - 1) dk = odd ? -2 : -1;
    else dk = n - 1;
    a[k] = ak;
    b[k] = bk;
    c[k] = ck;
    d[k] = dk;
  }
  return {RationalPolynomial(a), RationalPolynomial(b), RationalPolynomial(c), RationalPolynomial(d)};
}

RationalPolynomial build_T(int m, Which which, Route route, const CoefficientTable& table) {
  if (m < 2) throw DomainError("m must be at least 2");
  const Rational norm(1, static_cast<long>(m) * (m - 1));
  if (route == Route::Coefficients) {
    std::vector<Rational> c(2 * m + 1);
    for (int k = 0; k <= 2 * m; ++k)
      c[k] = Rational(table ? table(which, m, k) : t_coefficient(which, m, k)) * norm;
    return RationalPolynomial(std::move(c));
  }
  ABCD q = abcd_symbolic(m);
  RationalPolynomial t = which == Which::T1 ? Rational(m) * (q.beta + q.delta) - (q.alpha + q.gamma)
                                            : (q.alpha + q.gamma) - (q.beta + q.delta);
  return t * norm;
}

// ---- inequality certificates ----------------------------------------------

bool reference_check(const RationalPolynomial& d, const Rational& a, const Rational& b, const Rational& end,
                     bool* precondition_violated) {
  if (precondition_violated) *precondition_violated = sgn(d.evaluate(a)) == 0 || sgn(d.evaluate(b)) == 0;
  auto seq = sturm_sequence(d, true);
  std::vector<Rational> va, vb;
  for (const auto& p : seq) {
    va.push_back(p.evaluate(a));
    vb.push_back(p.evaluate(b));
  }
  int roots = sign_variations(va) - sign_variations(vb);
  return roots == 0 && sgn(d.evaluate(end)) > 0;
}

InequalityReport verify_appendix_c(Normalization norm, const CoefficientTable& table) {
  InequalityReport rep;
  rep.normalization = norm;
  const Rational quarter(1, 4);
  const Rational r0(0), r35(3, 5), r45(4, 5), r1(1);
  const RationalPolynomial s = RationalPolynomial::identity();
  const RationalPolynomial one = RationalPolynomial::constant(1);

  // T polynomials are cached: case 1 reuses m up to 6, cases 2-4 up to 14.
  std::vector<RationalPolynomial> t1(15), t2(15);
  for (int m = 2; m <= 14; ++m) {
    t1[m] = build_T(m, Which::T1, Route::Coefficients, table);
    t2[m] = build_T(m, Which::T2, Route::Coefficients, table);
    for (Which w : {Which::T1, Which::T2}) {
      const auto& t = w == Which::T1 ? t1[m] : t2[m];
      std::string tag = std::string(w == Which::T1 ? "T1" : "T2") + "(m=" + std::to_string(m) + ")";
      if (t != build_T(m, w, Route::Symbolic)) rep.consistency_failures.push_back(tag + ": table differs from symbolic route");
      if (sgn(t.evaluate(r1)) != 0) rep.consistency_failures.push_back(tag + ": nonzero at s = 1");
    }
  }
  rep.tables_consistent = rep.consistency_failures.empty();
  auto lhs = [&](int m, Which w, bool twice) {
    RationalPolynomial t = w == Which::T1 ? t1[m] : t2[m];
    if (twice) t *= Rational(1, static_cast<long>(m) * (m - 1));
    return t;
  };

  auto add = [&](int id, int m, int n, Which w, const std::string& interval, RationalPolynomial d,
                 const Rational& a, const Rational& b, bool ca, bool cb, const Rational& ref_a,
                 const Rational& ref_b, const Rational& ref_end) {
    CaseCertificate cc;
    cc.case_id = id;
    cc.m = m;
    cc.n = n;
    cc.which = w;
    cc.difference = d;
    if (norm == Normalization::Single) {
      cc.interval = interval;
      cc.certificate = certify_nonneg(d, a, b, ca, cb);
      cc.ok = cc.certificate.ok;
    } else {
      cc.interval = "[" + ref_a.get_str() + ", " + ref_b.get_str() + "] end " + ref_end.get_str();
      cc.certificate.method = "reference";
      cc.certificate.a = ref_a;
      cc.certificate.b = ref_b;
      cc.certificate.endpoint_value = d.evaluate(ref_end);
      cc.ok = reference_check(d, ref_a, ref_b, ref_end, &cc.precondition_violated);
      cc.certificate.ok = cc.ok;
    }
    rep.cases.push_back(std::move(cc));
  };

  const bool twice = norm == Normalization::Reference;
  for (int n = 2; n <= 6; ++n) {
    RationalPolynomial rcd = (one - s * Rational(1, n)).pow(2 * n);
    for (int m = 2; m <= n; ++m)
      for (Which w : {Which::T1, Which::T2})
        add(1, m, n, w, "(0, 3/5]", rcd - lhs(m, w, false), r0, r35, false, true, r0, r1, r1);
  }
  for (int m = 2; m <= 10; ++m)
    add(2, m, m, Which::T1, "[3/5, 4/5]", one * quarter - lhs(m, Which::T1, twice), r35, r45, true, true, r35, r45,
        r45);
  for (int m = 2; m <= 14; ++m)
    add(3, m, m, Which::T1, "[4/5, 1)", one * quarter - lhs(m, Which::T1, twice), r45, r1, true, false, r45, r1, r1);
  for (int m = 2; m <= 10; ++m)
    add(4, m, m, Which::T2, "[3/5, 1)", one * quarter - lhs(m, Which::T2, twice), r35, r1, true, false, r35, r1, r1);

  rep.all_ok = rep.tables_consistent &&
               std::all_of(rep.cases.begin(), rep.cases.end(), [](const CaseCertificate& c) { return c.ok; });
  return rep;
}

WorkedExample worked_example() {
  WorkedExample ex;
  RationalPolynomial t2 = build_T(3, Which::T2, Route::Coefficients);
  ex.p0 = RationalPolynomial::constant(Rational(1, 4)) - t2 * Rational(1, 6);
  ex.sequence = sturm_sequence(ex.p0, true);
  const Rational a(3, 5), b(1);
  for (const auto& p : ex.sequence) {
    ex.values_06.push_back(p.evaluate(a));
    ex.values_1.push_back(p.evaluate(b));
    ex.signs_06.push_back(sgn(ex.values_06.back()));
    ex.signs_1.push_back(sgn(ex.values_1.back()));
  }
  ex.v_06 = sign_variations(ex.values_06);
  ex.v_1 = sign_variations(ex.values_1);
  ex.roots = ex.v_06 - ex.v_1;
  return ex;
}

// ---- JSON -----------------------------------------------------------------

nlohmann::json to_json(const RationalPolynomial& p) {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& x : p.coefficients()) c.push_back(x.get_str());
  return {{"coefficients", c}, {"text", p.to_string()}};
}

namespace {
nlohmann::json rationals(const std::vector<Rational>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}
}  // namespace

nlohmann::json to_json(const SturmCertificate& c) {
  nlohmann::json seq = nlohmann::json::array();
  for (const auto& p : c.sequence) seq.push_back(to_json(p));
  return {{"polynomial", to_json(c.polynomial)},
          {"a", c.a.get_str()},
          {"b", c.b.get_str()},
          {"sequence", seq},
          {"values_a", rationals(c.values_a)},
          {"values_b", rationals(c.values_b)},
          {"variations_a", c.variations_a},
          {"variations_b", c.variations_b},
          {"root_count", c.root_count}};
}

nlohmann::json to_json(const NonnegCertificate& c) {
  nlohmann::json j = {{"ok", c.ok},
                      {"method", c.method},
                      {"a", c.a.get_str()},
                      {"b", c.b.get_str()},
                      {"closed_a", c.closed_a},
                      {"closed_b", c.closed_b},
                      {"positive_endpoint", c.positive_endpoint == Endpoint::A ? "a" : "b"},
                      {"endpoint_value", c.endpoint_value.get_str()},
                      {"deflation_a", c.deflation_a},
                      {"deflation_b", c.deflation_b}};
  if (c.method == "sturm" || c.method == "deflated-sturm") j["sturm"] = to_json(c.sturm);
  return j;
}

nlohmann::json to_json(const CaseCertificate& c) {
  return {{"case", c.case_id},
          {"m", c.m},
          {"n", c.n},
          {"which", c.which == Which::T1 ? "T1" : "T2"},
          {"interval", c.interval},
          {"difference", to_json(c.difference)},
          {"certificate", to_json(c.certificate)},
          {"precondition_violated", c.precondition_violated},
          {"ok", c.ok}};
}

nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  return {{"normalization", r.normalization == Normalization::Single ? "single" : "reference"},
          {"all_ok", r.all_ok},
          {"tables_consistent", r.tables_consistent},
          {"consistency_failures", r.consistency_failures},
          {"cases", cases}};
}

}  // namespace rpcd
