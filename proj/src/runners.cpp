#include "rpcd/runners.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <Eigen/Cholesky>

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"

namespace rpcd {

namespace {

constexpr std::uint64_t kTrialStream = 0x7121a1;
constexpr std::uint64_t kInitStream = 0x1417;

struct BudgetExceeded {};

}  // namespace

void validate(const RunConfig& cfg, bool allow_zero_steps) {
  if (cfg.steps < (allow_zero_steps ? 0 : 1)) throw DomainError("steps must be >= 1");
  if (cfg.trials < 1) throw DomainError("trials must be >= 1");
  if (cfg.init_points < 1) throw DomainError("init_points must be >= 1");
}

Vector rcd_step(const Matrix& a, const Vector& x, int i) {
  if (i < 0 || i >= a.rows()) throw DomainError("coordinate index out of range");
  if (x.size() != a.rows()) throw DomainError("vector dimension mismatch");
  Vector y = x;
  y(i) -= a.row(i).dot(x) / a(i, i);
  return y;
}

Vector rpcd_epoch(const Matrix& a, const Vector& x, const Permutation& p) {
  const int n = static_cast<int>(a.rows());
  if (!is_permutation(p, n)) throw DomainError("invalid permutation");
  if (x.size() != n) throw DomainError("vector dimension mismatch");
  Vector y = x;
  for (int i : p) y(i) -= a.row(i).dot(y) / a(i, i);
  return y;
}

Vector rpcd_epoch_matrix(const Matrix& a, const Vector& x, const Permutation& p) {
  if (x.size() != a.rows()) throw DomainError("vector dimension mismatch");
  return rpcd_iteration_matrix(a, p) * x;
}

ScalarResult coordinate_minimize_scalar(const std::function<double(double)>& f, double hint,
                                        const std::function<double(double)>& df, int max_evals) {
  int evals = 0;
  auto count = [&]() {
    if (++evals > max_evals) throw BudgetExceeded{};
  };
  auto fv = [&](double t) {
    count();
    return f(t);
  };
  try {
    if (df) {
      auto dv = [&](double t) {
        count();
        return df(t);
      };
      double d0 = dv(hint);
      if (d0 == 0.0) return {hint, evals};
      const double dir = d0 < 0 ? 1.0 : -1.0;
      double lo = hint, dlo = d0, h = 1.0, hi = hint + dir * h, dhi = dv(hi);
      while ((dhi < 0) == (d0 < 0) && dhi != 0.0) {
        lo = hi;
        dlo = dhi;
        h *= 2.0;
        hi = hint + dir * h;
        dhi = dv(hi);
      }
      if (dhi == 0.0) return {hi, evals};
      double a = std::min(lo, hi), b = std::max(lo, hi);
      double fa = a == lo ? dlo : dhi, fb = a == lo ? dhi : dlo;
      std::uintmax_t iters = static_cast<std::uintmax_t>(std::max(1, max_evals - evals));
      auto r = boost::math::tools::toms748_solve(dv, a, b, fa, fb,
                                                 boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2),
                                                 iters);
      return {0.5 * (r.first + r.second), evals};
    }
    // downhill expansion to a bracketing triple, then Brent
    constexpr double gold = 1.618033988749895;
    double a = hint, b = hint + 1.0;
    double fa = fv(a), fb = fv(b);
    if (fb > fa) {
      std::swap(a, b);
      std::swap(fa, fb);
    }
    double c = b + gold * (b - a), fc = fv(c);
    while (fc < fb) {
      a = b;
      fa = fb;
      b = c;
      fb = fc;
      c = b + gold * (b - a);
      fc = fv(c);
    }
    std::uintmax_t iters = static_cast<std::uintmax_t>(std::max(1, max_evals - evals));
    auto r = boost::math::tools::brent_find_minima(fv, std::min(a, c), std::max(a, c),
                                                   std::numeric_limits<double>::digits / 2, iters);
    return {r.first, evals};
  } catch (const BudgetExceeded&) {
    throw NumericalError("coordinate_minimize_scalar: evaluation budget exhausted");
  }
}

namespace {

// One exact coordinate minimization on coordinate i, keeping aux consistent.
void coordinate_update(const Objective& obj, Vector& x, Vector& aux, int i) {
  if (obj.is_quadratic()) {
    const Matrix& h = obj.quadratic_part();
    obj.commit(x, aux, i, x(i) - aux(i) / h(i, i));
    return;
  }
  auto f = [&](double t) { return obj.restricted_value(x, aux, i, t); };
  auto df = [&](double t) { return obj.restricted_derivative(x, aux, i, t); };
  ScalarResult r = coordinate_minimize_scalar(f, x(i), df);
  obj.commit(x, aux, i, r.x);
}

}  // namespace

Vector solve_reference(const Objective& obj, double grad_tol, int max_iter) {
  const int n = obj.dim();
  Vector x = Vector::Zero(n);
  if (obj.is_quadratic()) return x;
  Vector g = obj.gradient(x);
  for (int it = 0; it < max_iter; ++it) {
    double gn = g.norm();
    if (gn < grad_tol) return x;
    Matrix h = obj.hessian(x);
    Eigen::LLT<Matrix> llt(h);
    if (llt.info() != Eigen::Success) throw NumericalError("solve_reference: Hessian not positive definite");
    Vector p = -llt.solve(g);
    double fx = obj.value(x);
    double t = 1.0;
    Vector xn, gn_vec;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + t * p;
      double fn = obj.value(xn);
      gn_vec = obj.gradient(xn);
      if (fn <= fx + 1e-4 * t * g.dot(p) || gn_vec.norm() < gn) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    x = xn;
    g = gn_vec;
  }
  if (g.norm() < grad_tol) return x;
  std::ostringstream os;
  os << "solve_reference: no convergence (gradient norm " << g.norm() << ")";
  throw NumericalError(os.str());
}

Vector ccd_fixed_point(const Objective& obj, const Vector& x0, long epochs) {
  Vector x = x0;
  Vector aux = obj.aux(x);
  for (long e = 0; e < epochs; ++e) {
    for (int i = 0; i < obj.dim(); ++i) coordinate_update(obj, x, aux, i);
    aux = obj.aux(x);
  }
  return x;
}

Vector initial_point(std::uint64_t seed_root, int n, int init_index) {
  Rng rng(derive_seed(derive_seed(seed_root, kInitStream), static_cast<std::uint64_t>(init_index)));
  return standard_normal(rng, n);
}

TrajectoryStats run_monte_carlo(const QuadraticInstance& a, const RunConfig& cfg) {
  Objective obj(a.hessian, Objective::Term::None, Matrix(), Vector(), 0.0);
  return run_monte_carlo(obj, Vector::Zero(a.n), cfg);
}

TrajectoryStats run_monte_carlo(const Objective& obj, const Vector& x_star, const RunConfig& cfg) {
  validate(cfg);
  const int n = obj.dim();
  if (x_star.size() != n) throw DomainError("x_star dimension mismatch");
  TrajectoryStats st;
  st.algorithm = cfg.algorithm;
  st.axis = cfg.algorithm == Algorithm::RCD ? "iteration" : "epoch";
  st.n = n;
  st.trials = static_cast<long>(cfg.trials) * cfg.init_points;
  st.seed_root = cfg.seed;
  const long steps = cfg.steps;
  std::vector<double> sum(steps + 1, 0.0), sumsq(steps + 1, 0.0);
  std::vector<double> mn(steps + 1, std::numeric_limits<double>::infinity()), mx(steps + 1, 0.0);
  std::vector<Vector> inits;
  for (int j = 0; j < cfg.init_points; ++j) inits.push_back(initial_point(cfg.seed, n, j));
  const std::uint64_t trial_root = derive_seed(cfg.seed, kTrialStream);

  Permutation ident(n);
  for (int i = 0; i < n; ++i) ident[i] = i;

  // trial-major reduction order
  for (int t = 0; t < cfg.trials; ++t) {
    for (int j = 0; j < cfg.init_points; ++j) {
      Rng rng(derive_seed(trial_root, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j)));
      std::uniform_int_distribution<int> pick(0, n - 1);
      Vector x = inits[j];
      Vector aux = obj.aux(x);
      const double d0 = (x - x_star).norm();
      auto record = [&](long k) {
        double r = d0 > 0 ? (x - x_star).norm() / d0 : 0.0;
        sum[k] += r;
        sumsq[k] += r * r;
        mn[k] = std::min(mn[k], r);
        mx[k] = std::max(mx[k], r);
      };
      record(0);
      for (long k = 1; k <= steps; ++k) {
        if (cfg.algorithm == Algorithm::RCD) {
          coordinate_update(obj, x, aux, pick(rng));
          if (k % n == 0) aux = obj.aux(x);
        } else {
          const Permutation p = cfg.algorithm == Algorithm::RPCD ? random_permutation(rng, n) : ident;
          for (int i : p) coordinate_update(obj, x, aux, i);
          aux = obj.aux(x);
        }
        record(k);
      }
    }
  }
  const double N = static_cast<double>(st.trials);
  for (long k = 0; k <= steps; ++k) {
    StepStat s;
    s.step = k;
    s.mean = sum[k] / N;
    s.min = mn[k];
    s.max = mx[k];
    st.per_step.push_back(s);
    double var = N > 1 ? std::max(0.0, (sumsq[k] - N * s.mean * s.mean) / (N - 1)) : 0.0;
    st.std_error.push_back(std::sqrt(var / N));
  }
  st.per_step[0].mean = st.per_step[0].min = st.per_step[0].max = 1.0;
  return st;
}

std::string to_csv(const TrajectoryStats& s) {
  std::string out = "step,mean,min,max\n";
  char buf[128];
  for (const auto& r : s.per_step) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", r.step, r.mean, r.min, r.max);
    out += buf;
  }
  return out;
}

nlohmann::json to_json(const TrajectoryStats& s) {
  nlohmann::json steps = nlohmann::json::array();
  for (size_t k = 0; k < s.per_step.size(); ++k) {
    const auto& r = s.per_step[k];
    steps.push_back({{"step", r.step}, {"mean", r.mean}, {"min", r.min}, {"max", r.max}, {"std_error", s.std_error[k]}});
  }
  return {{"algorithm", to_string(s.algorithm)},
          {"axis", s.axis},
          {"n", s.n},
          {"trials", s.trials},
          {"seed_root", s.seed_root},
          {"per_step", steps}};
}

}  // namespace rpcd
