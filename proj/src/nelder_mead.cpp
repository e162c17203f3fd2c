#include "rpcd/nelder_mead.hpp"

#include <algorithm>
#include <numeric>

namespace rpcd {

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& opt) {
  const int d = static_cast<int>(x0.size());
  if (d < 1) throw DomainError("nelder_mead: empty start point");
  const long budget = opt.max_evals > 0 ? opt.max_evals : 2000L * d;
  const double dd = static_cast<double>(d);
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dd;
  const double rho = dd > 1 ? 0.75 - 1.0 / (2.0 * dd) : 0.5;
  const double shrink = dd > 1 ? 1.0 - 1.0 / dd : 0.5;

  NelderMeadResult res;
  auto eval = [&](const Vector& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<Vector> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1](i) += opt.initial_step;
  for (int i = 0; i <= d; ++i) vals[i] = eval(pts[i]);

  std::vector<int> idx(d + 1);
  auto order = [&]() {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Vector> p2;
    std::vector<double> v2;
    for (int i : idx) {
      p2.push_back(pts[i]);
      v2.push_back(vals[i]);
    }
    pts.swap(p2);
    vals.swap(v2);
  };
  auto diameter = [&]() {
    double m = 0;
    for (int i = 1; i <= d; ++i) m = std::max(m, (pts[i] - pts[0]).lpNorm<Eigen::Infinity>());
    return m;
  };

  order();
  while (res.evaluations < budget) {
    if (diameter() < opt.diameter_tol) {
      res.converged = true;
      break;
    }
    Vector c = Vector::Zero(d);
    for (int i = 0; i < d; ++i) c += pts[i];
    c /= dd;
    const Vector& worst = pts[d];
    Vector xr = c + alpha * (c - worst);
    double fr = eval(xr);
    if (fr < vals[0]) {
      Vector xe = c + gamma * (xr - c);
      double fe = eval(xe);
      if (fe < fr) {
        pts[d] = xe;
        vals[d] = fe;
      } else {
        pts[d] = xr;
        vals[d] = fr;
      }
    } else if (fr < vals[d - 1]) {
      pts[d] = xr;
      vals[d] = fr;
    } else {
      bool outside = fr < vals[d];
      Vector xc = outside ? Vector(c + rho * (xr - c)) : Vector(c + rho * (worst - c));
      double fc = eval(xc);
      if (fc <= (outside ? fr : vals[d])) {
        pts[d] = xc;
        vals[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          pts[i] = pts[0] + shrink * (pts[i] - pts[0]);
          vals[i] = eval(pts[i]);
        }
      }
    }
    order();
  }
  if (!res.converged && diameter() < opt.diameter_tol) res.converged = true;
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

}  // namespace rpcd
