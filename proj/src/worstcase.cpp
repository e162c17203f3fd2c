#include "rpcd/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "rpcd/bounds.hpp"
#include "rpcd/nelder_mead.hpp"
#include "rpcd/operators.hpp"
#include "rpcd/rng.hpp"

namespace rpcd {

namespace {
constexpr std::uint64_t kRestartStream = 0x5ea;
constexpr std::uint64_t kProbeStream = 0x9b0;
constexpr double kRejected = 1.0;  // objective is -rho in [-1, 0]
}  // namespace

int packed_size(int n) { return n * (n + 1) / 2; }

QuadraticInstance x_to_a(const Vector& x, int n, double sigma) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (x.size() != packed_size(n)) throw DomainError("packed vector has wrong length");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  Matrix l = Matrix::Zero(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) l(i, j) = x(p++);
  Matrix y = l.transpose() * l;
  for (int i = 0; i < n; ++i)
    if (!(y(i, i) > 0.0)) throw DomainError("x_to_a: zero diagonal after unpacking");
  Matrix z = unit_diagonal(y);
  QuadraticInstance a;
  a.n = n;
  a.hessian = set_min_eigenvalue(z, sigma);
  a.sigma = sigma;
  a.kind = "search";
  return a;
}

FamilyMatch nearest_family_member(const Matrix& a, double sigma) {
  const int n = static_cast<int>(a.rows());
  for (int i = 0; i < n; ++i)
    if (std::abs(a(i, i) - 1.0) > 1e-9) throw DomainError("nearest_family_member: diagonal is not unit");
  std::vector<double> mag(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) mag[i] = std::max(mag[i], std::abs(a(i, j)));
  const double cut = (1.0 - sigma) / 2.0;
  FamilyMatch m;
  m.relabel.resize(n);
  std::iota(m.relabel.begin(), m.relabel.end(), 0);
  std::stable_sort(m.relabel.begin(), m.relabel.end(), [&](int i, int j) { return mag[i] > mag[j]; });
  std::vector<bool> in_block(n, false);
  for (int i = 0; i < n; ++i)
    if (mag[i] > cut) {
      in_block[i] = true;
      ++m.k;
    }
  m.v.assign(n, 1);
  if (m.k > 0) {
    int anchor = -1;
    for (int i = 0; i < n && anchor < 0; ++i)
      if (in_block[i]) anchor = i;
    for (int j = 0; j < n; ++j) {
      if (!in_block[j] || j == anchor) continue;
      double e = a(anchor, j);
      if (std::abs(e) < 1e-6) m.ambiguous = true;
      m.v[j] = e < 0 ? -1 : 1;
    }
  }
  Matrix ref = Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && in_block[i] && in_block[j]) ref(i, j) = (1.0 - sigma) * m.v[i] * m.v[j];
  m.residual = (a - ref).norm();
  if (m.k == 0) m.k = 1;  // identity is the one-element block
  return m;
}

namespace {

double neg_rho(const Vector& x, int n, double sigma) {
  try {
    QuadraticInstance a = x_to_a(x, n, sigma);
    return -spectral_radius(rpcd_operator_matrix(a.hessian).m);
  } catch (const NumericalError&) {
    return kRejected;
  } catch (const DomainError&) {
    return kRejected;
  }
}

}  // namespace

SearchResult search(int n, double sigma, std::uint64_t seed, int restarts) {
  if (n < 3 || n > 6) throw DomainError("search: n must lie in [3, 6]");
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("sigma must lie in (0, 1]");
  if (restarts < 1) throw DomainError("restarts must be >= 1");
  const int d = packed_size(n);
  auto f = [&](const Vector& x) { return neg_rho(x, n, sigma); };

  SearchResult r;
  r.n = n;
  r.sigma = sigma;
  r.seed = seed;
  r.restarts = restarts;
  Vector best;
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = 0; k < restarts; ++k) {
    Rng rng(derive_seed(seed, kRestartStream, static_cast<std::uint64_t>(k)));
    Vector x0 = standard_normal(rng, d);
    NelderMeadResult a = nelder_mead(f, x0);
    // polish: fresh simplex around the incumbent, scaled to it
    NelderMeadOptions po;
    po.initial_step = 1e-2 * std::max(1.0, a.x.lpNorm<Eigen::Infinity>());
    NelderMeadResult b = nelder_mead(f, a.x, po);
    r.evaluations += a.evaluations + b.evaluations;
    const NelderMeadResult& w = b.value <= a.value ? b : a;
    if (w.value >= kRejected) {
      ++r.rejected_restarts;
      continue;
    }
    if (w.value < best_val) {
      best_val = w.value;
      best = w.x;
    }
  }
  if (best.size() == 0) throw NumericalError("search: every restart was rejected");
  r.matrix = x_to_a(best, n, sigma).hessian;
  r.rho = -best_val;
  r.nearest = nearest_family_member(r.matrix, sigma);
  r.family_max = family_max_rho(n, sigma);
  r.rpcd_ub = rpcd_upper_bound(n, sigma);
  r.conjecture_ok = r.rho <= r.family_max + 1e-8;
  return r;
}

double random_probe_max(int n, double sigma, int count, std::uint64_t seed) {
  double m = 0;
  const int d = packed_size(n);
  for (int k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, kProbeStream, static_cast<std::uint64_t>(k)));
    double v = neg_rho(standard_normal(rng, d), n, sigma);
    if (v < kRejected) m = std::max(m, -v);
  }
  return m;
}

std::vector<ScanRow> conjecture_scan(const std::vector<int>& n_list, const std::vector<double>& sigma_grid,
                                     const std::vector<std::uint64_t>& seeds, int restarts) {
  std::vector<ScanRow> rows;
  for (int n : n_list) {
    if (n > 6) throw DomainError("conjecture_scan: n must be <= 6");
    for (double s : sigma_grid) {
      for (std::uint64_t sd : seeds) {
        ScanRow row;
        row.n = n;
        row.sigma = s;
        row.seed = sd;
        row.family_max = family_max_rho(n, s);
        row.rpcd_ub = rpcd_upper_bound(n, s);
        if (s == 1.0) {
          row.rho = 0.0;  // A = I is the only admissible instance
          row.k = 1;
        } else {
          SearchResult r = search(n, s, sd, restarts);
          row.rho = r.rho;
          row.residual = r.nearest.residual;
          row.k = r.nearest.k;
        }
        row.search_ok = row.rho <= row.family_max + 1e-8;
        row.bound_ok = row.family_max <= row.rpcd_ub + 1e-10;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "n,sigma,seed,rho,family_max,rpcd_ub,residual,k,search_ok,bound_ok\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%llu,%.17g,%.17g,%.17g,%.6g,%d,%d,%d\n", r.n, r.sigma,
                  static_cast<unsigned long long>(r.seed), r.rho, r.family_max, r.rpcd_ub, r.residual, r.k,
                  r.search_ok ? 1 : 0, r.bound_ok ? 1 : 0);
    out += buf;
  }
  return out;
}

nlohmann::json to_json(const FamilyMatch& m) {
  return {{"k", m.k}, {"v", m.v}, {"residual", m.residual}, {"ambiguous", m.ambiguous}, {"relabel", m.relabel}};
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < r.matrix.rows(); ++i) {
    std::vector<double> row(r.matrix.cols());
    for (int j = 0; j < r.matrix.cols(); ++j) row[j] = r.matrix(i, j);
    rows.push_back(row);
  }
  return {{"n", r.n},
          {"sigma", r.sigma},
          {"seed", r.seed},
          {"restarts", r.restarts},
          {"rejected_restarts", r.rejected_restarts},
          {"rho", r.rho},
          {"family_max", r.family_max},
          {"rpcd_ub", r.rpcd_ub},
          {"conjecture_ok", r.conjecture_ok},
          {"nearest", to_json(r.nearest)},
          {"evaluations", r.evaluations},
          {"optimizer", r.optimizer},
          {"matrix", rows}};
}

}  // namespace rpcd
