#pragma once

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rpcd/common.hpp"
#include "rpcd/instances.hpp"

namespace rpcd {

struct StepStat {
  long step = 0;
  double mean = 1, min = 1, max = 1;
};

/// Per-step distance ratios ||x_k - x*|| / ||x_0 - x*|| over all runs.
struct TrajectoryStats {
  Algorithm algorithm = Algorithm::RCD;
  std::string axis = "iteration";  // "iteration" for RCD, "epoch" for RPCD/CCD
  int n = 0;
  std::vector<StepStat> per_step;
  long trials = 0;  // total runs = runs per initial point * initial points
  std::uint64_t seed_root = 0;
  // pooled standard error of the mean ratio at each step
  std::vector<double> std_error;
};

struct RunConfig {
  Algorithm algorithm = Algorithm::RCD;
  long steps = 1;  // iterations for RCD, epochs for RPCD/CCD
  int trials = 10;  // runs per initial point
  int init_points = 10;
  std::uint64_t seed = 0;
};

void validate(const RunConfig& cfg, bool allow_zero_steps = true);

Vector rcd_step(const Matrix& a, const Vector& x, int i);
// Sequential coordinate steps in the order p(0), p(1), …
Vector rpcd_epoch(const Matrix& a, const Vector& x, const Permutation& p);
// (I - P Gamma_P^{-1} P^T A) x
Vector rpcd_epoch_matrix(const Matrix& a, const Vector& x, const Permutation& p);

struct ScalarResult {
  double x = 0;
  int evaluations = 0;
};

// Bracketed Brent minimization of a strictly convex scalar function started near `hint`.
// When a derivative is supplied the minimizer is polished by a bracketed root solve of f'.
// At most `max_evals` evaluations; NumericalError beyond that.
ScalarResult coordinate_minimize_scalar(const std::function<double(double)>& f, double hint,
                                        const std::function<double(double)>& df = {}, int max_evals = 200);

// Minimizer of a strongly convex objective; zero for pure quadratics.
Vector solve_reference(const Objective& obj, double grad_tol = 1e-10, int max_iter = 10000);

// Repeated exact coordinate minimization with the identity order.
Vector ccd_fixed_point(const Objective& obj, const Vector& x0, long epochs);

// Initial point j of a run set, drawn from N(0, I).
Vector initial_point(std::uint64_t seed_root, int n, int init_index);

TrajectoryStats run_monte_carlo(const QuadraticInstance& a, const RunConfig& cfg);
TrajectoryStats run_monte_carlo(const Objective& obj, const Vector& x_star, const RunConfig& cfg);

std::string to_csv(const TrajectoryStats& s);
nlohmann::json to_json(const TrajectoryStats& s);

}  // namespace rpcd
