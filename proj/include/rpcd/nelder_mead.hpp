#pragma once

#include <functional>

#include "rpcd/common.hpp"

namespace rpcd {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double diameter_tol = 1e-10;
  long max_evals = 0;  // 0 means 2000 * dim
};

struct NelderMeadResult {
  Vector x;
  double value = 0;
  long evaluations = 0;
  bool converged = false;  // diameter criterion met
};

// Minimizes f with the adaptive-parameter Nelder-Mead simplex (Gao-Han coefficients).
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& opt = {});

}  // namespace rpcd
