#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpcd/instances.hpp"
#include "rpcd/runners.hpp"

namespace rpcd {

// One RCD-vs-RPCD comparison; RCD counts iterations, RPCD counts epochs.
struct Setting {
  std::string id;
  ObjectiveSpec spec;
  long rcd_iterations = 0;
  long rpcd_epochs = 0;
  int trials = 10;
  int init_points = 10;
  std::uint64_t seed = 0;
};

enum class NormMode { None, ExactPI, Sampled };

struct RhoCurveConfig {
  int n = 40;
  std::vector<double> sigma_grid;
  NormMode norm = NormMode::None;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct ExperimentPreset {
  std::string id;
  std::string kind;  // "run", "rho-curves", "verify-sturm", "verify-nonasymptotic"
  std::vector<Setting> settings;
  RhoCurveConfig rho;
  std::vector<std::pair<int, double>> cells;  // nonasymptotic (n, sigma) cells
};

std::vector<std::string> preset_ids();
ExperimentPreset preset(const std::string& id);  // DomainError on unknown id

// sigma = step, 2 step, ..., up to and including `last`, as rounded decimals.
std::vector<double> sigma_grid(double step, double last);

struct SettingResult {
  Setting setting;
  TrajectoryStats rcd, rpcd;
  int n = 0;
};

SettingResult run_setting(const Setting& s);

struct RhoRow {
  double sigma = 0;
  double rho_n = 0;
  double rho_max_k = 0;
  double rpcd_ub = 0;
  double rcd_lb_pi_pow_n = 0;
  double norm_bound = 0;
  double norm_se = 0;
};

std::vector<RhoRow> rho_curves(const RhoCurveConfig& cfg);
std::string to_csv(const std::vector<RhoRow>& rows, NormMode norm);

}  // namespace rpcd
