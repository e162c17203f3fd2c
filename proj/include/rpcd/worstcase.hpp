#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "rpcd/common.hpp"
#include "rpcd/instances.hpp"

namespace rpcd {

// Packed lower-triangular factor L (row-major, i >= j) -> Y = L^T L -> unit diagonal Z ->
// lambda_min pinned to sigma. Rejects Z with lambda_min(Z) = 1 (NumericalError).
QuadraticInstance x_to_a(const Vector& x, int n, double sigma);
int packed_size(int n);

struct FamilyMatch {
  int k = 0;
  SignPattern v;
  double residual = 0;
  bool ambiguous = false;          // some block sign decided by an entry below 1e-6
  std::vector<int> relabel;        // block coordinates first, by decreasing off-diagonal magnitude
};

// Closest member of the block-PI family with sign flips; sign anchor is the first block
// coordinate.
FamilyMatch nearest_family_member(const Matrix& a, double sigma);

struct SearchResult {
  int n = 0;
  double sigma = 0;
  std::uint64_t seed = 0;
  int restarts = 0;
  Matrix matrix;
  double rho = 0;
  FamilyMatch nearest;
  double family_max = 0;
  double rpcd_ub = 0;
  bool conjecture_ok = false;
  long evaluations = 0;
  int rejected_restarts = 0;
  std::string optimizer = "nelder-mead (adaptive), polish restart";
};

// Maximizes rho of the exact RPCD operator over the parametrization. n in [3, 6].
SearchResult search(int n, double sigma, std::uint64_t seed, int restarts);

// Largest rho over `count` random parametrized instances (no optimization).
double random_probe_max(int n, double sigma, int count, std::uint64_t seed);

struct ScanRow {
  int n = 0;
  double sigma = 0;
  std::uint64_t seed = 0;
  double rho = 0;
  double family_max = 0;
  double rpcd_ub = 0;
  double residual = 0;
  int k = 0;
  bool search_ok = false;  // rho <= family_max + 1e-8
  bool bound_ok = false;   // family_max <= rpcd_ub + 1e-10
};

std::vector<ScanRow> conjecture_scan(const std::vector<int>& n_list, const std::vector<double>& sigma_grid,
                                     const std::vector<std::uint64_t>& seeds, int restarts);
std::string to_csv(const std::vector<ScanRow>& rows);

nlohmann::json to_json(const FamilyMatch& m);
nlohmann::json to_json(const SearchResult& r);

}  // namespace rpcd
