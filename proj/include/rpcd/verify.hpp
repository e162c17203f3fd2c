#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rpcd {

struct CheckLine {
  std::string name;
  bool ok = false;
  double worst = 0;  // largest residual seen
  double tolerance = 0;
  long cases = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> checks;
  bool all_ok() const;
};

// Restriction consistency (PI and 3 sign flips, n <= 6), block reduction, sign-flip spectral
// invariance, arrow-form closure, complementary pairing.
SuiteReport verify_operators(std::uint64_t seed = 0);

struct NonasymptoticCheck {
  int n = 0;
  double sigma = 0;
  long k0 = 0;
  double margin_k0 = 0;
  double margin_prev = 0;  // NaN when k0 == 1
  bool ok = false;
};

NonasymptoticCheck verify_nonasymptotic(int n, double sigma, double tol = 1e-12);

nlohmann::json to_json(const CheckLine& c);
nlohmann::json to_json(const SuiteReport& r);
nlohmann::json to_json(const NonasymptoticCheck& c);

}  // namespace rpcd
