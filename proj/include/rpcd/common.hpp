#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpcd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// 0-based permutation; perm[i] is the coordinate updated at position i.
using Permutation = std::vector<int>;

enum class Algorithm { RCD, RPCD, CCD };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

// Bad parameters at the API surface.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative procedures that ran out of budget or hit a singular configuration.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certificate or property check failed.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg);

bool is_permutation(const Permutation& p, int n);

}  // namespace rpcd
