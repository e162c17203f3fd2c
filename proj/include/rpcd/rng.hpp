#pragma once

#include <cstdint>
#include <random>

#include "rpcd/common.hpp"

namespace rpcd {

using Rng = std::mt19937_64;

// splitmix64 finalizer, used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Seed for the (a, b) sub-stream of root; any subset is reproducible on its own.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0);

Vector standard_normal(Rng& rng, int n);
Matrix standard_normal(Rng& rng, int rows, int cols);

// Uniform random permutation of {0, …, n-1} (Fisher-Yates via std::shuffle).
Permutation random_permutation(Rng& rng, int n);

}  // namespace rpcd
