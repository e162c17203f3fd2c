#include "rpcd/common.hpp"

#include <algorithm>
#include <cctype>

#include "rpcd/rng.hpp"

namespace rpcd {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::RCD: return "rcd";
    case Algorithm::RPCD: return "rpcd";
    case Algorithm::CCD: return "ccd";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  std::string t = s;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "rcd") return Algorithm::RCD;
  if (t == "rpcd") return Algorithm::RPCD;
  if (t == "ccd") return Algorithm::CCD;
  throw DomainError("unknown algorithm: " + s);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

bool is_permutation(const Permutation& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(mix64(root) ^ (a + 0x632be59bd9b4e019ULL)) ^ (b + 0x85157af5ULL));
}

Vector standard_normal(Rng& rng, int n) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = nd(rng);
  return v;
}

Matrix standard_normal(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(rows, cols);
  // row-major draw order so the stream layout does not depend on Eigen storage
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = nd(rng);
  return m;
}

Permutation random_permutation(Rng& rng, int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace rpcd
