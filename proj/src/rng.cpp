#include "cosc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cosc {

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % span);
}

double Rng::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double two_pi = 6.283185307179586476925286766559;
  spare_ = mag * std::sin(two_pi * u2);
  has_spare_ = true;
  return mag * std::cos(two_pi * u2);
}

std::vector<double> Rng::unit_vector(int n) {
  if (n < 2) throw std::invalid_argument("unit_vector: need n >= 2");
  std::vector<double> f(static_cast<std::size_t>(n));
  for (;;) {
    double norm2 = 0.0;
    for (auto& x : f) {
      x = normal();
      norm2 += x * x;
    }
    bool constant = true;
    for (int i = 1; i < n; ++i) {
      if (f[static_cast<std::size_t>(i)] != f[0]) {
        constant = false;
        break;
      }
    }
    if (norm2 <= 0.0 || constant) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : f) x *= inv;
    return f;
  }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over the combined value
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace cosc
