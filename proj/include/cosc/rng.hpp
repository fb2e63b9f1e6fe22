#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cosc {

// Deterministic random helpers on top of std::mt19937_64. The engine's output
// sequence is pinned by the standard; the standard *distributions* are not, so
// sampling is done by hand to keep results reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, n) without modulo bias.
  std::size_t uniform_index(std::size_t n);

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01();

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller.
  double normal();

  // Random point on the unit sphere, guaranteed non-constant as a vector.
  std::vector<double> unit_vector(int n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Stream-derived seed so concurrent consumers stay reproducible.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace cosc
