#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace crsp {

// Seeded generator handed around by value or reference; never global.
//
// The stream is fully determined by the seed on every platform:
// std::mt19937_64 is pinned by the standard, uniforms take its top 53 bits
// and normals use Box-Muller. std::normal_distribution is avoided because
// its algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Standard normal deviate.
  double normal();
  // Re and Im independent standard normals.
  std::complex<double> complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace crsp
