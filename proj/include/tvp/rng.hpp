#pragma once

#include <cstdint>
#include <random>

namespace tvp {

// Every stochastic operation takes a generator by reference; a fixed seed
// gives bit-identical runs on one platform.
using Rng = std::mt19937_64;

// Derives independent per-task seeds from a master seed (splitmix64 finalizer).
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double draw_uniform(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_exponential(Rng& rng, double rate) {
  return std::exponential_distribution<double>(rate)(rng);
}

// Gamma(shape, rate) with density rate^shape y^(shape-1) e^(-rate y) / Gamma(shape).
inline double draw_gamma(Rng& rng, double shape, double rate) {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

// InvGamma(shape, scale) with density scale^shape y^(-shape-1) e^(-scale/y) / Gamma(shape).
inline double draw_inv_gamma(Rng& rng, double shape, double scale) {
  return 1.0 / std::gamma_distribution<double>(shape, 1.0 / scale)(rng);
}

inline double draw_beta(Rng& rng, double a, double b) {
  const double x = std::gamma_distribution<double>(a, 1.0)(rng);
  const double y = std::gamma_distribution<double>(b, 1.0)(rng);
  return x / (x + y);
}

}  // namespace tvp
