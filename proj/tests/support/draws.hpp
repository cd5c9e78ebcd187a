#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dhym/params.hpp"

namespace dhym::testing {

struct Draw {
  SurfaceParams surface;
  BundleClass bundle;
};

// Deterministic stable draws: k in 1..4, h in 0..3, k' in (0.5, 10), k1 in (-3, -0.25),
// |k2| in (0.25, 3) with either sign, kept when the margin is at least min_margin.
inline std::vector<Draw> stable_draws(std::size_t n, std::uint64_t seed = 20240611,
                                      double min_margin = 0.1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k_dist(1, 4), h_dist(0, 3);
  std::uniform_real_distribution<double> kp_dist(0.5, 10.0), k1_dist(-3.0, -0.25),
      k2_dist(0.25, 3.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<Draw> out;
  while (out.size() < n) {
    Draw d;
    d.surface = make_surface(k_dist(rng), h_dist(rng), kp_dist(rng));
    d.bundle.k1 = k1_dist(rng);
    d.bundle.k2 = (sign(rng) ? 1.0 : -1.0) * k2_dist(rng);
    if (stability_margin(d.surface, d.bundle) >= min_margin) out.push_back(d);
  }
  return out;
}

// Same ranges without the stability filter.
inline std::vector<Draw> any_draws(std::size_t n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> k_dist(1, 4), h_dist(0, 3);
  std::uniform_real_distribution<double> kp_dist(0.5, 10.0), k1_dist(-3.0, -0.25),
      k2_dist(0.25, 3.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<Draw> out(n);
  for (Draw& d : out) {
    d.surface = make_surface(k_dist(rng), h_dist(rng), kp_dist(rng));
    d.bundle.k1 = k1_dist(rng);
    d.bundle.k2 = (sign(rng) ? 1.0 : -1.0) * k2_dist(rng);
  }
  return out;
}

inline double rel_err(double a, double b) {
  const double d = a - b;
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(d) / m;
}

}  // namespace dhym::testing
