#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "pwdirac/radial.hpp"

namespace pwdirac::testing {

inline std::mt19937_64 seeded_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x9e3779b9ULL + salt); }

inline complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

/// Smooth random channel state built from a few Gaussian rings; vanishes
/// like r^2 at the origin so either channel parity is safe.
inline RadialPair random_state(const AngularIndex& idx, const RadialGrid& grid,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ur(1.5, 0.55 * grid.R), uw(0.4, 1.2), uc(-1.0, 1.0);
  auto make = [&]() {
    struct Ring { double a, b, r0, w; };
    std::vector<Ring> rings(3);
    for (auto& g : rings) g = {uc(rng), uc(rng), ur(rng), uw(rng)};
    return [rings](double r) -> complex {
      complex acc = 0.0;
      for (const auto& g : rings) {
        const double s = (r - g.r0) / g.w;
        acc += complex{g.a, g.b} * std::exp(-s * s);
      }
      return acc * (r * r / (1.0 + r * r));
    };
  };
  return RadialPair::from_profiles(idx, grid, make(), make());
}

/// Composite-midpoint quadrature oracle on [0, R].
inline double quad_midpoint(const std::function<double(double)>& f, double R, int n = 20000) {
  const double h = R / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f((i + 0.5) * h);
  return acc * h;
}

}  // namespace pwdirac::testing
