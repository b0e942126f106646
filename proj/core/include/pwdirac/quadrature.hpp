#pragma once

#include <vector>

namespace pwdirac {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes.
/// Newton iteration on P_n; exact for polynomials of degree <= 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
};

}  // namespace pwdirac
