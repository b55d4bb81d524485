#pragma once

#include <vector>

namespace fwm {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b] (Newton iteration on the
/// Legendre recurrence).
QuadratureRule gauss_legendre(int n, double a, double b);

}  // namespace fwm
