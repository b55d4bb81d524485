#pragma once

// Closed-form purity of F = exp(-a ns^2 - a ni^2 - b ns ni), |b| < 2a.
//
// Mehler's formula writes the kernel as sum_n (1 - t^2) t^(2n)-weighted
// Hermite-function products with b / (2a) = 2t / (1 + t^2). The Schmidt
// weights are then lambda_n = (1 - t^2) t^(2n), so
//   purity = sum_n lambda_n^2 = (1 - t^2) / (1 + t^2).

#include <cmath>

namespace oracle {

inline double gaussian_jsa_purity(double a, double b) {
  const double r = std::abs(b) / (2.0 * a);
  const double t = r == 0.0 ? 0.0 : (1.0 - std::sqrt(1.0 - r * r)) / r;
  return (1.0 - t * t) / (1.0 + t * t);
}

}  // namespace oracle
