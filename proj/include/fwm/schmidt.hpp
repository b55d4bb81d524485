#pragma once

#include <vector>

#include "fwm/biphoton.hpp"

namespace fwm {

struct SchmidtResult {
  std::vector<double> coefficients;  // lambda_n, descending, sum to 1
  double purity = 0.0;               // sum lambda_n^2
  double schmidt_number = 0.0;       // 1 / purity
};

inline constexpr int kMinSchmidtAxisPoints = 32;

/// Schmidt decomposition of a normalized JSA grid via the SVD of
/// F(ws, wi) sqrt(dws dwi). Requires a unit-norm grid (|norm - 1| <= 1e-10)
/// and at least 32 points along each axis.
SchmidtResult schmidt_decompose(const JsaGrid& grid);

}  // namespace fwm
