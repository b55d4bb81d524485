#pragma once

#include <span>
#include <vector>

namespace fwm {

/// Finite Chebyshev series sum_j c_j T_j(x') on [a, b], x' = (2x - a - b)/(b - a).
class ChebyshevSeries {
 public:
  ChebyshevSeries() = default;
  ChebyshevSeries(double a, double b, std::vector<double> coefficients);

  /// Least-squares fit of degree `degree` to samples (x_i, y_i) on [a, b].
  static ChebyshevSeries fit(std::span<const double> x, std::span<const double> y, int degree,
                             double a, double b);

  double operator()(double x) const;

  /// Exact derivative series, d/dx on the original interval.
  ChebyshevSeries derivative() const;

  double lower() const { return a_; }
  double upper() const { return b_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

 private:
  double a_ = -1.0;
  double b_ = 1.0;
  std::vector<double> coeffs_;
};

}  // namespace fwm
