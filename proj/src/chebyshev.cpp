#include "fwm/chebyshev.hpp"

#include <Eigen/Dense>

#include "fwm/errors.hpp"

namespace fwm {

ChebyshevSeries::ChebyshevSeries(double a, double b, std::vector<double> coefficients)
    : a_(a), b_(b), coeffs_(std::move(coefficients)) {
  if (!(b > a)) throw ContractError("Chebyshev interval must satisfy a < b");
}

ChebyshevSeries ChebyshevSeries::fit(std::span<const double> x, std::span<const double> y,
                                     int degree, double a, double b) {
  if (x.size() != y.size()) throw ContractError("Chebyshev fit: sample size mismatch");
  if (degree < 0 || x.size() < static_cast<std::size_t>(degree + 1)) {
    throw ContractError("Chebyshev fit: too few samples for the requested degree");
  }
  const auto rows = static_cast<Eigen::Index>(x.size());
  const Eigen::Index cols = degree + 1;
  Eigen::MatrixXd basis(rows, cols);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double t = (2.0 * x[i] - a - b) / (b - a);
    basis(i, 0) = 1.0;
    if (cols > 1) basis(i, 1) = t;
    for (Eigen::Index j = 2; j < cols; ++j) {
      basis(i, j) = 2.0 * t * basis(i, j - 1) - basis(i, j - 2);
    }
    rhs(i) = y[i];
  }
  const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(rhs);
  return ChebyshevSeries(a, b, std::vector<double>(c.data(), c.data() + c.size()));
}

double ChebyshevSeries::operator()(double x) const {
  if (coeffs_.empty()) return 0.0;
  const double t = (2.0 * x - a_ - b_) / (b_ - a_);
  // Clenshaw recurrence.
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t j = coeffs_.size() - 1; j > 0; --j) {
    const double tmp = 2.0 * t * b1 - b2 + coeffs_[j];
    b2 = b1;
    b1 = tmp;
  }
  return t * b1 - b2 + coeffs_[0];
}

ChebyshevSeries ChebyshevSeries::derivative() const {
  const std::size_t n = coeffs_.size();
  if (n <= 1) return ChebyshevSeries(a_, b_, {0.0});
  std::vector<double> d(n - 1, 0.0);
  // c'_{k-1} = c'_{k+1} + 2 k c_k, with the k = 0 term halved.
  for (std::size_t k = n - 1; k >= 1; --k) {
    const double next = (k + 1 < n - 1) ? d[k + 1] : 0.0;
    d[k - 1] = next + 2.0 * static_cast<double>(k) * coeffs_[k];
  }
  d[0] *= 0.5;
  const double scale = 2.0 / (b_ - a_);
  for (auto& v : d) v *= scale;
  return ChebyshevSeries(a_, b_, std::move(d));
}

}  // namespace fwm
