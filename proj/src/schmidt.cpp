#include "fwm/schmidt.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "fwm/errors.hpp"

namespace fwm {

SchmidtResult schmidt_decompose(const JsaGrid& grid) {
  if (grid.signal_axis.count < kMinSchmidtAxisPoints ||
      grid.idler_axis.count < kMinSchmidtAxisPoints) {
    std::ostringstream msg;
    msg << "purity grid too coarse: " << grid.signal_axis.count << " x " << grid.idler_axis.count
        << " (need at least " << kMinSchmidtAxisPoints << " points per axis)";
    throw ContractError(msg.str());
  }
  const double norm2 = grid.norm_squared();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "Schmidt decomposition needs a normalized JSA; sum |F|^2 dws dwi = " << norm2;
    throw ContractError(msg.str());
  }

  const Eigen::MatrixXcd scaled = grid.amplitude * std::sqrt(grid.cell_area());
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(scaled);
  const Eigen::VectorXd& singular = svd.singularValues();

  SchmidtResult result;
  result.coefficients.reserve(static_cast<std::size_t>(singular.size()));
  double total = 0.0;
  for (Eigen::Index n = 0; n < singular.size(); ++n) {
    const double lambda = singular[n] * singular[n];
    result.coefficients.push_back(lambda);
    total += lambda;
  }
  for (double& lambda : result.coefficients) lambda /= total;
  for (double lambda : result.coefficients) result.purity += lambda * lambda;
  result.schmidt_number = 1.0 / result.purity;
  return result;
}

}  // namespace fwm
