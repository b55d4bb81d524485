#pragma once

#include <cmath>
#include <complex>

namespace oracle {

// erf(z) = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1)), first `terms` terms.
inline std::complex<double> erf_taylor(std::complex<double> z, int terms = 30) {
  std::complex<double> sum = 0.0;
  std::complex<double> power = z;  // (-1)^n z^(2n+1) / n!
  for (int n = 0; n < terms; ++n) {
    sum += power / static_cast<double>(2 * n + 1);
    power *= -z * z / static_cast<double>(n + 1);
  }
  return 2.0 / std::sqrt(M_PI) * sum;
}

}  // namespace oracle
