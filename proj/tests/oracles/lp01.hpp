#pragma once

// Weak-guidance LP01 solver, independent of the library's HE11 code:
//   U J1(U) / J0(U) = W K1(W) / K0(W),  U^2 + W^2 = V^2.
// Solved for U in (0, min(V, j0,1)) by plain bisection.

#include <cmath>

namespace oracle {

inline double lp01_effective_index(double radius_um, double n_core, double n_clad,
                                   double wavelength_nm) {
  const double k0 = 2.0 * M_PI / (wavelength_nm * 1e-3);  // rad/um
  const double v = k0 * radius_um * std::sqrt(n_core * n_core - n_clad * n_clad);
  const auto f = [v](double u) {
    const double w = std::sqrt(v * v - u * u);
    return u * std::cyl_bessel_j(1.0, u) / std::cyl_bessel_j(0.0, u) -
           w * std::cyl_bessel_k(1.0, w) / std::cyl_bessel_k(0.0, w);
  };
  const double j01 = 2.404825557695773;
  double lo = 1e-9, hi = std::min(v, j01) * (1.0 - 1e-12);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(lo) < 0.0) == (f(mid) < 0.0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double u = 0.5 * (lo + hi);
  const double beta2 = (k0 * n_core) * (k0 * n_core) - (u / radius_um) * (u / radius_um);
  return std::sqrt(beta2) / k0;
}

}  // namespace oracle
