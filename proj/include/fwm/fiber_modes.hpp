#pragma once

#include "fwm/materials.hpp"

namespace fwm {

/// Circular step-index fibre.
struct FiberSpec {
  double core_radius_um = 0.0;
  Material core;
  Material cladding;
  double gamma_per_w_km = 0.0;
  double length_m = 0.0;

  /// Checks r > 0, L > 0, gamma >= 0.
  void validate() const;
};

/// Effective index of the HE11 mode at angular frequency `omega` (rad/fs).
///
/// Solves the exact vector characteristic equation of the step-index fibre
/// (Bessel J in the core, modified Bessel K in the cladding). The bracket
/// (n_cl, n_co) is scanned on a 400-point grid, sign changes are refined by
/// bisection and poles of J1 are rejected; the largest root is the
/// fundamental mode. A fibre with n_co == n_cl is a homogeneous medium and
/// returns that index directly.
///
/// Throws ModeCutoffError when n_co < n_cl or no root is found.
double effective_index(const FiberSpec& fiber, double omega);

/// k = n_eff * omega / c in rad/nm.
double propagation_constant(const FiberSpec& fiber, double omega);

struct VNumber {
  double value;
  bool single_mode;  // V < 2.405
};

VNumber v_number(const FiberSpec& fiber, double wavelength_nm);

}  // namespace fwm
