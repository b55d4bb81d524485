#include "fwm/fiber_modes.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "fwm/errors.hpp"
#include "fwm/units.hpp"

namespace fwm {

namespace {

constexpr int kScanPoints = 400;
constexpr double kBisectionRelTol = 1e-14;
// |f| at a refined sign change above this marks a pole of J1, not a root.
constexpr double kPoleRejection = 1e-3;

// K1'(w) / (w K1(w)) with K1' = -K0 - K1/w.
double k_ratio(double w) {
  double k0_over_k1;
  if (w > 600.0) {
    // Large-argument expansion; the functions themselves underflow here.
    const double inv = 1.0 / w;
    k0_over_k1 = (1.0 - 0.125 * inv + 0.0703125 * inv * inv) /
                 (1.0 + 0.375 * inv - 0.1171875 * inv * inv);
  } else {
    k0_over_k1 = std::cyl_bessel_k(0.0, w) / std::cyl_bessel_k(1.0, w);
  }
  return (-k0_over_k1 - 1.0 / w) / w;
}

struct ModeProblem {
  double n_core;
  double n_clad;
  double radius_k;  // r * k0, dimensionless

  // HE_{1m} eigenvalue equation:
  //   J0(U)/(U J1(U)) = -(n1^2+n2^2)/(2 n1^2) K1'/(W K1) + 1/U^2 - R
  //   R = sqrt( ((n1^2-n2^2)/(2 n1^2))^2 (K1'/(W K1))^2
  //             + (n_eff/n1)^2 (1/U^2 + 1/W^2)^2 )
  double operator()(double n_eff) const {
    const double n1sq = n_core * n_core;
    const double n2sq = n_clad * n_clad;
    const double u = radius_k * std::sqrt(n1sq - n_eff * n_eff);
    const double w = radius_k * std::sqrt(n_eff * n_eff - n2sq);
    const double kr = k_ratio(w);
    const double inv_uw = 1.0 / (u * u) + 1.0 / (w * w);
    const double delta = (n1sq - n2sq) / (2.0 * n1sq);
    const double beta_ratio = n_eff / n_core;
    const double r = std::sqrt(delta * delta * kr * kr +
                               beta_ratio * beta_ratio * inv_uw * inv_uw);
    const double lhs = std::cyl_bessel_j(0.0, u) / (u * std::cyl_bessel_j(1.0, u));
    const double rhs = -(n1sq + n2sq) / (2.0 * n1sq) * kr + 1.0 / (u * u) - r;
    return lhs - rhs;
  }
};

double solve_he11(const ModeProblem& problem, double omega) {
  const double span = problem.n_core - problem.n_clad;
  const double margin = 1e-6 * span;
  const double lo = problem.n_clad + margin;
  const double hi = problem.n_core - margin;

  std::array<double, kScanPoints> grid{};
  std::array<double, kScanPoints> values{};
  for (int i = 0; i < kScanPoints; ++i) {
    grid[i] = lo + (hi - lo) * i / (kScanPoints - 1);
    values[i] = problem(grid[i]);
  }

  // Largest root first: walk down from the core index.
  for (int i = kScanPoints - 1; i > 0; --i) {
    double a = grid[i - 1];
    double b = grid[i];
    double fa = values[i - 1];
    double fb = values[i];
    if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
    if (fa == 0.0) return a;
    if (std::signbit(fa) == std::signbit(fb)) continue;
    while (b - a > kBisectionRelTol * b) {
      const double mid = 0.5 * (a + b);
      const double fm = problem(mid);
      if (fm == 0.0) {
        a = b = mid;
        break;
      }
      if (std::signbit(fm) == std::signbit(fa)) {
        a = mid;
        fa = fm;
      } else {
        b = mid;
      }
    }
    const double root = 0.5 * (a + b);
    if (std::abs(problem(root)) < kPoleRejection) return root;
  }

  std::ostringstream msg;
  msg << "no HE11 root in (n_cl, n_co) = (" << problem.n_clad << ", " << problem.n_core
      << ") at omega = " << omega << " rad/fs";
  throw ModeCutoffError(msg.str());
}

}  // namespace

void FiberSpec::validate() const {
  if (!(core_radius_um > 0.0)) throw ValidationError("fiber core radius must be > 0");
  if (!(length_m > 0.0)) throw ValidationError("fiber length must be > 0");
  if (!(gamma_per_w_km >= 0.0)) throw ValidationError("fiber gamma must be >= 0");
}

double effective_index(const FiberSpec& fiber, double omega) {
  const double wavelength = omega_to_wavelength(omega);
  const double n_core = fiber.core.refractive_index(wavelength);
  const double n_clad = fiber.cladding.refractive_index(wavelength);
  if (n_core == n_clad) return n_core;
  if (n_core < n_clad) {
    std::ostringstream msg;
    msg << "guidance condition violated at " << wavelength << " nm: n_co=" << n_core
        << " < n_cl=" << n_clad;
    throw ModeCutoffError(msg.str());
  }
  const double k0 = kTwoPi / (wavelength * 1e-3);  // rad/um
  return solve_he11(ModeProblem{n_core, n_clad, fiber.core_radius_um * k0}, omega);
}

double propagation_constant(const FiberSpec& fiber, double omega) {
  return effective_index(fiber, omega) * omega / kSpeedOfLight;
}

VNumber v_number(const FiberSpec& fiber, double wavelength_nm) {
  const double n_core = fiber.core.refractive_index(wavelength_nm);
  const double n_clad = fiber.cladding.refractive_index(wavelength_nm);
  const double na2 = n_core * n_core - n_clad * n_clad;
  const double v = kTwoPi * fiber.core_radius_um / (wavelength_nm * 1e-3) *
                   std::sqrt(na2 > 0.0 ? na2 : 0.0);
  return {v, v < 2.405};
}

}  // namespace fwm
