#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fwm/chebyshev.hpp"
#include "fwm/fiber_modes.hpp"

namespace fwm {

struct FrequencyWindow {
  double omega_min;  // rad/fs
  double omega_max;

  bool contains(double omega) const { return omega >= omega_min && omega <= omega_max; }
  double width() const { return omega_max - omega_min; }
};

/// Window in rad/fs spanning the wavelength interval [lambda_lo, lambda_hi] nm.
FrequencyWindow window_from_wavelengths(double lambda_lo_nm, double lambda_hi_nm);

struct ProfileOptions {
  int degree = 16;
  int samples = 200;
  double max_residual = 1e-9;  // rad/nm
};

/// Smooth proxy of k(omega) with analytic derivatives up to third order.
///
/// Built once from solver samples and immutable afterwards; queries are
/// read-only and safe from any number of threads. Derivative queries are
/// accepted only inside the fit window shrunk by 2% at each edge.
class DispersionProfile {
 public:
  static constexpr double kEdgeFraction = 0.02;

  /// Least-squares fit of `k_of_omega` sampled uniformly over `window`.
  static DispersionProfile fit(const std::function<double(double)>& k_of_omega,
                               FrequencyWindow window, const ProfileOptions& options = {});

  /// k^(order)(omega) in rad/nm * fs^order, order in 0..3.
  double k_derivative(double omega, int order) const;

  double k(double omega) const { return k_derivative(omega, 0); }
  double k1(double omega) const { return k_derivative(omega, 1); }
  double k2(double omega) const { return k_derivative(omega, 2); }
  double k3(double omega) const { return k_derivative(omega, 3); }

  FrequencyWindow fit_window() const { return window_; }
  /// Region where derivative queries are allowed.
  FrequencyWindow usable_window() const;
  bool in_range(double omega) const { return usable_window().contains(omega); }

  double fit_residual() const { return residual_; }
  int degree() const { return degree_; }

 private:
  DispersionProfile() = default;

  FrequencyWindow window_{0.0, 0.0};
  std::array<ChebyshevSeries, 4> series_;
  double residual_ = 0.0;
  int degree_ = 0;
};

/// Samples k(omega) from the HE11 solver and fits the proxy.
///
/// Throws the solver's error (annotated with the failing omega) or
/// FitQualityError when the residual exceeds options.max_residual.
DispersionProfile build_profile(const FiberSpec& fiber, FrequencyWindow window,
                                const ProfileOptions& options = {});

/// Zero-dispersion frequencies (k^(2) = 0) inside the usable window, ascending.
std::vector<double> find_zdfs(const DispersionProfile& profile);

/// Phase-mismatch expansion coefficients around (omega_s0, omega_i0).
///
/// tau1 in fs, tau2 in fs^2; l_delta_k0 = L * dk_cw(omega_s0, omega_i0)
/// (dimensionless) at the given pump power.
struct TauSet {
  double omega_p = 0.0;
  double omega_s0 = 0.0;
  double omega_i0 = 0.0;
  double tau_s1 = 0.0;
  double tau_i1 = 0.0;
  double tau_s2 = 0.0;
  double tau_i2 = 0.0;
  double tau_p2 = 0.0;
  double l_delta_k0 = 0.0;
};

TauSet tau_coefficients(const DispersionProfile& profile, double length_m, double gamma_per_w_km,
                        double power_w, double omega_p, double omega_s0, double omega_i0);

/// Orientation angle -atan(tau_s1/tau_i1) of the phasematched ridge in
/// degrees, mapped to (-90, 90]. Throws EvaluationError when both vanish.
double theta_pm(double tau_s1, double tau_i1);

enum class FgvmKind { PumpDegenerate, LoopInterior };

std::string to_string(FgvmKind kind);

/// Point in {omega_p, Delta} space where k1(omega_p) = k1(omega_s) = k1(omega_i).
struct FgvmPoint {
  double omega_p;
  double delta;  // omega_s - omega_p, >= 0
  double omega_s;
  double omega_i;
  FgvmKind kind;
};

struct FgvmSearchOptions {
  int pump_points = 200;
  int detuning_points = 200;
  double merge_distance = 1e-6;  // rad/fs
};

/// Full group-velocity-matching points with pump inside `pump_window`.
///
/// Pump-degenerate points are the ZDFs (Delta = 0). Loop-interior points are
/// the stationary points of dk_linear(omega_p, Delta) with Delta > 0; they are
/// found by scanning a scaled gradient on a coarse grid and polishing each
/// local minimum with damped Newton steps. Results are ordered by kind, then
/// by omega_p.
std::vector<FgvmPoint> find_fgvm_points(const DispersionProfile& profile,
                                        FrequencyWindow pump_window,
                                        const FgvmSearchOptions& options = {});

}  // namespace fwm
