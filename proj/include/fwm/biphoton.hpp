#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fwm/dispersion.hpp"
#include "fwm/fiber_modes.hpp"
#include "fwm/grid.hpp"

namespace fwm {

/// Gaussian pump with spectral amplitude exp[-(w - wp)^2 / sigma^2].
struct PumpSpec {
  double omega_p = 0.0;  // rad/fs
  double sigma = 0.0;    // rad/fs
  double power_w = 0.0;

  void validate() const;
};

/// sigma (rad/fs) for a pump whose *intensity* spectrum |alpha|^2 has FWHM
/// `fwhm_nm` at `center_nm`: FWHM_omega = sigma * sqrt(2 ln 2).
double sigma_from_fwhm_nm(double fwhm_nm, double center_nm);

/// Complex joint spectral amplitude on a (signal x idler) grid.
/// amplitude(i, j) belongs to (signal_axis.at(i), idler_axis.at(j)).
struct JsaGrid {
  UniformAxis signal_axis;
  UniformAxis idler_axis;
  Eigen::MatrixXcd amplitude;
  bool normalized = false;

  double cell_area() const { return signal_axis.step() * idler_axis.step(); }
  /// sum |F|^2 dws dwi
  double norm_squared() const;
  /// Scales to unit norm and sets the flag.
  void normalize();
};

/// C0 = tau_p2 sigma^2 / 2.
double c0_parameter(const TauSet& tau, const PumpSpec& pump);

/// Phi(a; x) = exp(-x^2) [erf(i x sqrt(1 - i a)) - erf(i x)] / (a x).
///
/// Evaluated as [w(-x) - exp(-i a x^2) w(-x s)] / (a x) with s = sqrt(1 - i a),
/// choosing the sign of x (Phi is even) so both Faddeeva arguments sit in the
/// upper half-plane. For |x| < 1e-4 a power series in x^2 replaces the
/// quotient. Throws EvaluationError for a = 0.
std::complex<double> phi_function(double a, std::complex<double> x);

/// beta = L dk0 + ts1 ns + ti1 ni + ts2 ns^2 + ti2 ni^2 + tp2 ns ni.
double beta_mismatch(const TauSet& tau, double nu_s, double nu_i);

/// Z = sqrt((ns + ni)^2 - 4 beta / tp2) / (sqrt(2) sigma), principal branch.
std::complex<double> zeta_function(const TauSet& tau, double sigma, double nu_s, double nu_i);

/// Closed-form Gaussian-pump JSA alpha(ns, ni) Phi(C0; Z(ns, ni)), normalized.
/// Axes are absolute frequencies; detunings are taken from tau.omega_s0/i0.
JsaGrid jsa_analytic(const TauSet& tau, const PumpSpec& pump, const UniformAxis& signal_axis,
                     const UniformAxis& idler_axis, int threads = 1);

struct NumericJsaOptions {
  int nodes = 201;
  bool check_convergence = true;
  double tolerance = 1e-6;  // max |F_2n - F_n| relative to max |F_n|
  int threads = 1;
};

/// JSA by Gauss-Legendre integration over the pump frequency w' in
/// wp +/- 5 sigma of alpha(w') alpha(ws + wi - w') sinc(L dk/2) exp(i L dk/2),
/// dk = k(w') + k(ws + wi - w') - k(ws) - k(wi) - 2 gamma P. Normalized.
///
/// With check_convergence, a subsample of nodes is recomputed with twice the
/// quadrature nodes; a change above `tolerance` throws AccuracyError.
JsaGrid jsa_numeric(const DispersionProfile& profile, const FiberSpec& fiber,
                    const PumpSpec& pump, const UniformAxis& signal_axis,
                    const UniformAxis& idler_axis, const NumericJsaOptions& options = {});

/// cw-pump amplitude along the anti-diagonal ws + wi = 2 wp, parametrized by ws.
struct CwAmplitude {
  std::vector<double> omega;
  std::vector<std::complex<double>> amplitude;  // sum |A|^2 dw = 1
  double scale = 1.0;                           // raw = amplitude * scale
};

CwAmplitude jsa_cw(const DispersionProfile& profile, const FiberSpec& fiber, double power_w,
                   double omega_p, const UniformAxis& axis);

/// max | |A|/max|A| - |B|/max|B| | over a common grid.
double magnitude_linf_distance(const JsaGrid& a, const JsaGrid& b);

/// Grid indices of the largest |F|.
std::pair<int, int> peak_index(const JsaGrid& grid);

}  // namespace fwm
