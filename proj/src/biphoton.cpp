#include "fwm/biphoton.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fwm/errors.hpp"
#include "fwm/faddeeva.hpp"
#include "fwm/parallel.hpp"
#include "fwm/phasematching.hpp"
#include "fwm/quadrature.hpp"
#include "fwm/units.hpp"

namespace fwm {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kSeriesThreshold = 1e-4;

// M_n = int_0^1 t^n (1 - i a t)^(-1/2) dt for n = 0..count-1.
std::vector<cd> pump_moments(double a, int count) {
  std::vector<cd> m(count);
  if (std::abs(a) < 0.5) {
    // Binomial series in (-i a t), converges for |a| < 1.
    for (int n = 0; n < count; ++n) {
      cd sum = 0.0;
      cd power = 1.0;  // (-i a)^k
      double binom = 1.0;
      for (int k = 0; k < 200; ++k) {
        const cd term = binom * power / static_cast<double>(n + k + 1);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        binom *= (-0.5 - k) / (k + 1.0);
        power *= -kI * a;
      }
      m[n] = sum;
    }
  } else {
    const cd s = std::sqrt(1.0 - kI * a);
    const cd ia = kI * a;
    m[0] = 2.0 * (1.0 - s) / ia;
    for (int n = 1; n < count; ++n) {
      m[n] = (static_cast<double>(n) * m[n - 1] - s) / (ia * (n + 0.5));
    }
  }
  return m;
}

cd phi_series(double a, cd x) {
  // Phi = pi^(-1/2) sum_n (-i a x^2)^n / n! M_n
  constexpr int kMax = 24;
  const auto moments = pump_moments(a, kMax);
  const cd u = -kI * a * x * x;
  cd sum = 0.0;
  cd factor = 1.0;
  for (int n = 0; n < kMax; ++n) {
    const cd term = factor * moments[n];
    sum += term;
    if (n > 0 && std::abs(term) < 1e-18 * std::abs(sum)) break;
    factor *= u / static_cast<double>(n + 1);
  }
  return std::numbers::inv_sqrtpi * sum;
}

}  // namespace

void PumpSpec::validate() const {
  if (!(omega_p > 0.0)) throw ValidationError("pump frequency must be > 0");
  if (!(sigma > 0.0)) throw ValidationError("pump bandwidth sigma must be > 0");
  if (!(power_w >= 0.0)) throw ValidationError("pump power must be >= 0");
}

double sigma_from_fwhm_nm(double fwhm_nm, double center_nm) {
  return wavelength_width_to_omega(fwhm_nm, center_nm) / std::sqrt(2.0 * std::numbers::ln2);
}

double JsaGrid::norm_squared() const { return amplitude.squaredNorm() * cell_area(); }

void JsaGrid::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw EvaluationError("cannot normalize a JSA grid with zero or non-finite norm");
  }
  amplitude /= std::sqrt(n2);
  normalized = true;
}

double c0_parameter(const TauSet& tau, const PumpSpec& pump) {
  return 0.5 * tau.tau_p2 * pump.sigma * pump.sigma;
}

std::complex<double> phi_function(double a, std::complex<double> x) {
  if (a == 0.0) {
    throw EvaluationError("analytic JSA invalid: C0 = 0 (tau_p2 = 0)");
  }
  if (std::abs(x) < kSeriesThreshold) return phi_series(a, x);
  const cd s = std::sqrt(1.0 - kI * a);
  // Phi is even in x; pick the sign that keeps -x and -x s in Im >= 0.
  const auto score = [&](cd v) { return std::min((-v).imag(), (-v * s).imag()); };
  if (score(-x) > score(x)) x = -x;
  const cd num = faddeeva(-x) - std::exp(-kI * a * x * x) * faddeeva(-x * s);
  return num / (a * x);
}

double beta_mismatch(const TauSet& tau, double nu_s, double nu_i) {
  return tau.l_delta_k0 + tau.tau_s1 * nu_s + tau.tau_i1 * nu_i + tau.tau_s2 * nu_s * nu_s +
         tau.tau_i2 * nu_i * nu_i + tau.tau_p2 * nu_s * nu_i;
}

std::complex<double> zeta_function(const TauSet& tau, double sigma, double nu_s, double nu_i) {
  if (tau.tau_p2 == 0.0) throw EvaluationError("analytic JSA invalid: tau_p2 = 0");
  const double u = nu_s + nu_i;
  const double radicand = u * u - 4.0 * beta_mismatch(tau, nu_s, nu_i) / tau.tau_p2;
  return std::sqrt(cd(radicand, 0.0)) / (std::numbers::sqrt2 * sigma);
}

JsaGrid jsa_analytic(const TauSet& tau, const PumpSpec& pump, const UniformAxis& signal_axis,
                     const UniformAxis& idler_axis, int threads) {
  pump.validate();
  signal_axis.validate();
  idler_axis.validate();
  const double a = c0_parameter(tau, pump);
  if (a == 0.0) throw EvaluationError("analytic JSA invalid: tau_p2 = 0");
  JsaGrid grid{signal_axis, idler_axis, Eigen::MatrixXcd(signal_axis.count, idler_axis.count),
               false};
  const double two_sigma2 = 2.0 * pump.sigma * pump.sigma;
  parallel_for(static_cast<std::size_t>(signal_axis.count), threads, [&](std::size_t i) {
    const double nu_s = signal_axis.at(static_cast<int>(i)) - tau.omega_s0;
    for (int j = 0; j < idler_axis.count; ++j) {
      const double nu_i = idler_axis.at(j) - tau.omega_i0;
      const double u = nu_s + nu_i;
      const double alpha = std::exp(-u * u / two_sigma2);
      grid.amplitude(static_cast<Eigen::Index>(i), j) =
          alpha * phi_function(a, zeta_function(tau, pump.sigma, nu_s, nu_i));
    }
  });
  grid.normalize();
  return grid;
}

namespace {

struct PumpIntegrator {
  const DispersionProfile& profile;
  double omega_p;
  double sigma;
  double length;       // nm
  double power_term;   // 2 gamma P, rad/nm
  QuadratureRule rule;
  std::vector<double> k_nodes;
  std::vector<double> alpha_exponent;  // (w' - wp)^2 / sigma^2

  PumpIntegrator(const DispersionProfile& p, const PumpSpec& pump, double length_nm,
                 double power_term_, int nodes)
      : profile(p),
        omega_p(pump.omega_p),
        sigma(pump.sigma),
        length(length_nm),
        power_term(power_term_),
        rule(gauss_legendre(nodes, pump.omega_p - 5.0 * pump.sigma,
                            pump.omega_p + 5.0 * pump.sigma)) {
    k_nodes.reserve(rule.nodes.size());
    alpha_exponent.reserve(rule.nodes.size());
    for (double w : rule.nodes) {
      k_nodes.push_back(profile.k(w));
      const double x = (w - omega_p) / sigma;
      alpha_exponent.push_back(x * x);
    }
  }

  cd operator()(double omega_s, double omega_i) const {
    const double sum = omega_s + omega_i;
    const double base = -profile.k(omega_s) - profile.k(omega_i) - power_term;
    cd acc = 0.0;
    for (std::size_t m = 0; m < rule.nodes.size(); ++m) {
      const double partner = sum - rule.nodes[m];
      const double y = (partner - omega_p) / sigma;
      const double exponent = alpha_exponent[m] + y * y;
      if (exponent > 80.0) continue;  // envelope below 1e-34
      const double dk = k_nodes[m] + profile.k(partner) + base;
      const double half_phase = 0.5 * length * dk;
      acc += rule.weights[m] * std::exp(-exponent) * sinc(half_phase) * std::polar(1.0, half_phase);
    }
    return acc;
  }
};

Eigen::MatrixXcd integrate_grid(const PumpIntegrator& integrator, const UniformAxis& signal_axis,
                                const UniformAxis& idler_axis, int threads) {
  Eigen::MatrixXcd out(signal_axis.count, idler_axis.count);
  parallel_for(static_cast<std::size_t>(signal_axis.count), threads, [&](std::size_t i) {
    const double ws = signal_axis.at(static_cast<int>(i));
    for (int j = 0; j < idler_axis.count; ++j) {
      out(static_cast<Eigen::Index>(i), j) = integrator(ws, idler_axis.at(j));
    }
  });
  return out;
}

void check_window(const DispersionProfile& profile, double omega, const char* what) {
  if (!profile.in_range(omega)) {
    const auto w = profile.usable_window();
    std::ostringstream msg;
    msg.precision(10);
    msg << "jsa_numeric: " << what << " " << omega << " rad/fs outside usable window ["
        << w.omega_min << ", " << w.omega_max << "]";
    throw RangeError(msg.str());
  }
}

}  // namespace

JsaGrid jsa_numeric(const DispersionProfile& profile, const FiberSpec& fiber,
                    const PumpSpec& pump, const UniformAxis& signal_axis,
                    const UniformAxis& idler_axis, const NumericJsaOptions& options) {
  pump.validate();
  signal_axis.validate();
  idler_axis.validate();
  if (options.nodes < 1) throw ContractError("jsa_numeric needs at least one quadrature node");

  const double reach = 5.0 * pump.sigma;
  check_window(profile, pump.omega_p - reach, "pump integration bound");
  check_window(profile, pump.omega_p + reach, "pump integration bound");
  for (double w : {signal_axis.start, signal_axis.stop}) check_window(profile, w, "signal frequency");
  for (double w : {idler_axis.start, idler_axis.stop}) check_window(profile, w, "idler frequency");
  const double sum_lo = signal_axis.start + idler_axis.start;
  const double sum_hi = signal_axis.stop + idler_axis.stop;
  check_window(profile, sum_lo - pump.omega_p - reach, "partner pump frequency");
  check_window(profile, sum_hi - pump.omega_p + reach, "partner pump frequency");

  const double length = metres_to_nm(fiber.length_m);
  const double power_term = 2.0 * nonlinear_phase_per_nm(fiber.gamma_per_w_km, pump.power_w);
  const PumpIntegrator integrator(profile, pump, length, power_term, options.nodes);

  JsaGrid grid{signal_axis, idler_axis,
               integrate_grid(integrator, signal_axis, idler_axis, options.threads), false};

  if (options.check_convergence) {
    const PumpIntegrator refined(profile, pump, length, power_term, 2 * options.nodes);
    const double peak = grid.amplitude.cwiseAbs().maxCoeff();
    const int stride_s = std::max(1, signal_axis.count / 16);
    const int stride_i = std::max(1, idler_axis.count / 16);
    const auto [pi, pj] = peak_index(grid);
    double worst = std::abs(refined(signal_axis.at(pi), idler_axis.at(pj)) - grid.amplitude(pi, pj));
    for (int i = 0; i < signal_axis.count; i += stride_s) {
      for (int j = 0; j < idler_axis.count; j += stride_i) {
        worst = std::max(worst, std::abs(refined(signal_axis.at(i), idler_axis.at(j)) -
                                         grid.amplitude(i, j)));
      }
    }
    if (worst > options.tolerance * peak) {
      std::ostringstream msg;
      msg << "jsa_numeric: quadrature not converged with " << options.nodes
          << " nodes (doubling changes F by " << worst / peak
          << " of its peak); increase the node count";
      throw AccuracyError(msg.str());
    }
  }
  grid.normalize();
  return grid;
}

CwAmplitude jsa_cw(const DispersionProfile& profile, const FiberSpec& fiber, double power_w,
                   double omega_p, const UniformAxis& axis) {
  axis.validate();
  CwAmplitude out;
  out.omega = axis.values();
  out.amplitude.reserve(out.omega.size());
  const double length = metres_to_nm(fiber.length_m);
  double norm2 = 0.0;
  for (double w : out.omega) {
    const double half_phase =
        0.5 * length * delta_k_cw(profile, fiber.gamma_per_w_km, power_w, w, 2.0 * omega_p - w);
    const cd value = sinc(half_phase) * std::polar(1.0, half_phase);
    out.amplitude.push_back(value);
    norm2 += std::norm(value);
  }
  norm2 *= axis.step();
  if (!(norm2 > 0.0)) throw EvaluationError("jsa_cw: amplitude vanishes on the whole axis");
  out.scale = std::sqrt(norm2);
  for (auto& v : out.amplitude) v /= out.scale;
  return out;
}

double magnitude_linf_distance(const JsaGrid& a, const JsaGrid& b) {
  if (a.amplitude.rows() != b.amplitude.rows() || a.amplitude.cols() != b.amplitude.cols()) {
    throw ContractError("magnitude_linf_distance: grid shapes differ");
  }
  const Eigen::MatrixXd ma = a.amplitude.cwiseAbs();
  const Eigen::MatrixXd mb = b.amplitude.cwiseAbs();
  return (ma / ma.maxCoeff() - mb / mb.maxCoeff()).cwiseAbs().maxCoeff();
}

std::pair<int, int> peak_index(const JsaGrid& grid) {
  Eigen::Index r = 0, c = 0;
  grid.amplitude.cwiseAbs2().maxCoeff(&r, &c);
  return {static_cast<int>(r), static_cast<int>(c)};
}

}  // namespace fwm
