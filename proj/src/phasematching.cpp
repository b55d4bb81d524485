#include "fwm/phasematching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "fwm/errors.hpp"
#include "fwm/parallel.hpp"
#include "fwm/units.hpp"

namespace fwm {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double delta_k_cw(const DispersionProfile& profile, double gamma_per_w_km, double power_w,
                  double omega_s, double omega_i) {
  const double mean = 0.5 * (omega_s + omega_i);
  return 2.0 * profile.k(mean) - profile.k(omega_s) - profile.k(omega_i) -
         2.0 * nonlinear_phase_per_nm(gamma_per_w_km, power_w);
}

double delta_k_linear(const DispersionProfile& profile, double omega_p, double delta) {
  return 2.0 * profile.k(omega_p) - profile.k(omega_p + delta) - profile.k(omega_p - delta);
}

PmMap pm_map(const DispersionProfile& profile, double gamma_per_w_km, double power_w,
             const UniformAxis& pump_axis, const UniformAxis& detuning_axis, MapKind kind,
             double length_m, int threads) {
  pump_axis.validate();
  detuning_axis.validate();
  if (kind == MapKind::Spectrum && !(length_m > 0.0)) {
    throw ContractError("spectrum map requires a fibre length > 0");
  }
  const auto usable = profile.usable_window();
  for (int j = 0; j < detuning_axis.count; ++j) {
    for (int i = 0; i < pump_axis.count; ++i) {
      const double p = pump_axis.at(i);
      const double d = detuning_axis.at(j);
      if (!usable.contains(p) || !usable.contains(p + d) || !usable.contains(p - d)) {
        std::ostringstream msg;
        msg.precision(10);
        msg << "pm_map node (pump " << i << ", detuning " << j << ") = (" << p << ", " << d
            << ") rad/fs needs omega outside the usable window [" << usable.omega_min << ", "
            << usable.omega_max << "]";
        throw RangeError(msg.str());
      }
    }
  }

  PmMap map{pump_axis, detuning_axis, {}, kind, power_w, length_m};
  map.values.resize(static_cast<std::size_t>(pump_axis.count) * detuning_axis.count);
  const double length = metres_to_nm(length_m);
  const double power_term = 2.0 * nonlinear_phase_per_nm(gamma_per_w_km, power_w);
  parallel_for(static_cast<std::size_t>(detuning_axis.count), threads, [&](std::size_t j) {
    const double d = detuning_axis.at(static_cast<int>(j));
    for (int i = 0; i < pump_axis.count; ++i) {
      const double dk = delta_k_linear(profile, pump_axis.at(i), d) - power_term;
      const double s = sinc(0.5 * length * dk);
      map.values[j * pump_axis.count + i] = (kind == MapKind::Mismatch) ? dk : s * s;
    }
  });
  return map;
}

double mi_sideband_detuning(const DispersionProfile& profile, double gamma_per_w_km,
                            double power_w, double omega_p) {
  const double k2 = profile.k2(omega_p);
  if (k2 == 0.0) throw EvaluationError("MI sideband detuning is singular at k2 = 0");
  if (k2 > 0.0) {
    throw ContractError("no MI sidebands in the normal-dispersion regime (k2 > 0)");
  }
  return std::sqrt(2.0 * nonlinear_phase_per_nm(gamma_per_w_km, power_w) / std::abs(k2));
}

double critical_power(const DispersionProfile& profile, double gamma_per_w_km,
                      const FgvmPoint& fgvm) {
  if (fgvm.kind != FgvmKind::LoopInterior) {
    throw ContractError("critical power needs a loop-interior FGVM point");
  }
  if (!(gamma_per_w_km > 0.0)) throw ContractError("critical power needs gamma > 0");
  const double dk = delta_k_linear(profile, fgvm.omega_p, fgvm.delta);
  if (!(dk > 0.0)) {
    throw EvaluationError("no phasematching loop: dk_linear <= 0 at the FGVM point");
  }
  return dk / (2.0 * nonlinear_phase_per_nm(gamma_per_w_km, 1.0));
}

std::vector<double> singles_spectrum(const DispersionProfile& profile, double gamma_per_w_km,
                                     double power_w, double length_m, double omega_p,
                                     std::span<const double> omega_axis) {
  const double length = metres_to_nm(length_m);
  std::vector<double> out;
  out.reserve(omega_axis.size());
  for (double w : omega_axis) {
    const double s = sinc(0.5 * length *
                          delta_k_cw(profile, gamma_per_w_km, power_w, w, 2.0 * omega_p - w));
    out.push_back(s * s);
  }
  return out;
}

namespace {

std::pair<double, double> half_max_crossings(std::span<const double> values,
                                             std::span<const double> axis) {
  if (values.size() != axis.size() || values.size() < 3) {
    throw ContractError("fwhm: values and axis must have equal length >= 3");
  }
  const auto peak = std::max_element(values.begin(), values.end());
  const double half = 0.5 * *peak;
  const std::size_t n = values.size();
  std::size_t first = 0;
  while (first < n && values[first] < half) ++first;
  std::size_t last = n - 1;
  while (last > 0 && values[last] < half) --last;
  if (first == 0 || last == n - 1) {
    throw RangeError("fwhm: half-maximum crossing lies outside the sampled axis");
  }
  const auto interp = [&](std::size_t below, std::size_t above) {
    const double t = (half - values[below]) / (values[above] - values[below]);
    return axis[below] + t * (axis[above] - axis[below]);
  };
  return {interp(first - 1, first), interp(last + 1, last)};
}

}  // namespace

double fwhm(std::span<const double> values, std::span<const double> axis) {
  const auto [lo, hi] = half_max_crossings(values, axis);
  return hi - lo;
}

double fwhm_wavelength(std::span<const double> spectrum, std::span<const double> omega_axis) {
  const auto [lo, hi] = half_max_crossings(spectrum, omega_axis);
  return omega_to_wavelength(lo) - omega_to_wavelength(hi);
}

}  // namespace fwm
