#include "fwm/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fwm/errors.hpp"
#include "fwm/phasematching.hpp"
#include "fwm/units.hpp"

namespace fwm {

namespace {

constexpr int kZdfScanPoints = 4000;
constexpr double kRootRelTol = 1e-14;

std::string omega_message(const char* what, double omega, FrequencyWindow w) {
  std::ostringstream msg;
  msg.precision(10);
  msg << what << ": omega " << omega << " rad/fs outside usable window [" << w.omega_min << ", "
      << w.omega_max << "]";
  return msg.str();
}

template <typename F>
double bisect(F&& f, double a, double b, double fa) {
  while (b - a > kRootRelTol * std::max(std::abs(a), std::abs(b))) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

FrequencyWindow window_from_wavelengths(double lambda_lo_nm, double lambda_hi_nm) {
  if (!(lambda_lo_nm > 0.0 && lambda_hi_nm > lambda_lo_nm)) {
    throw ValidationError("wavelength window must satisfy 0 < lambda_min < lambda_max");
  }
  return {wavelength_to_omega(lambda_hi_nm), wavelength_to_omega(lambda_lo_nm)};
}

DispersionProfile DispersionProfile::fit(const std::function<double(double)>& k_of_omega,
                                         FrequencyWindow window, const ProfileOptions& options) {
  if (!(window.omega_max > window.omega_min && window.omega_min > 0.0)) {
    throw ContractError("dispersion window must satisfy 0 < omega_min < omega_max");
  }
  if (options.degree < 3) throw ContractError("profile degree must be >= 3");
  if (options.samples < 2 * (options.degree + 1)) {
    throw ContractError("profile needs samples >= 2*(degree+1)");
  }

  std::vector<double> omega(options.samples);
  std::vector<double> k(options.samples);
  for (int i = 0; i < options.samples; ++i) {
    omega[i] = window.omega_min + window.width() * i / (options.samples - 1);
    const auto annotate = [&](const std::exception& e) {
      std::ostringstream msg;
      msg.precision(10);
      msg << "profile sample at omega = " << omega[i] << " rad/fs ("
          << omega_to_wavelength(omega[i]) << " nm) failed: " << e.what();
      return msg.str();
    };
    try {
      k[i] = k_of_omega(omega[i]);
    } catch (const ModeCutoffError& e) {
      throw ModeCutoffError(annotate(e));
    } catch (const RangeError& e) {
      throw RangeError(annotate(e));
    } catch (const EvaluationError& e) {
      throw EvaluationError(annotate(e));
    } catch (const NumericalError& e) {
      throw NumericalError(annotate(e));
    }
  }

  DispersionProfile profile;
  profile.window_ = window;
  profile.degree_ = options.degree;
  profile.series_[0] =
      ChebyshevSeries::fit(omega, k, options.degree, window.omega_min, window.omega_max);
  for (int n = 1; n < 4; ++n) profile.series_[n] = profile.series_[n - 1].derivative();

  double residual = 0.0;
  for (int i = 0; i < options.samples; ++i) {
    residual = std::max(residual, std::abs(profile.series_[0](omega[i]) - k[i]));
  }
  profile.residual_ = residual;
  if (!(residual < options.max_residual)) {
    std::ostringstream msg;
    msg << "dispersion fit residual " << residual << " rad/nm exceeds " << options.max_residual
        << " (degree " << options.degree << ", " << options.samples << " samples)";
    throw FitQualityError(msg.str());
  }
  return profile;
}

FrequencyWindow DispersionProfile::usable_window() const {
  const double edge = kEdgeFraction * window_.width();
  return {window_.omega_min + edge, window_.omega_max - edge};
}

double DispersionProfile::k_derivative(double omega, int order) const {
  if (order < 0 || order > 3) throw ContractError("k_derivative order must be in 0..3");
  const auto usable = usable_window();
  if (!usable.contains(omega)) throw RangeError(omega_message("k_derivative", omega, usable));
  return series_[order](omega);
}

DispersionProfile build_profile(const FiberSpec& fiber, FrequencyWindow window,
                                const ProfileOptions& options) {
  fiber.validate();
  return DispersionProfile::fit(
      [&fiber](double omega) { return propagation_constant(fiber, omega); }, window, options);
}

std::vector<double> find_zdfs(const DispersionProfile& profile) {
  const auto w = profile.usable_window();
  auto k2 = [&profile](double omega) { return profile.k2(omega); };
  auto k3 = [&profile](double omega) { return profile.k3(omega); };

  // Breakpoints: the scan grid plus every extremum of k2 (root of k3), so
  // that k2 is monotone between neighbours and a pair of nearly coincident
  // zeros straddling an extremum is not missed.
  std::vector<double> grid;
  grid.reserve(kZdfScanPoints + 16);
  for (int i = 0; i < kZdfScanPoints; ++i) {
    grid.push_back(i == kZdfScanPoints - 1 ? w.omega_max
                                           : w.omega_min + w.width() * i / (kZdfScanPoints - 1));
  }
  std::vector<double> points = grid;
  double prev3 = k3(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double value = k3(grid[i]);
    if (prev3 != 0.0 && value != 0.0 && std::signbit(value) != std::signbit(prev3)) {
      points.push_back(bisect(k3, grid[i - 1], grid[i], prev3));
    }
    prev3 = value;
  }
  std::sort(points.begin(), points.end());

  std::vector<double> roots;
  double prev_omega = points[0];
  double prev = k2(prev_omega);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double omega = points[i];
    const double value = k2(omega);
    if (prev == 0.0) {
      roots.push_back(prev_omega);
    } else if (value != 0.0 && std::signbit(value) != std::signbit(prev)) {
      roots.push_back(bisect(k2, prev_omega, omega, prev));
    }
    prev_omega = omega;
    prev = value;
  }
  return roots;
}

TauSet tau_coefficients(const DispersionProfile& profile, double length_m, double gamma_per_w_km,
                        double power_w, double omega_p, double omega_s0, double omega_i0) {
  if (std::abs(omega_s0 + omega_i0 - 2.0 * omega_p) > 1e-12 * omega_p) {
    throw ContractError("tau_coefficients requires omega_s0 + omega_i0 = 2 omega_p");
  }
  const double length = metres_to_nm(length_m);
  TauSet tau;
  tau.omega_p = omega_p;
  tau.omega_s0 = omega_s0;
  tau.omega_i0 = omega_i0;
  const double k1p = profile.k1(omega_p);
  const double k2p = profile.k2(omega_p);
  tau.tau_s1 = length * (k1p - profile.k1(omega_s0));
  tau.tau_i1 = length * (k1p - profile.k1(omega_i0));
  tau.tau_s2 = length * (k2p - profile.k2(omega_s0)) / 2.0;
  tau.tau_i2 = length * (k2p - profile.k2(omega_i0)) / 2.0;
  tau.tau_p2 = length * k2p;
  tau.l_delta_k0 = length * delta_k_cw(profile, gamma_per_w_km, power_w, omega_s0, omega_i0);
  return tau;
}

double theta_pm(double tau_s1, double tau_i1) {
  if (tau_s1 == 0.0 && tau_i1 == 0.0) {
    throw EvaluationError("theta_pm undefined: both first-order tau vanish (FGVM point)");
  }
  if (tau_i1 == 0.0) return 90.0;
  const double theta = -std::atan(tau_s1 / tau_i1) * 180.0 / std::numbers::pi;
  return theta + 0.0;  // no negative zero
}

std::string to_string(FgvmKind kind) {
  return kind == FgvmKind::PumpDegenerate ? "pump-degenerate" : "loop-interior";
}

namespace {

// Scaled stationarity residual of dk_linear for Delta > 0:
//   h1 = [2 k1(p) - k1(p+D) - k1(p-D)] / D^2   -> -k3(p)  as D -> 0
//   h2 = [k1(p-D) - k1(p+D)] / (2 D)            -> -k2(p)  as D -> 0
// Both vanish iff k1(p) = k1(p+D) = k1(p-D); the trivial Delta = 0 line of the
// unscaled gradient is divided out.
struct StationarityResidual {
  const DispersionProfile& profile;

  struct Eval {
    double h1, h2;
    double j11, j12, j21, j22;  // d(h1,h2)/d(p,D)
  };

  Eval operator()(double p, double d) const {
    const double kp1 = profile.k1(p), ks1 = profile.k1(p + d), ki1 = profile.k1(p - d);
    const double kp2 = profile.k2(p), ks2 = profile.k2(p + d), ki2 = profile.k2(p - d);
    Eval e{};
    e.h1 = (2.0 * kp1 - ks1 - ki1) / (d * d);
    e.h2 = (ki1 - ks1) / (2.0 * d);
    e.j11 = (2.0 * kp2 - ks2 - ki2) / (d * d);
    e.j12 = (ki2 - ks2) / (d * d) - 2.0 * e.h1 / d;
    e.j21 = (ki2 - ks2) / (2.0 * d);
    e.j22 = -(ki2 + ks2) / (2.0 * d) - e.h2 / d;
    return e;
  }
};

}  // namespace

std::vector<FgvmPoint> find_fgvm_points(const DispersionProfile& profile,
                                        FrequencyWindow pump_window,
                                        const FgvmSearchOptions& options) {
  const auto usable = profile.usable_window();
  const double p_lo = std::max(pump_window.omega_min, usable.omega_min);
  const double p_hi = std::min(pump_window.omega_max, usable.omega_max);
  std::vector<FgvmPoint> points;
  if (!(p_hi > p_lo)) return points;

  for (double zdf : find_zdfs(profile)) {
    if (zdf >= p_lo && zdf <= p_hi) {
      points.push_back({zdf, 0.0, zdf, zdf, FgvmKind::PumpDegenerate});
    }
  }

  const auto valid = [&usable](double p, double d) {
    return d > 0.0 && usable.contains(p + d) && usable.contains(p - d);
  };

  const int np = options.pump_points;
  const int nd = options.detuning_points;
  const double d_max = 0.5 * usable.width();
  std::vector<double> pump(np), det(nd);
  for (int i = 0; i < np; ++i) pump[i] = p_lo + (p_hi - p_lo) * i / (np - 1);
  for (int j = 0; j < nd; ++j) det[j] = d_max * (j + 1) / nd;

  // Component scales so that neither residual dominates the merit function.
  double s1 = 0.0, s2 = 0.0;
  for (double p : pump) {
    s1 = std::max(s1, std::abs(profile.k3(p)));
    s2 = std::max(s2, std::abs(profile.k2(p)));
  }
  if (s1 == 0.0) s1 = 1.0;
  if (s2 == 0.0) s2 = 1.0;

  StationarityResidual residual{profile};
  const auto merit = [&](double p, double d) {
    const auto e = residual(p, d);
    return std::hypot(e.h1 / s1, e.h2 / s2);
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(static_cast<std::size_t>(np) * nd, inf);
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < nd; ++j) {
      if (valid(pump[i], det[j])) grid[i * nd + j] = merit(pump[i], det[j]);
    }
  }

  struct Candidate {
    double value;
    int i, j;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < np; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double v = grid[i * nd + j];
      if (!std::isfinite(v)) continue;
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || ii >= np || jj < 0 || jj >= nd) continue;
          if (grid[ii * nd + jj] < v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) candidates.push_back({v, i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  if (candidates.size() > 64) candidates.resize(64);

  std::vector<FgvmPoint> interior;
  for (const auto& c : candidates) {
    double p = pump[c.i];
    double d = det[c.j];
    double m = c.value;
    bool converged = false;
    for (int iter = 0; iter < 100; ++iter) {
      const auto e = residual(p, d);
      const double det_j = e.j11 * e.j22 - e.j12 * e.j21;
      if (det_j == 0.0 || !std::isfinite(det_j)) break;
      const double dp = -(e.j22 * e.h1 - e.j12 * e.h2) / det_j;
      const double dd = -(-e.j21 * e.h1 + e.j11 * e.h2) / det_j;
      double step = 1.0;
      bool accepted = false;
      while (step > 1e-8) {
        const double tp = p + step * dp, td = d + step * dd;
        if (valid(tp, td) && tp >= p_lo && tp <= p_hi) {
          const double tm = merit(tp, td);
          if (tm < m || tm == 0.0) {
            p = tp;
            d = td;
            m = tm;
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) {
        // Merit stalled at rounding level; the k1 check below decides.
        converged = true;
        break;
      }
      if (std::abs(step * dp) + std::abs(step * dd) < 1e-15 * p) {
        converged = true;
        break;
      }
    }
    if (!converged || !(d > options.merge_distance)) continue;
    const double kp = profile.k1(p);
    const double tol = 1e-12 * std::abs(kp);
    if (std::abs(profile.k1(p + d) - kp) > tol || std::abs(profile.k1(p - d) - kp) > tol) {
      continue;
    }
    // At small Delta the unscaled check above is met by any near-degenerate
    // pump; the scaled residual must also sit at rounding level.
    const auto e = residual(p, d);
    const double noise = 16.0 * std::numeric_limits<double>::epsilon() * std::abs(kp);
    if (std::abs(e.h2) > noise / d || std::abs(e.h1) > noise / (d * d)) continue;
    const bool duplicate = std::any_of(interior.begin(), interior.end(), [&](const FgvmPoint& q) {
      return std::abs(q.omega_p - p) < options.merge_distance &&
             std::abs(q.delta - d) < options.merge_distance;
    });
    if (!duplicate) interior.push_back({p, d, p + d, p - d, FgvmKind::LoopInterior});
  }
  std::sort(interior.begin(), interior.end(),
            [](const FgvmPoint& a, const FgvmPoint& b) { return a.omega_p < b.omega_p; });
  points.insert(points.end(), interior.begin(), interior.end());
  return points;
}

}  // namespace fwm
