#include <doctest.h>

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "../oracles/phi_quadrature.hpp"
#include "fwm/biphoton.hpp"
#include "fwm/contour.hpp"
#include "fwm/dispersion.hpp"
#include "fwm/errors.hpp"
#include "fwm/phasematching.hpp"
#include "fwm/units.hpp"

using namespace fwm;
using cd = std::complex<double>;

namespace {

FiberSpec fig3_fibre() {
  const auto clad = Material::sellmeier(fused_silica_malitson());
  return {1.644, Material::scaled(clad, 0.0274), clad, 70.0, 0.5};
}

const DispersionProfile& fig3_profile() {
  static const DispersionProfile p = [] {
    ProfileOptions o;
    o.degree = 20;
    return build_profile(fig3_fibre(), window_from_wavelengths(950.0, 2900.0), o);
  }();
  return p;
}

bool rel_close(cd got, cd want, double tol) { return std::abs(got - want) <= tol * std::abs(want); }

}  // namespace

TEST_CASE("Phi matches the pump-integral quadrature") {
  for (double a : {0.5, 2.0, 10.0, -3.0}) {
    for (double x : {0.3, 1.0, 3.0}) {
      CAPTURE(a);
      CAPTURE(x);
      CHECK(rel_close(phi_function(a, x), oracle::phi_reference(a, x), 1e-6));
    }
  }
}

TEST_CASE("Phi for complex arguments") {
  for (double a : {0.3, 2.0, -57.5}) {
    for (cd x : {cd(0.4, 0.3), cd(0.0, 1.2), cd(1.5, -0.7), cd(-0.2, 2.0)}) {
      CAPTURE(a);
      CAPTURE(x);
      CHECK(rel_close(phi_function(a, x), oracle::phi_unit_interval(a, x, 200000), 1e-8));
    }
  }
}

TEST_CASE("Phi is even") {
  for (double a : {0.5, 2.0, 10.0, -57.5}) {
    for (cd x : {cd(0.3, 0.0), cd(1.0, 0.0), cd(3.0, 0.0), cd(0.7, 0.4), cd(0.0, 2.0)}) {
      const cd p = phi_function(a, x), m = phi_function(a, -x);
      CHECK(std::abs(std::abs(p) - std::abs(m)) <= 1e-12 * std::abs(p));
      CHECK(std::abs(p - m) <= 1e-12 * std::abs(p));
    }
  }
}

TEST_CASE("series and direct branches meet at |x| = 1e-4") {
  for (double a : {0.01, 0.5, 2.0, 10.0, -57.5}) {
    for (cd dir : {cd(1.0, 0.0), cd(0.0, 1.0), cd(0.6, 0.8)}) {
      const cd below = phi_function(a, dir * (1e-4 * (1.0 - 1e-9)));
      const cd above = phi_function(a, dir * (1e-4 * (1.0 + 1e-9)));
      CHECK(std::abs(below - above) < 1e-8);
    }
  }
  // Value at the origin: pi^(-1/2) int_0^1 (1 - i a t)^(-1/2) dt = 2 (1 - s) / (i a sqrt(pi)).
  const double a = 2.0;
  const cd s = std::sqrt(cd(1.0, -a));
  CHECK(rel_close(phi_function(a, 0.0), 2.0 * (1.0 - s) / (cd(0.0, a) * std::sqrt(M_PI)), 1e-14));
}

TEST_CASE("Phi stays finite for large arguments") {
  for (double x : {10.0, 30.0, 100.0}) {
    const cd v = phi_function(-57.5, x);
    CHECK(std::isfinite(v.real()));
    CHECK(std::isfinite(v.imag()));
    CHECK(std::abs(v) < 1.0);
  }
  CHECK_THROWS_AS(phi_function(0.0, 1.0), EvaluationError);
}

TEST_CASE("Z and beta") {
  TauSet t;
  t.tau_s2 = 3.0;
  t.tau_i2 = 4.0;
  t.tau_p2 = -2.0;
  CHECK(beta_mismatch(t, 0.0, 0.0) == 0.0);
  CHECK(zeta_function(t, 0.1, 0.0, 0.0) == cd(0.0, 0.0));
  t.tau_s1 = 1.0;
  t.tau_i1 = -0.5;
  t.l_delta_k0 = 0.25;
  CHECK(beta_mismatch(t, 0.2, 0.3) ==
        doctest::Approx(0.25 + 0.2 - 0.15 + 3.0 * 0.04 + 4.0 * 0.09 - 2.0 * 0.06));
  const cd z = zeta_function(t, 0.1, 0.2, 0.3);
  const cd rad = 0.25 - 4.0 * beta_mismatch(t, 0.2, 0.3) / -2.0;
  CHECK(std::abs(z - std::sqrt(rad) / (std::sqrt(2.0) * 0.1)) < 1e-14);
  t.tau_p2 = 0.0;
  CHECK_THROWS_AS(zeta_function(t, 0.1, 0.0, 0.0), EvaluationError);
}

TEST_CASE("pump bandwidth conversion") {
  const double sigma = sigma_from_fwhm_nm(6.29, 628.5);
  const double width = wavelength_width_to_omega(6.29, 628.5);
  std::vector<double> x, y;
  for (int i = 0; i <= 20000; ++i) {
    x.push_back(-3.0 * sigma + 6.0 * sigma * i / 20000.0);
    y.push_back(std::norm(std::exp(-x.back() * x.back() / (sigma * sigma))));
  }
  CHECK(fwhm(y, x) == doctest::Approx(width).epsilon(1e-6));
}

TEST_CASE("analytic JSA") {
  TauSet t;
  t.omega_s0 = 1.3;
  t.omega_i0 = 1.1;
  t.omega_p = 1.2;
  t.tau_s2 = 1e5;
  t.tau_i2 = 1e5;
  t.tau_p2 = 1e3;
  const PumpSpec pump{1.2, std::sqrt(2.0 / 1e3), 1.0};
  CHECK(c0_parameter(t, pump) == doctest::Approx(1.0));

  SUBCASE("normalized") {
    const auto g = jsa_analytic(t, pump, UniformAxis::centred(1.3, 0.02, 64),
                                UniformAxis::centred(1.1, 0.02, 64));
    CHECK(g.normalized);
    CHECK(g.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("continuous along grid rows") {
    const auto g = jsa_analytic(t, pump, UniformAxis::centred(1.3, 0.01, 401),
                                UniformAxis::centred(1.1, 0.01, 401));
    const double peak = g.amplitude.cwiseAbs().maxCoeff();
    double jump = 0.0;
    for (int i = 0; i < 401; ++i) {
      for (int j = 0; j + 1 < 401; ++j) jump = std::max(jump, std::abs(g.amplitude(i, j + 1) - g.amplitude(i, j)));
    }
    CHECK(jump < 0.05 * peak);
  }

  SUBCASE("iso-magnitude contours of Phi are circles") {
    const auto sa = UniformAxis::centred(0.0, 0.012, 241);
    std::vector<double> field;
    for (int j = 0; j < sa.count; ++j) {
      for (int i = 0; i < sa.count; ++i) {
        field.push_back(std::abs(phi_function(1.0, zeta_function(t, pump.sigma, sa.at(i), sa.at(j)))));
      }
    }
    const double peak = *std::max_element(field.begin(), field.end());
    const auto contours = trace_isolines(field, sa, sa, 0.5 * peak);
    REQUIRE(contours.size() == 1);
    REQUIRE(contours[0].closed);
    // Least-squares conic A x^2 + B xy + C y^2 = 1 through the half-maximum contour.
    const auto& v = contours[0].vertices;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(v.size()), 3);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
      m(k, 0) = v[k].x * v[k].x;
      m(k, 1) = v[k].x * v[k].y;
      m(k, 2) = v[k].y * v[k].y;
    }
    const Eigen::Vector3d c = m.colPivHouseholderQr().solve(ones);
    Eigen::Matrix2d q;
    q << c(0), c(1) / 2, c(1) / 2, c(2);
    const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(q).eigenvalues();
    const double eccentricity = std::sqrt(1.0 - ev.minCoeff() / ev.maxCoeff());
    CHECK(eccentricity < 0.1);
  }

  SUBCASE("tau_p2 = 0 is rejected") {
    TauSet z = t;
    z.tau_p2 = 0.0;
    CHECK_THROWS_AS(jsa_analytic(z, pump, UniformAxis::centred(1.3, 0.02, 8), UniformAxis::centred(1.1, 0.02, 8)),
                    EvaluationError);
  }
}

TEST_CASE("numeric JSA is symmetric under signal-idler exchange") {
  const double wp = wavelength_to_omega(1552.1);
  const PumpSpec pump{wp, 0.01, 0.5};
  const auto axis = UniformAxis::centred(wp, 0.12, 61);
  NumericJsaOptions o;
  o.check_convergence = false;
  const auto g = jsa_numeric(fig3_profile(), fig3_fibre(), pump, axis, axis, o);
  const double peak = g.amplitude.cwiseAbs().maxCoeff();
  for (int i = 0; i < axis.count; ++i) {
    for (int j = 0; j < axis.count; ++j) {
      CHECK(std::abs(g.amplitude(i, j) - g.amplitude(j, i)) <= 1e-10 * peak);
    }
  }
}

TEST_CASE("cw amplitude") {
  const auto& p = fig3_profile();
  const auto fibre = fig3_fibre();
  const double wp = wavelength_to_omega(1552.1);
  const auto axis = UniformAxis::centred(wp, 0.35, 701);
  const auto cw = jsa_cw(p, fibre, 0.5, wp, axis);
  const auto s = singles_spectrum(p, 70.0, 0.5, 0.5, wp, cw.omega);
  double norm = 0.0;
  for (std::size_t i = 0; i < cw.omega.size(); ++i) {
    CHECK(std::abs(std::norm(cw.amplitude[i] * cw.scale) - s[i]) < 1e-12);
    CHECK(std::abs(cw.amplitude[i]) ==
          doctest::Approx(std::abs(cw.amplitude[cw.omega.size() - 1 - i])).epsilon(1e-9));
    norm += std::norm(cw.amplitude[i]);
  }
  CHECK(norm * axis.step() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("narrow pump: the JSA collapses onto the cw anti-diagonal") {
  const auto& p = fig3_profile();
  const auto fibre = fig3_fibre();
  const double wp = wavelength_to_omega(1552.1);
  const double half = 0.2;
  const int n = 401;
  const auto axis = UniformAxis::centred(wp, half, n);
  const PumpSpec pump{wp, 0.01 * 2.0 * half, 0.5};
  NumericJsaOptions o;
  o.check_convergence = false;
  const auto g = jsa_numeric(p, fibre, pump, axis, axis, o);
  const auto cw = jsa_cw(p, fibre, 0.5, wp, axis);

  // Off the anti-diagonal the amplitude is exponentially small.
  const double peak = g.amplitude.cwiseAbs().maxCoeff();
  CHECK(std::abs(g.amplitude(n / 2, n / 2 + 40)) < 1e-6 * peak);

  double anti_max = 0.0, cw_max = 0.0;
  for (int i = 0; i < n; ++i) {
    anti_max = std::max(anti_max, std::norm(g.amplitude(i, n - 1 - i)));
    cw_max = std::max(cw_max, std::norm(cw.amplitude[static_cast<std::size_t>(i)]));
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double num = std::norm(g.amplitude(i, n - 1 - i)) / anti_max;
    const double ref = std::norm(cw.amplitude[static_cast<std::size_t>(i)]) / cw_max;
    worst = std::max(worst, std::abs(num - ref));
  }
  CHECK(worst < 0.01);
}

TEST_CASE("one quadrature node at the pump centre reproduces the cw phase") {
  const auto& p = fig3_profile();
  const auto fibre = fig3_fibre();
  const double wp = wavelength_to_omega(1552.1);
  const auto axis = UniformAxis::centred(wp, 0.2, 61);
  NumericJsaOptions o;
  o.nodes = 1;
  o.check_convergence = false;
  const auto g = jsa_numeric(p, fibre, {wp, 0.02, 0.5}, axis, axis, o);
  const auto cw = jsa_cw(p, fibre, 0.5, wp, axis);
  const cd ratio0 = g.amplitude(30, 30) / cw.amplitude[30];
  for (int i = 0; i < axis.count; ++i) {
    const cd ratio = g.amplitude(i, axis.count - 1 - i) / cw.amplitude[static_cast<std::size_t>(i)];
    CHECK(std::abs(ratio - ratio0) < 1e-7 * std::abs(ratio0));
  }
}

TEST_CASE("numeric JSA error paths") {
  const auto& p = fig3_profile();
  const auto fibre = fig3_fibre();
  const double wp = wavelength_to_omega(1552.1);
  const auto axis = UniformAxis::centred(wp, 0.1, 33);
  NumericJsaOptions o;
  o.nodes = 3;
  CHECK_THROWS_AS(jsa_numeric(p, fibre, {wp, 0.05, 0.5}, axis, axis, o), AccuracyError);
  CHECK_THROWS_AS(jsa_numeric(p, fibre, {wp, 0.3, 0.5}, axis, axis), RangeError);
  CHECK_THROWS_AS(jsa_numeric(p, fibre, {wp, 0.0, 0.5}, axis, axis), ValidationError);
}
