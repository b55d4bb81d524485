#include <doctest.h>

#include <cmath>
#include <vector>

#include "../oracles/sellmeier_direct.hpp"
#include "fwm/chebyshev.hpp"
#include "fwm/dispersion.hpp"
#include "fwm/errors.hpp"
#include "fwm/phasematching.hpp"
#include "fwm/units.hpp"

using namespace fwm;

namespace {

FiberSpec silica_fibre(double radius_um) {
  const auto clad = Material::sellmeier(fused_silica_malitson());
  return {radius_um, Material::scaled(clad, 0.0274), clad, 70.0, 0.5};
}

const FrequencyWindow kUnit{1.0, 2.0};

}  // namespace

TEST_CASE("Chebyshev series reproduces a polynomial and its derivative") {
  std::vector<double> x, y;
  for (int i = 0; i < 50; ++i) {
    x.push_back(-1.0 + 4.0 * i / 49.0);
    y.push_back(2.0 - x.back() + 0.5 * std::pow(x.back(), 3));
  }
  const auto s = ChebyshevSeries::fit(x, y, 5, -1.0, 3.0);
  const auto d = s.derivative();
  for (double t : {-0.7, 0.0, 1.3, 2.9}) {
    CHECK(s(t) == doctest::Approx(2.0 - t + 0.5 * t * t * t).epsilon(1e-13));
    CHECK(d(t) == doctest::Approx(-1.0 + 1.5 * t * t).epsilon(1e-13));
  }
}

TEST_CASE("vacuum profile") {
  const auto p = DispersionProfile::fit([](double w) { return w / kSpeedOfLight; }, kUnit);
  CHECK(p.fit_residual() < 1e-14);
  for (double w : {1.1, 1.5, 1.9}) {
    CHECK(p.k1(w) == doctest::Approx(1.0 / kSpeedOfLight).epsilon(1e-12));
    CHECK(std::abs(p.k2(w)) < 1e-10);
  }
}

TEST_CASE("synthetic polynomials are reproduced exactly") {
  const double a = 0.3, b = 0.004, c = 2e-5, d = -7e-6;
  const auto p = DispersionProfile::fit(
      [&](double w) { return a + b * w + c * w * w + d * w * w * w; }, kUnit);
  for (double w : {1.05, 1.5, 1.95}) {
    CHECK(p.k1(w) == doctest::Approx(b + 2 * c * w + 3 * d * w * w).epsilon(1e-12));
    CHECK(p.k2(w) == doctest::Approx(2 * c + 6 * d * w).epsilon(1e-10));
    CHECK(p.k3(w) == doctest::Approx(6 * d).epsilon(1e-8));
  }
  const auto q = DispersionProfile::fit([&](double w) { return a + b * w + c * w * w; }, kUnit);
  CHECK(q.k2(1.3) == doctest::Approx(2 * c).epsilon(1e-10));
}

TEST_CASE("derivative queries outside the shrunk window are range errors") {
  const auto p = DispersionProfile::fit([](double w) { return w * w; }, kUnit);
  CHECK(p.usable_window().omega_min == doctest::Approx(1.02));
  CHECK(p.usable_window().omega_max == doctest::Approx(1.98));
  CHECK_THROWS_AS(p.k(1.01), RangeError);
  CHECK_THROWS_AS(p.k2(1.99), RangeError);
  CHECK_THROWS_AS(p.k_derivative(1.5, 4), ContractError);
  CHECK_NOTHROW(p.k3(1.5));
}

TEST_CASE("sampler failures carry the failing frequency") {
  const auto bad = [](double w) -> double {
    if (w > 1.7) throw ModeCutoffError("cutoff");
    return w;
  };
  try {
    DispersionProfile::fit(bad, kUnit);
    FAIL("expected an error");
  } catch (const ModeCutoffError& e) {
    CHECK(std::string(e.what()).find("omega") != std::string::npos);
  }
}

TEST_CASE("poor fits are rejected") {
  ProfileOptions o;
  o.degree = 3;
  o.samples = 50;
  CHECK_THROWS_AS(DispersionProfile::fit([](double w) { return std::sin(20.0 * w); }, kUnit, o),
                  FitQualityError);
}

TEST_CASE("ZDF of a linear k2 is its root") {
  const double w0 = 1.37, a = 3e-5;
  const auto p = DispersionProfile::fit(
      [&](double w) { return 0.004 * w + a * std::pow(w - w0, 3) / 6.0; }, kUnit);
  const auto z = find_zdfs(p);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == doctest::Approx(w0).epsilon(1e-9));
}

TEST_CASE("bulk silica has one ZDW near 1273 nm") {
  const auto silica = Material::sellmeier(fused_silica_malitson());
  const auto p = DispersionProfile::fit(
      [&](double w) { return silica.refractive_index(omega_to_wavelength(w)) * w / kSpeedOfLight; },
      window_from_wavelengths(900.0, 2000.0));
  const auto z = find_zdfs(p);
  REQUIRE(z.size() == 1);
  // Oracle: bisection on the analytic bulk k2.
  double lo = 1100.0, hi = 1500.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((oracle::silica_bulk_k2(lo) < 0.0) == (oracle::silica_bulk_k2(mid) < 0.0) ? lo : hi) = mid;
  }
  const double zdw = omega_to_wavelength(z[0]);
  CHECK(std::abs(zdw - 0.5 * (lo + hi)) < 0.01);
  CHECK(std::abs(zdw - 1273.0) < 5.0);
  const double w = wavelength_to_omega(1550.0);
  CHECK(p.k2(w) == doctest::Approx(oracle::silica_bulk_k2(1550.0)).epsilon(1e-6));
}

TEST_CASE("r = 1.652 um fibre: three ZDWs") {
  const auto p = build_profile(silica_fibre(1.652), window_from_wavelengths(1000.0, 2400.0));
  CHECK(p.fit_residual() < 1e-9);
  const auto z = find_zdfs(p);
  REQUIRE(z.size() == 3);
  const double expected[3] = {2224.3, 1733.5, 1434.3};  // ascending omega
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(omega_to_wavelength(z[i]) - expected[i]) < 15.0);
    CHECK(std::abs(p.k2(z[i])) < 1e-10);
  }
  // One sign of k2 between consecutive ZDFs.
  for (int i = 0; i + 1 < 3; ++i) {
    const double s = p.k2(0.5 * (z[i] + z[i + 1]));
    for (int j = 1; j <= 100; ++j) {
      const double w = z[i] + (z[i + 1] - z[i]) * j / 101.0;
      CHECK(std::signbit(p.k2(w)) == std::signbit(s));
    }
  }
}

TEST_CASE("tau coefficients") {
  SUBCASE("degenerate centres give zero tau") {
    const auto p = DispersionProfile::fit([](double w) { return 0.005 * w + 1e-5 * w * w * w; }, kUnit);
    const auto t = tau_coefficients(p, 1.0, 0.0, 0.0, 1.5, 1.5, 1.5);
    CHECK(t.tau_s1 == 0.0);
    CHECK(t.tau_i1 == 0.0);
    CHECK(t.tau_s2 == 0.0);
    CHECK(t.tau_i2 == 0.0);
    CHECK(t.l_delta_k0 == 0.0);
  }
  SUBCASE("quartic k against hand derivatives") {
    const double c0 = 0.02, c1 = 5e-3, c2 = 1e-5, c3 = 2e-5, c4 = 3e-5, w0 = 1.5;
    const auto k = [&](double w) {
      const double u = w - w0;
      return c0 + c1 * u + c2 * u * u + c3 * u * u * u + c4 * u * u * u * u;
    };
    // Hand-derived: k1 = c1 + 2 c2 u + 3 c3 u^2 + 4 c4 u^3, k2 = 2 c2 + 6 c3 u + 12 c4 u^2.
    const auto k1 = [&](double u) { return c1 + 2 * c2 * u + 3 * c3 * u * u + 4 * c4 * u * u * u; };
    const auto k2 = [&](double u) { return 2 * c2 + 6 * c3 * u + 12 * c4 * u * u; };
    const auto p = DispersionProfile::fit(k, kUnit);
    const double len = 1e9;  // 1 m in nm
    const auto t = tau_coefficients(p, 1.0, 0.0, 0.0, 1.5, 1.6, 1.4);
    CHECK(t.tau_s1 == doctest::Approx(len * (k1(0.0) - k1(0.1))).epsilon(1e-10));
    CHECK(t.tau_i1 == doctest::Approx(len * (k1(0.0) - k1(-0.1))).epsilon(1e-10));
    CHECK(t.tau_s2 == doctest::Approx(len * (k2(0.0) - k2(0.1)) / 2).epsilon(1e-10));
    CHECK(t.tau_i2 == doctest::Approx(len * (k2(0.0) - k2(-0.1)) / 2).epsilon(1e-10));
    CHECK(t.tau_p2 == doctest::Approx(len * k2(0.0)).epsilon(1e-10));
    CHECK(t.l_delta_k0 == doctest::Approx(len * (2 * k(1.5) - k(1.6) - k(1.4))).epsilon(1e-9));
  }
  SUBCASE("energy conservation is enforced") {
    const auto p = DispersionProfile::fit([](double w) { return w; }, kUnit);
    CHECK_THROWS_AS(tau_coefficients(p, 1.0, 0.0, 0.0, 1.5, 1.6, 1.5), ContractError);
  }
}

TEST_CASE("theta_pm") {
  CHECK(theta_pm(0.0, 3.0) == 0.0);
  CHECK(theta_pm(2.0, 0.0) == 90.0);
  CHECK(theta_pm(-2.0, 0.0) == 90.0);
  CHECK(theta_pm(1.5, 1.5) == doctest::Approx(-45.0));
  CHECK(theta_pm(1.0, -1.0) == doctest::Approx(45.0));
  CHECK_THROWS_AS(theta_pm(0.0, 0.0), EvaluationError);
  for (double s : {0.1, 3.0, 1e4}) CHECK(theta_pm(0.3 * s, 0.7 * s) == doctest::Approx(theta_pm(0.3, 0.7)));
}

TEST_CASE("FGVM point of a symmetric cubic group delay") {
  // k1 = b + A [(w - wv)^3 - W^2 (w - wv)] takes the same value at wv, wv +/- W.
  const double wv = 1.5, big_w = 0.2, amp = 1e-4, b = 5e-3;
  const auto p = DispersionProfile::fit(
      [&](double w) {
        const double u = w - wv;
        return b * w + amp * (u * u * u * u / 4.0 - big_w * big_w * u * u / 2.0);
      },
      kUnit);
  const auto pts = find_fgvm_points(p, {1.3, 1.7});
  std::vector<FgvmPoint> interior;
  for (const auto& q : pts) {
    if (q.kind == FgvmKind::LoopInterior) interior.push_back(q);
  }
  REQUIRE(interior.size() == 1);
  CHECK(interior[0].omega_p == doctest::Approx(wv).epsilon(1e-10));
  CHECK(interior[0].delta == doctest::Approx(big_w).epsilon(1e-10));
  CHECK(interior[0].omega_s + interior[0].omega_i == 2.0 * interior[0].omega_p);
  CHECK(interior[0].omega_s - wv == doctest::Approx(wv - interior[0].omega_i).epsilon(1e-12));
}

TEST_CASE("r = 1.644 um fibre: FGVM point") {
  const auto p = build_profile(silica_fibre(1.644), window_from_wavelengths(1000.0, 2400.0));
  const auto pts = find_fgvm_points(p, window_from_wavelengths(1300.0, 1900.0));
  int degenerate = 0;
  std::vector<FgvmPoint> interior;
  for (const auto& q : pts) {
    if (q.kind == FgvmKind::PumpDegenerate) {
      ++degenerate;
      CHECK(q.delta == 0.0);
    } else {
      interior.push_back(q);
    }
  }
  CHECK(degenerate == 2);
  REQUIRE(interior.size() == 1);
  const auto& g = interior[0];
  CHECK(std::abs(omega_to_wavelength(g.omega_p) - 1552.1) < 15.0);
  // k1 equality and vanishing gradient of dk_linear agree.
  const double kp = p.k1(g.omega_p);
  CHECK(std::abs(p.k1(g.omega_s) - kp) < 1e-12 * kp);
  CHECK(std::abs(p.k1(g.omega_i) - kp) < 1e-12 * kp);
  const double grad_p = 2.0 * kp - p.k1(g.omega_s) - p.k1(g.omega_i);
  const double grad_d = p.k1(g.omega_i) - p.k1(g.omega_s);
  CHECK(std::abs(grad_p) < 1e-12 * kp);
  CHECK(std::abs(grad_d) < 1e-12 * kp);
  const auto t = tau_coefficients(p, 0.5, 70.0, 0.0, g.omega_p, g.omega_s, g.omega_i);
  CHECK(std::abs(t.tau_s1) < 1e-6);
  CHECK(std::abs(t.tau_i1) < 1e-6);
}

TEST_CASE("FGVM points coalesce as the core shrinks") {
  const auto window = window_from_wavelengths(1000.0, 2400.0);
  const auto pump = window_from_wavelengths(1300.0, 1900.0);
  const auto interior_of = [&](double r) {
    std::vector<FgvmPoint> out;
    for (const auto& q : find_fgvm_points(build_profile(silica_fibre(r), window), pump)) {
      if (q.kind == FgvmKind::LoopInterior) out.push_back(q);
    }
    return out;
  };
  // Below 1.643 um the two lower ZDFs have annihilated: no point left.
  CHECK(interior_of(1.643).empty());
  CHECK(interior_of(1.644).size() == 1);

  double lo = 1.643, hi = 1.644;
  for (int i = 0; i < 20; ++i) {
    const double mid = 0.5 * (lo + hi);
    (interior_of(mid).empty() ? lo : hi) = mid;
  }
  // Just above the merge radius all four points {zd1, 0}, {zd2, 0}, {gvm, +/-D}
  // sit close together; Delta and the ZDF spacing shrink like sqrt(r - r_merge).
  const auto spread = [&](double r) {
    const auto p = build_profile(silica_fibre(r), window);
    std::vector<std::pair<double, double>> pts;
    for (const auto& q : find_fgvm_points(p, pump)) {
      pts.push_back({q.omega_p, q.delta});
      if (q.kind == FgvmKind::LoopInterior) pts.push_back({q.omega_p, -q.delta});
    }
    REQUIRE(pts.size() == 4);
    double worst = 0.0;
    for (const auto& a : pts) {
      for (const auto& b : pts) worst = std::max(worst, std::hypot(a.first - b.first, a.second - b.second));
    }
    return worst;
  };
  const double near = spread(hi);
  const double farther = spread(hi + 1e-4);
  CHECK(near < 1e-3);
  CHECK(farther > 10.0 * near);
  CHECK(hi - 1.643 < 1e-3);
}
