#pragma once

// Reference values of Phi(a; x) straight from the Gaussian-pump integral.
//
// With a Gaussian pump and a quadratic mismatch, the pump integral of the
// JSA reduces (after removing the pump envelope in nu_s + nu_i) to
//   Phi(a; x) = sqrt(2)/pi * int ds exp(-2 s^2) E(a (2 s^2 - x^2)),
//   E(D) = (exp(iD) - 1) / (iD)  =  sinc(D/2) exp(iD/2),
// i.e. the sinc * phase kernel of the pump integral. Integrated here with
// adaptive Simpson on [-8, 8].

#include <cmath>
#include <complex>

namespace oracle {

namespace detail {

using cd = std::complex<double>;

inline cd kernel(double a, double x, double s) {
  const double d = a * (2.0 * s * s - x * x);
  cd e;
  if (std::abs(d) < 1e-8) {
    e = cd(1.0, d / 2.0);
  } else {
    e = (std::exp(cd(0.0, d)) - 1.0) / cd(0.0, d);
  }
  return std::exp(-2.0 * s * s) * e;
}

template <typename F>
cd simpson(const F& f, double lo, double hi, cd flo, cd fmid, cd fhi, cd whole, double tol,
           int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
  const cd flm = f(lm), frm = f(rm);
  const cd left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const cd right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const cd diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) < 15.0 * tol) return left + right + diff / 15.0;
  return simpson(f, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
         simpson(f, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

}  // namespace detail

inline std::complex<double> phi_reference(double a, double x) {
  const auto f = [&](double s) { return detail::kernel(a, x, s); };
  // Split into panels so the adaptive rule sees every oscillation.
  const int panels = 256;
  const double lo = -8.0, hi = 8.0, h = (hi - lo) / panels;
  std::complex<double> total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a0 = lo + p * h, b0 = a0 + h, m0 = 0.5 * (a0 + b0);
    const auto fa = f(a0), fm = f(m0), fb = f(b0);
    const auto whole = h / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson(f, a0, b0, fa, fm, fb, whole, 1e-14, 40);
  }
  return std::sqrt(2.0) / M_PI * total;
}

// Same function from its one-dimensional integral over the unit interval,
//   Phi(a; x) = pi^(-1/2) int_0^1 (1 - i a t)^(-1/2) exp(-i a t x^2) dt,
// valid for complex x. Composite Simpson with n panels.
inline std::complex<double> phi_unit_interval(double a, std::complex<double> x, int n = 20000) {
  using cd = std::complex<double>;
  const auto g = [&](double t) {
    return std::exp(cd(0.0, -a * t) * x * x) / std::sqrt(cd(1.0, -a * t));
  };
  cd sum = g(0.0) + g(1.0);
  const double h = 1.0 / n;
  for (int k = 1; k < n; ++k) sum += (k % 2 ? 4.0 : 2.0) * g(k * h);
  return sum * h / 3.0 / std::sqrt(M_PI);
}

}  // namespace oracle
