#include "fwm/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fwm/errors.hpp"

namespace fwm {

namespace {

using cd = std::complex<double>;

constexpr int kTerms = 40;
constexpr double kExpLimit = 700.0;

struct Weideman {
  double l;
  std::array<double, kTerms> a;  // a[n-1] multiplies Z^(n-1)

  Weideman() {
    // J. A. C. Weideman, SIAM J. Numer. Anal. 31, 1497 (1994).
    constexpr int m = 2 * kTerms;
    constexpr int m2 = 2 * m;
    l = std::sqrt(kTerms / std::numbers::sqrt2);
    std::array<double, m2> f{};  // f[0] = 0 pads the k = -m sample
    for (int k = -m + 1; k < m; ++k) {
      const double t = l * std::tan(k * std::numbers::pi / (2.0 * m));
      f[k + m] = std::exp(-t * t) * (l * l + t * t);
    }
    // a_n = Re(DFT(fftshift(f)))_n / m2 for n = 1..N.
    for (int n = 1; n <= kTerms; ++n) {
      double sum = 0.0;
      for (int q = 0; q < m2; ++q) {
        const double g = f[(q + m2 / 2) % m2];
        sum += g * std::cos(2.0 * std::numbers::pi * n * q / m2);
      }
      a[n - 1] = sum / m2;
    }
  }

  cd operator()(cd z) const {
    const cd denom = cd(l, 0.0) - cd(0.0, 1.0) * z;
    const cd zz = (cd(l, 0.0) + cd(0.0, 1.0) * z) / denom;
    cd p = 0.0;
    for (int n = kTerms - 1; n >= 0; --n) p = p * zz + a[n];
    return 2.0 * p / (denom * denom) + std::numbers::inv_sqrtpi / denom;
  }
};

const Weideman& weideman() {
  static const Weideman instance;
  return instance;
}

cd checked_exp(cd arg, const char* what, cd z) {
  if (arg.real() > kExpLimit) {
    std::ostringstream msg;
    msg << what << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
        << "i) overflows double precision";
    throw RangeError(msg.str());
  }
  return std::exp(arg);
}

cd erf_taylor(cd z) {
  // erf z = 2/sqrt(pi) sum_n (-1)^n z^(2n+1) / (n! (2n+1)), |z| < 0.5
  const cd z2 = z * z;
  cd term = z;
  cd sum = z;
  for (int n = 1; n < 40; ++n) {
    term *= -z2 / static_cast<double>(n);
    const cd add = term / static_cast<double>(2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return 2.0 * std::numbers::inv_sqrtpi * sum;
}

}  // namespace

std::complex<double> faddeeva(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw RangeError("faddeeva: non-finite argument");
  }
  if (z.imag() >= 0.0) return weideman()(z);
  const cd e = checked_exp(-z * z, "faddeeva", z);
  return 2.0 * e - weideman()(-z);
}

std::complex<double> complex_erf(std::complex<double> z) {
  if (!(std::abs(z.real()) <= kErfDomain && std::abs(z.imag()) <= kErfDomain)) {
    std::ostringstream msg;
    msg << "complex_erf: argument (" << z.real() << ", " << z.imag()
        << ") outside |Re|,|Im| <= " << kErfDomain;
    throw RangeError(msg.str());
  }
  if (z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0)) return -complex_erf(-z);
  if (std::abs(z) < 0.5) return erf_taylor(z);
  // Re z >= 0 puts iz in the closed upper half-plane where |w| <= 1.
  const cd e = checked_exp(-z * z, "complex_erf", z);
  return 1.0 - e * weideman()(cd(0.0, 1.0) * z);
}

}  // namespace fwm
