#pragma once

#include <complex>

namespace fwm {

/// Documented domain of complex_erf: |Re z| <= 30 and |Im z| <= 30.
inline constexpr double kErfDomain = 30.0;

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
///
/// Upper half-plane: Weideman's rational expansion with 40 terms (relative
/// error ~1e-14, |w| <= 1 so no overflow). Lower half-plane goes through
/// w(z) = 2 exp(-z^2) - w(-z) and throws RangeError if exp(-z^2) overflows.
std::complex<double> faddeeva(std::complex<double> z);

/// erf(z) for complex z inside the documented domain.
///
/// Throws RangeError outside the domain or when the value overflows double.
std::complex<double> complex_erf(std::complex<double> z);

}  // namespace fwm
