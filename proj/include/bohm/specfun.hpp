#pragma once

// Complex special functions behind every closed-form amplitude: the diffraction
// function F(u), the Fresnel integrals C and S, and erf of complex argument.

#include "bohm/core.hpp"

namespace bohm::specfun {

/// Diffraction function
///   F(u) = pi^{-1/2} exp(-i u^2 - i pi/4) * integral_{-inf}^{u} exp(i v^2) dv.
/// Absolute error <= 1e-10 for |u| <= 50 (in practice ~1e-15); asymptotic
/// series for |u| >= 6. Throws InvalidArgument for non-finite u, RangeError for |u| > 1e150.
Complex fresnel_F(double u);

/// Same as fresnel_F without argument checks. For inner loops that already
/// guarantee a finite argument.
Complex fresnel_F_unchecked(double u) noexcept;

struct FresnelCS {
    double C;
    double S;
};

/// C(x) = sqrt(2/pi) int_0^x cos t^2 dt, S(x) = sqrt(2/pi) int_0^x sin t^2 dt.
/// Both tend to 1/2 as x -> +inf under this normalization.
FresnelCS fresnel_CS(double x);

/// erf(z) = 2/sqrt(pi) int_0^z exp(-u^2) du, for |z| <= 30.
/// Throws RangeError outside that disk or when the result overflows a double
/// (|erf(iy)| grows like exp(y^2)).
Complex erf_complex(Complex z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz) for Im z >= 0.
/// Exposed for tests; accurate to ~1e-15 relative for Im z >= 0.
Complex faddeeva_upper(Complex z);

}  // namespace bohm::specfun
