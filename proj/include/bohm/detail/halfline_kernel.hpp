#pragma once

// Inner kernel of the half-line propagator and its gradient, with all
// trigonometry and square roots hoisted out: per-point and per-source
// half-angle cosines/sines and sqrt(r) are precomputed and combined with
// angle-sum identities.

#include "bohm/core.hpp"
#include "bohm/specfun.hpp"

namespace bohm::halfline::detail {

struct HalfAngles {
    Vec2 pos;
    double r = 0.0;
    double sqrt_r = 0.0;
    double cos_half = 1.0;  ///< cos(theta/2)
    double sin_half = 0.0;  ///< sin(theta/2)
};

inline HalfAngles half_angles(Vec2 pos, double r, double theta) {
    return {pos, r, std::sqrt(r), std::cos(0.5 * theta), std::sin(0.5 * theta)};
}

/// Quantities that depend only on t (and the constants).
struct TimeScale {
    double scale;           ///< m / (hbar t)
    double sqrt_2scale;     ///< sqrt(2 m / hbar t)
    double inv_sqrt_2pi_s;  ///< 1 / sqrt(2 pi m / hbar t)
    double eps;             ///< +1 Neumann, -1 Dirichlet

    TimeScale(double scale_, double eps_)
        : scale(scale_), sqrt_2scale(std::sqrt(2.0 * scale_)),
          inv_sqrt_2pi_s(1.0 / std::sqrt(2.0 * kPi * scale_)), eps(eps_) {}
};

struct KernelValue {
    Complex value;
    ComplexGrad grad;
};

inline const Complex kEMinusIPiOver4 = std::polar(1.0, -kPi / 4.0);

/// Propagator K(x, t | x0, 0) and, if with_grad, its gradient in x.
template <bool with_grad>
inline KernelValue propagator_kernel(const HalfAngles& x, const HalfAngles& x0, const TimeScale& ts) {
    const double cm = x.cos_half * x0.cos_half + x.sin_half * x0.sin_half;  // cos((th - th0)/2)
    const double cp = x.cos_half * x0.cos_half - x.sin_half * x0.sin_half;  // cos((th + th0)/2)
    const double amp = ts.sqrt_2scale * x.sqrt_r * x0.sqrt_r;
    const Complex f1 = specfun::fresnel_F_unchecked(amp * cm);
    const Complex f2 = specfun::fresnel_F_unchecked(-amp * cp);
    const double rr = x.r + x0.r;
    const Complex front = Complex{0.0, -ts.scale / (2.0 * kPi)} * std::polar(1.0, 0.5 * ts.scale * rr * rr);

    KernelValue out;
    out.value = front * (f1 + ts.eps * f2);
    if constexpr (with_grad) {
        const double sp = x.sin_half * x0.cos_half + x.cos_half * x0.sin_half;  // sin((th + th0)/2)
        const double sm = x.sin_half * x0.cos_half - x.cos_half * x0.sin_half;  // sin((th - th0)/2)
        const Vec2 d = x.pos - x0.pos;
        const double dmy = x.pos.y + x0.pos.y;  // y-component of x - x0', x0' = (x0, -y0)
        const Complex tip = (x0.sqrt_r * ts.inv_sqrt_2pi_s / x.sqrt_r) * kEMinusIPiOver4;
        const Complex gfront = front * ts.scale;
        out.grad.dx = gfront * (kI * (d.x * f1 + ts.eps * d.x * f2) + tip * (cp - ts.eps * cm));
        out.grad.dy = gfront * (kI * (d.y * f1 + ts.eps * dmy * f2) + tip * (sp - ts.eps * sm));
    }
    return out;
}

}  // namespace bohm::halfline::detail
