#include "bohm/specfun.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace bohm::specfun {
namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrtPi = 0.56418958354775628695;
// e^{-i pi/4} / sqrt(pi), the inhomogeneous term of F' = -2iuF + c.
const Complex kFSource = std::polar(kInvSqrtPi, -kPi / 4.0);

// w(z) = sum_n (iz)^n / Gamma(n/2 + 1). Used for |z| < 2 where the
// cancellation between terms costs at most two digits.
Complex faddeeva_series(Complex z) {
    const Complex iz = kI * z;
    const Complex iz2 = iz * iz;
    Complex even = 1.0;                       // (iz)^0 / Gamma(1)
    Complex odd = iz * (2.0 * kInvSqrtPi);    // (iz)^1 / Gamma(3/2)
    Complex sum = even + odd;
    for (int n = 0; n < 200; n += 2) {
        even *= iz2 / (0.5 * n + 1.0);
        odd *= iz2 / (0.5 * n + 1.5);
        const Complex step = even + odd;
        sum += step;
        if (std::abs(step) < 1e-17 * std::abs(sum) && n > 4) break;
    }
    return sum;
}

// Laplace continued fraction, evaluated bottom-up. Converges for Im z > 0;
// fast once |z| >= 2 and Im z >= 1.
Complex faddeeva_cf(Complex z, int terms) {
    Complex f = z;
    for (int k = terms; k >= 1; --k) f = z - (0.5 * k) / f;
    return kI * kInvSqrtPi / f;
}

// 16-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374401853193, 0.2816035507792589132304605, 0.4580167776572273863424194,
    0.6178762444026437484466718, 0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550684962853967, 0.1826034150449235888667637, 0.1691565193950025381893121,
    0.1495959888165767320815017, 0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// erf(z) = 2/sqrt(pi) * z * int_0^1 exp(-z^2 s^2) ds, composite Gauss-Legendre.
// Panel count follows the oscillation (2xy s^2) and growth ((y^2-x^2) s^2) of
// the integrand.
Complex erf_by_quadrature(Complex z) {
    const Complex z2 = z * z;
    const double phase = std::abs(z2.imag());
    const double growth = std::max(0.0, -z2.real());
    const int panels = 4 + static_cast<int>(std::ceil(phase / 2.0 + growth / 5.0));
    const double h = 1.0 / panels;
    Complex sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        Complex panel = 0.0;
        for (std::size_t k = 0; k < kGl16Nodes.size(); ++k) {
            const double ds = 0.5 * h * kGl16Nodes[k];
            const double s1 = mid - ds;
            const double s2 = mid + ds;
            panel += kGl16Weights[k] * (std::exp(-z2 * (s1 * s1)) + std::exp(-z2 * (s2 * s2)));
        }
        sum += panel * (0.5 * h);
    }
    return 2.0 * kInvSqrtPi * z * sum;
}

Complex erf_series(Complex z) {
    // erf(z) = 2/sqrt(pi) sum_n (-1)^n z^{2n+1} / (n! (2n+1))
    const Complex z2 = z * z;
    Complex power = z;  // (-1)^n z^{2n+1} / n!
    Complex sum = z;
    for (int n = 1; n < 300; ++n) {
        power *= -z2 / static_cast<double>(n);
        const Complex step = power / static_cast<double>(2 * n + 1);
        sum += step;
        if (std::abs(step) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 * kInvSqrtPi * sum;
}

// F(-a) for a >= 6 from the asymptotic expansion
//   F(-a) ~ e^{i pi/4} / (2 sqrt(pi) a) sum_k (2k-1)!! (-i / 2a^2)^k,
// truncated before the terms stop shrinking (about 1e-17 absolute at a = 6).
Complex fresnel_F_tail(double a) {
    const double step = 0.5 / (a * a);
    double re = 1.0;
    double im = 0.0;
    double c = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = c * (2 * k - 1) * step;
        if (next < 1e-17 || next > c) break;
        c = next;
        switch (k & 3) {
            case 0: re += c; break;
            case 1: im -= c; break;
            case 2: re -= c; break;
            default: im += c; break;
        }
    }
    static const Complex front = std::polar(0.5 * kInvSqrtPi, kPi / 4.0);
    return front / a * Complex{re, im};
}

// F(u) for u <= 0 from the Faddeeva function: F(u) = w(|u| e^{i pi/4}) / 2.
Complex fresnel_F_direct(double u) {
    const double a = std::abs(u);
    if (a >= 6.0) return fresnel_F_tail(a);
    const Complex z = std::polar(a, kPi / 4.0);
    if (a < 2.0) return 0.5 * faddeeva_series(z);
    return 0.5 * faddeeva_cf(z, 120);
}

Complex fresnel_F_exact(double u) {
    if (u <= 0.0) return fresnel_F_direct(u);
    return std::polar(1.0, -u * u) - fresnel_F_direct(-u);
}

// Tabulated F on [-kTableHalfWidth, kTableHalfWidth]; values in between come
// from the Taylor series generated by the ODE F' = -2iuF + c:
//   F^{(n+1)} = -2i (u F^{(n)} + n F^{(n-1)}),  n >= 1.
constexpr double kTableHalfWidth = 6.0;
constexpr int kTablePerUnit = 64;
constexpr int kTaylorTerms = 12;

class FresnelTable {
public:
    FresnelTable() {
        const int n = 2 * static_cast<int>(kTableHalfWidth) * kTablePerUnit + 1;
        values_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) values_[static_cast<std::size_t>(i)] = fresnel_F_exact(node(i));
    }

    [[nodiscard]] Complex operator()(double u) const {
        const int i = static_cast<int>(std::lround((u + kTableHalfWidth) * kTablePerUnit));
        const double u0 = node(i);
        const double delta = u - u0;
        Complex prev = values_[static_cast<std::size_t>(i)];
        Complex term = (-2.0 * kI * u0 * prev + kFSource) * delta;
        Complex sum = prev + term;
        for (int k = 1; k < kTaylorTerms; ++k) {
            const Complex next = (-2.0 * kI * delta / static_cast<double>(k + 1)) * (u0 * term + delta * prev);
            prev = term;
            term = next;
            sum += term;
        }
        return sum;
    }

private:
    static double node(int i) { return -kTableHalfWidth + static_cast<double>(i) / kTablePerUnit; }
    std::vector<Complex> values_;
};

const FresnelTable& fresnel_table() {
    static const FresnelTable table;
    return table;
}

}  // namespace

Complex faddeeva_upper(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("faddeeva_upper: non-finite argument");
    if (z.imag() < 0.0) throw DomainError("faddeeva_upper: requires Im z >= 0");
    const double r = std::abs(z);
    if (r < 2.0) return faddeeva_series(z);
    if (z.imag() >= 1.0 || r >= 8.0) return faddeeva_cf(z, r < 8.0 ? 120 : 40);
    // Close to the real axis at moderate |z|: w(z) = e^{-z^2} (1 - erf(-iz)).
    return std::exp(-z * z) * (1.0 - erf_by_quadrature(-kI * z));
}

Complex fresnel_F_unchecked(double u) noexcept {
    if (std::abs(u) <= kTableHalfWidth) return fresnel_table()(u);
    return fresnel_F_exact(u);
}

Complex fresnel_F(double u) {
    if (!std::isfinite(u)) throw InvalidArgument("fresnel_F: non-finite argument");
    if (std::abs(u) > 1e150) throw RangeError("fresnel_F: |u| too large for a meaningful phase u^2");
    return fresnel_F_unchecked(u);
}

FresnelCS fresnel_CS(double x) {
    if (!std::isfinite(x)) throw InvalidArgument("fresnel_CS: non-finite argument");
    // C + iS = e^{i pi/4} / sqrt(2) * erf(e^{-i pi/4} x)
    const double a = std::abs(x);
    Complex cs;
    if (a > 25.0) {
        // erf_complex is limited to |z| <= 30; use the Faddeeva tail directly.
        const Complex z = std::polar(a, -kPi / 4.0);
        const Complex erf_z = 1.0 - std::exp(-z * z) * faddeeva_cf(kI * z, 40);
        cs = std::polar(1.0 / std::sqrt(2.0), kPi / 4.0) * erf_z;
    } else {
        cs = std::polar(1.0 / std::sqrt(2.0), kPi / 4.0) * erf_complex(std::polar(a, -kPi / 4.0));
    }
    const double sign = x < 0.0 ? -1.0 : 1.0;
    return {sign * cs.real(), sign * cs.imag()};
}

Complex erf_complex(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw InvalidArgument("erf_complex: non-finite argument");
    const double r = std::abs(z);
    if (r > 30.0) throw RangeError("erf_complex: |z| > 30 is outside the documented range");

    Complex value;
    if (r <= 2.5) {
        value = erf_series(z);
    } else {
        // erf is odd: evaluate on Re z >= 0.
        const bool flip = z.real() < 0.0;
        const Complex zr = flip ? -z : z;
        Complex v;
        if (zr.real() >= 1.5) {
            // erf(z) = 1 - e^{-z^2} w(iz), with Im(iz) = Re z >= 1.5.
            const Complex z2 = zr * zr;
            if (-z2.real() > 700.0) throw RangeError("erf_complex: result overflows");
            v = 1.0 - std::exp(-z2) * faddeeva_cf(kI * zr, r < 8.0 ? 120 : 40);
        } else {
            if (-(zr * zr).real() > 700.0) throw RangeError("erf_complex: result overflows");
            v = erf_by_quadrature(zr);
        }
        value = flip ? -v : v;
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw RangeError("erf_complex: result overflows");
    return value;
}

}  // namespace bohm::specfun
