#pragma once

// Shared value types and error categories for the Bohmian trajectory library.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bohm {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Plain 2-vector in the plane of motion.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator/(Vec2 a, double s) { return a *= (1.0 / s); }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rect {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    [[nodiscard]] constexpr bool contains(const Vec2& p) const {
        return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
    [[nodiscard]] constexpr bool valid() const { return x_lo < x_hi && y_lo < y_hi; }
    [[nodiscard]] constexpr double area() const { return (x_hi - x_lo) * (y_hi - y_lo); }
    friend constexpr bool operator==(const Rect&, const Rect&) = default;
};

/// Complex gradient (d/dx, d/dy) of a complex scalar field.
struct ComplexGrad {
    Complex dx;
    Complex dy;
};

/// Value and gradient of a wave function at one point.
struct PsiSample {
    Complex psi;
    ComplexGrad grad;
};

/// hbar and particle mass. Defaults are the plotting units hbar = 1, m = 1/2.
class PhysicalConstants {
public:
    PhysicalConstants() = default;
    PhysicalConstants(double hbar, double mass);

    [[nodiscard]] double hbar() const { return hbar_; }
    [[nodiscard]] double mass() const { return mass_; }
    /// hbar / m, the factor in front of Im(grad psi / psi).
    [[nodiscard]] double hbar_over_mass() const { return hbar_ / mass_; }

    friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;

private:
    double hbar_ = 1.0;
    double mass_ = 0.5;
};

enum class BoundaryKind { Neumann, Dirichlet };

/// Boundary condition on a wall or barrier. epsilon() is +1 for Neumann, -1 for Dirichlet.
struct BoundaryCondition {
    BoundaryKind kind = BoundaryKind::Neumann;

    [[nodiscard]] constexpr int epsilon() const { return kind == BoundaryKind::Neumann ? 1 : -1; }
    [[nodiscard]] constexpr bool neumann() const { return kind == BoundaryKind::Neumann; }

    static constexpr BoundaryCondition Neumann() { return {BoundaryKind::Neumann}; }
    static constexpr BoundaryCondition Dirichlet() { return {BoundaryKind::Dirichlet}; }

    friend constexpr bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

std::string to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(const std::string& text);

// ---------------------------------------------------------------------------
// Error categories. Every numeric failure derives from NumericError so callers
// (the integrator, the CLI) can separate them from configuration problems.

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain (t <= 0 for a propagator, y < 0 on a half-line, ...).
class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Argument outside the documented evaluation range, or result would overflow.
class RangeError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Evaluation at (or numerically at) a zero of the wave function.
class NodeSingularity : public NumericError {
public:
    NodeSingularity(const std::string& what, double modulus)
        : NumericError(what), modulus_(modulus) {}
    [[nodiscard]] double modulus() const { return modulus_; }

private:
    double modulus_;
};

/// Evaluation at the barrier tip, where the propagator gradient diverges like r^{-1/2}.
class SingularPoint : public NumericError {
public:
    using NumericError::NumericError;
};

/// Asymptotic formula requested outside its range of validity.
class OutOfAsymptoticRange : public NumericError {
public:
    using NumericError::NumericError;
};

/// Quadrature failed to converge; carries the last two estimates.
class AccuracyError : public NumericError {
public:
    AccuracyError(const std::string& what, Complex previous, Complex last)
        : NumericError(what), previous_(previous), last_(last) {}
    [[nodiscard]] Complex previous() const { return previous_; }
    [[nodiscard]] Complex last() const { return last_; }

private:
    Complex previous_;
    Complex last_;
};

}  // namespace bohm
