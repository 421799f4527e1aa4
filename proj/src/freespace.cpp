#include "bohm/freespace.hpp"

namespace bohm::freespace {
namespace {

void require_positive_time(double t, const char* who) {
    if (!(t > 0.0)) throw DomainError(std::string(who) + ": propagator singular at t -> 0+ (t must be > 0)");
}

void require_nonnegative_time(double t, const char* who) {
    if (!(t >= 0.0)) throw DomainError(std::string(who) + ": t must be >= 0");
}

// Exponent of the evolved packet, without the constant phase p xbar / hbar:
//   [ -d^2/(4 sigma^2) + i (p d/hbar - p^2 t/(2 m hbar)) ] / (1 + i tau),  d = x - xbar.
Complex packet_exponent(double d, double t, const GaussianPacket1D& p, const PhysicalConstants& c) {
    const double tau = spreading(t, p.width, c);
    const Complex num{-d * d / (4.0 * p.width * p.width),
                      p.momentum * d / c.hbar() - p.momentum * p.momentum * t / (2.0 * c.mass() * c.hbar())};
    return num / Complex{1.0, tau};
}

}  // namespace

GaussianPacket1D::GaussianPacket1D(double center_, double momentum_, double width_)
    : center(center_), momentum(momentum_), width(width_) {
    if (!(width_ > 0.0)) throw InvalidArgument("GaussianPacket1D: width must be > 0");
}

GaussianPacket2D::GaussianPacket2D(Vec2 center_, Vec2 momentum_, double width_)
    : center(center_), momentum(momentum_), width(width_) {
    if (!(width_ > 0.0)) throw InvalidArgument("GaussianPacket2D: width must be > 0");
}

double spreading(double t, double width, const PhysicalConstants& c) {
    return c.hbar() * t / (2.0 * c.mass() * width * width);
}

double packet_width(double t, double width, const PhysicalConstants& c) {
    return width * std::hypot(1.0, spreading(t, width, c));
}

Complex free_propagator(Vec2 x, Vec2 x0, double t, const PhysicalConstants& c) {
    require_positive_time(t, "free_propagator");
    const Vec2 d = x - x0;
    const double phase = c.mass() * dot(d, d) / (2.0 * c.hbar() * t);
    return c.mass() / (2.0 * kPi * kI * c.hbar() * t) * std::polar(1.0, phase);
}

Complex free_propagator_1d(double x, double x0, double t, const PhysicalConstants& c) {
    require_positive_time(t, "free_propagator_1d");
    const double d = x - x0;
    const Complex pref = std::sqrt(Complex{c.mass() / (2.0 * kPi * c.hbar() * t), 0.0} / kI);
    return pref * std::polar(1.0, c.mass() * d * d / (2.0 * c.hbar() * t));
}

Complex free_gaussian_psi_1d(double x, double t, const GaussianPacket1D& p, const PhysicalConstants& c) {
    require_nonnegative_time(t, "free_gaussian_psi_1d");
    const double tau = spreading(t, p.width, c);
    const Complex pref = std::polar(1.0, p.momentum * p.center / c.hbar())
                         / (std::pow(2.0 * kPi * p.width * p.width, 0.25) * std::sqrt(Complex{1.0, tau}));
    return pref * std::exp(packet_exponent(x - p.center, t, p, c));
}

Complex free_gaussian_dpsi_1d(double x, double t, const GaussianPacket1D& p, const PhysicalConstants& c) {
    const double tau = spreading(t, p.width, c);
    const double d = x - p.center;
    const Complex dexp = Complex{-d / (2.0 * p.width * p.width), p.momentum / c.hbar()} / Complex{1.0, tau};
    return dexp * free_gaussian_psi_1d(x, t, p, c);
}

Complex free_gaussian_psi(Vec2 x, double t, const GaussianPacket2D& p, const PhysicalConstants& c) {
    return free_gaussian_psi_1d(x.x, t, p.x_packet(), c) * free_gaussian_psi_1d(x.y, t, p.y_packet(), c);
}

double free_gaussian_velocity_1d(double x, double t, const GaussianPacket1D& p, const PhysicalConstants& c) {
    require_nonnegative_time(t, "free_gaussian_velocity_1d");
    // (hbar t / 2 m sigma^2)^2 (x - xbar)/t written as rate^2 t (x - xbar): no 0/0 at t = 0.
    const double rate = c.hbar() / (2.0 * c.mass() * p.width * p.width);
    const double tau = rate * t;
    return (p.momentum / c.mass() + rate * rate * t * (x - p.center)) / (1.0 + tau * tau);
}

Vec2 free_gaussian_velocity(Vec2 x, double t, const GaussianPacket2D& p, const PhysicalConstants& c) {
    return {free_gaussian_velocity_1d(x.x, t, p.x_packet(), c), free_gaussian_velocity_1d(x.y, t, p.y_packet(), c)};
}

Vec2 free_propagator_velocity(Vec2 x, Vec2 x0, double t) {
    require_positive_time(t, "free_propagator_velocity");
    return (x - x0) / t;
}

}  // namespace bohm::freespace
