#include "bohm/wall.hpp"

#include "bohm/specfun.hpp"

namespace bohm::wall {
namespace {

constexpr double kNodeThreshold = 1e-12;

void require_half_line(double y, const char* who) {
    if (!(y >= 0.0)) throw DomainError(std::string(who) + ": requires y >= 0");
}

void require_time(double t, const char* who) {
    if (!(t >= 0.0)) throw DomainError(std::string(who) + ": requires t >= 0");
}

}  // namespace

double wall_norm_constant(double momentum, double width, const PhysicalConstants& c) {
    const double kappa = momentum * width / c.hbar();
    // The erf argument is purely imaginary, so its real part vanishes; the
    // term is kept to mirror the closed formula.
    const double re_erf = specfun::erf_complex(Complex{0.0, -2.0 * kappa}).real();
    const double bracket = 1.0 + std::exp(-2.0 * kappa * kappa) * (1.0 - re_erf);
    return std::pow(2.0 * kPi, -0.25) / std::sqrt(bracket);
}

WallPacket1D::WallPacket1D(double center_, double momentum_, double width_, const PhysicalConstants& c)
    : center(center_), momentum(momentum_), width(width_) {
    if (!(center_ > 0.0)) throw InvalidArgument("WallPacket1D: center must be > 0");
    if (!(width_ > 0.0)) throw InvalidArgument("WallPacket1D: width must be > 0");
    norm_a = wall_norm_constant(momentum_, width_, c);
}

double wall_initial_norm(const WallPacket1D& p, const PhysicalConstants& c) {
    const double kappa = p.momentum * p.width / c.hbar();
    const double overlap = std::exp(-p.center * p.center / (2.0 * p.width * p.width) - 2.0 * kappa * kappa);
    const double a2 = p.norm_a * p.norm_a;
    return std::sqrt(2.0 * kPi) * a2 * (1.0 + overlap);
}

WallPacketFactors wall_packet_factors(double y, double t, const WallPacket1D& p, const PhysicalConstants& c) {
    const double sigma2 = p.width * p.width;
    const Complex denom{1.0, freespace::spreading(t, p.width, c)};
    WallPacketFactors f;
    f.R = p.norm_a * std::polar(1.0, p.momentum * p.center / c.hbar()) / std::sqrt(p.width * denom);
    // m/(2 hbar t) [ (y^2+ybar^2) - (y^2 + (ybar + pbar t/m)^2)/(1 + i tau) ], with the
    // 1/t pole cancelled analytically.
    f.phi = Complex{-p.momentum * p.center / c.hbar() - p.momentum * p.momentum * t / (2.0 * c.mass() * c.hbar()),
                    (y * y + p.center * p.center) / (4.0 * sigma2)}
            / denom;
    f.s = Complex{p.momentum * y, -c.hbar() * p.center * y / (2.0 * sigma2)} / denom;
    return f;
}

Complex wall_initial_psi(double y, const WallPacket1D& p, BoundaryCondition bc, const PhysicalConstants& c) {
    require_half_line(y, "wall_initial_psi");
    const double four_s2 = 4.0 * p.width * p.width;
    const double k = p.momentum * y / c.hbar();
    const Complex direct = std::exp(Complex{-(y - p.center) * (y - p.center) / four_s2, k});
    const Complex mirror = std::exp(Complex{-(y + p.center) * (y + p.center) / four_s2, -k});
    return p.norm_a / std::sqrt(p.width) * (direct + static_cast<double>(bc.epsilon()) * mirror);
}

Complex wall_propagator_1d(double y, double z, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    require_half_line(y, "wall_propagator_1d");
    require_half_line(z, "wall_propagator_1d");
    if (!(t > 0.0)) throw DomainError("wall_propagator_1d: propagator singular at t -> 0+ (t must be > 0)");
    const double scale = c.mass() / (c.hbar() * t);
    const Complex pref = std::sqrt(Complex{scale / (2.0 * kPi), 0.0} / kI);
    const Complex common = std::polar(1.0, 0.5 * scale * (y * y + z * z));
    // exp(-iB) +- exp(iB) with B = m y z / hbar t, in a form that vanishes exactly at y = 0.
    const double b = scale * y * z;
    const Complex images = bc.neumann() ? Complex{2.0 * std::cos(b), 0.0} : Complex{0.0, -2.0 * std::sin(b)};
    return pref * common * images;
}

Complex wall_packet_psi(double y, double t, const WallPacket1D& p, BoundaryCondition bc, const PhysicalConstants& c) {
    require_half_line(y, "wall_packet_psi");
    require_time(t, "wall_packet_psi");
    if (t == 0.0) return wall_initial_psi(y, p, bc, c);
    const auto f = wall_packet_factors(y, t, p, c);
    // Combine exponents before exponentiating: exp(i phi) alone underflows where exp(i s) overflows.
    const Complex s_over_hbar = f.s / c.hbar();
    const Complex plus = std::exp(kI * (f.phi + s_over_hbar));
    const Complex minus = std::exp(kI * (f.phi - s_over_hbar));
    return f.R * (plus + static_cast<double>(bc.epsilon()) * minus);
}

Complex wall_packet_psi_2d(Vec2 x, double t, const WallPacket2D& p, BoundaryCondition bc, const PhysicalConstants& c) {
    return freespace::free_gaussian_psi_1d(x.x, t, p.x, c) * wall_packet_psi(x.y, t, p.y, bc, c);
}

double wall_velocity_1d(double y, double t, const WallPacket1D& p, BoundaryCondition bc, const PhysicalConstants& c) {
    require_half_line(y, "wall_velocity_1d");
    require_time(t, "wall_velocity_1d");
    const double rate = c.hbar() / (2.0 * c.mass() * p.width * p.width);
    const double tau = rate * t;
    const Complex denom{1.0, tau};
    const Complex s = Complex{p.momentum * y, -c.hbar() * p.center * y / (2.0 * p.width * p.width)} / denom;

    // (e^{is/hbar} - eps e^{-is/hbar}) / (e^{is/hbar} + eps e^{-is/hbar}), dividing through by
    // whichever exponential dominates.
    const double eps = bc.epsilon();
    Complex num;
    Complex den;
    if (s.imag() <= 0.0) {
        const Complex q = std::exp(-2.0 * kI * s / c.hbar());
        num = 1.0 - eps * q;
        den = 1.0 + eps * q;
    } else {
        const Complex q = std::exp(2.0 * kI * s / c.hbar());
        num = q - eps;
        den = q + eps;
    }
    if (std::abs(den) < kNodeThreshold) {
        const double modulus = std::abs(wall_packet_psi(y, t, p, bc, c));
        throw NodeSingularity("wall_velocity_1d: wave function node at y = " + std::to_string(y), modulus);
    }
    const Complex drift = Complex{p.momentum / c.mass(), -rate * p.center} / denom;
    return y * rate * rate * t / (1.0 + tau * tau) + (drift * num / den).real();
}

Vec2 wall_velocity_2d(Vec2 x, double t, const WallPacket2D& p, BoundaryCondition bc, const PhysicalConstants& c) {
    if (!(x.y >= 0.0)) throw DomainError("wall_velocity_2d: point below the wall (y < 0)");
    return {freespace::free_gaussian_velocity_1d(x.x, t, p.x, c), wall_velocity_1d(x.y, t, p.y, bc, c)};
}

double wall_propagator_velocity(double y, double t) {
    if (!(t > 0.0)) throw DomainError("wall_propagator_velocity: t must be > 0");
    if (!(y >= 0.0)) throw DomainError("wall_propagator_velocity: requires y >= 0");
    return y / t;
}

}  // namespace bohm::wall
