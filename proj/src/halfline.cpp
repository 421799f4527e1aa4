#include "bohm/halfline.hpp"

#include "bohm/detail/halfline_kernel.hpp"
#include "bohm/specfun.hpp"

namespace bohm::halfline {
namespace {

constexpr double kTipRadius = 1e-10;
constexpr double kNodeThreshold = 1e-12;
constexpr double kSeamTolerance = 1e-12;

void require_time(double t, const char* who) {
    if (!(t > 0.0)) throw DomainError(std::string(who) + ": propagator singular at t -> 0+ (t must be > 0)");
}

void require_off_tip(double r, const char* who) {
    if (r < kTipRadius) throw SingularPoint(std::string(who) + ": gradient diverges at the barrier tip (r < 1e-10)");
}

detail::HalfAngles angles_of(PolarPoint p) { return detail::half_angles(p.cartesian(), p.r, p.theta); }

}  // namespace

Vec2 PolarPoint::cartesian() const { return {r * std::cos(theta), r * std::sin(theta)}; }

PolarPoint to_polar(Vec2 x) {
    double theta = std::atan2(x.y, x.x);
    if (theta >= kPi) theta = -kPi;
    return {std::hypot(x.x, x.y), theta};
}

bool on_barrier(Vec2 x) { return std::abs(x.y) < kSeamTolerance && x.x < 0.0; }

double barrier_distance(Vec2 x) { return x.x <= 0.0 ? std::abs(x.y) : norm(x); }

bool crosses_barrier(Vec2 a, Vec2 b) {
    // Strict sign change only: sliding along y = 0 or touching it is not a crossing.
    if (!((a.y > 0.0 && b.y < 0.0) || (a.y < 0.0 && b.y > 0.0))) return false;
    const double s = a.y / (a.y - b.y);
    return a.x + s * (b.x - a.x) <= 0.0;
}

DiffractionArguments diffraction_arguments(PolarPoint x, PolarPoint x0, double t, const PhysicalConstants& c) {
    require_time(t, "diffraction_arguments");
    const double amp = std::sqrt(2.0 * c.mass() * x.r * x0.r / (c.hbar() * t));
    return {amp * std::cos(0.5 * (x.theta - x0.theta)), -amp * std::cos(0.5 * (x.theta + x0.theta))};
}

Complex halfline_propagator(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    require_time(t, "halfline_propagator");
    const detail::TimeScale ts(c.mass() / (c.hbar() * t), bc.epsilon());
    return detail::propagator_kernel<false>(angles_of(x), angles_of(x0), ts).value;
}

Complex halfline_propagator(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    return halfline_propagator(to_polar(x), to_polar(x0), t, bc, c);
}

ComplexGrad halfline_propagator_gradient(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc,
                                         const PhysicalConstants& c) {
    require_time(t, "halfline_propagator_gradient");
    require_off_tip(x.r, "halfline_propagator_gradient");
    const detail::TimeScale ts(c.mass() / (c.hbar() * t), bc.epsilon());
    return detail::propagator_kernel<true>(angles_of(x), angles_of(x0), ts).grad;
}

ComplexGrad halfline_propagator_gradient(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    return halfline_propagator_gradient(to_polar(x), to_polar(x0), t, bc, c);
}

Vec2 halfline_propagator_velocity(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc,
                                  const PhysicalConstants& c) {
    require_time(t, "halfline_propagator_velocity");
    require_off_tip(x.r, "halfline_propagator_velocity");
    const double eps = bc.epsilon();
    const auto [u1, u2] = diffraction_arguments(x, x0, t, c);
    const Complex f1 = specfun::fresnel_F(u1);
    const Complex f2 = specfun::fresnel_F(u2);
    const Complex denom = f1 + eps * f2;
    const double denom2 = std::norm(denom);
    if (std::sqrt(denom2) < kNodeThreshold) {
        const double modulus = c.mass() / (2.0 * kPi * c.hbar() * t) * std::sqrt(denom2);
        throw NodeSingularity("halfline_propagator_velocity: propagator node", modulus);
    }
    const Vec2 p = x.cartesian();
    const Vec2 p0 = x0.cartesian();
    const double hm = 0.5 * (x.theta - x0.theta);
    const double hp = 0.5 * (x.theta + x0.theta);
    const double g = std::sqrt(x0.r * c.hbar() * t / (2.0 * kPi * c.mass() * x.r));
    const double side = g * (detail::kEMinusIPiOver4 / denom).imag();
    const double interference = (std::norm(f1) - std::norm(f2)) / denom2;
    return Vec2{p.x - p0.x + side * (std::cos(hp) - eps * std::cos(hm)),
                p.y - p0.y * interference + side * (std::sin(hp) - eps * std::sin(hm))}
           / t;
}

Vec2 halfline_propagator_velocity(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    return halfline_propagator_velocity(to_polar(x), to_polar(x0), t, bc, c);
}

std::string to_string(FarFieldRegion region) {
    switch (region) {
        case FarFieldRegion::I: return "I";
        case FarFieldRegion::II: return "II";
        case FarFieldRegion::III: return "III";
        case FarFieldRegion::OpticalBoundary: return "optical-boundary";
        case FarFieldRegion::Barrier: return "barrier";
    }
    return "?";
}

FarFieldRegion classify_region(double theta, double theta0) {
    if (!(theta0 > -kPi && theta0 <= 0.0))
        throw InvalidArgument("classify_region: theta0 must lie in (-pi, 0]; mirror the source first");
    if (!(theta >= -kPi && theta < kPi)) throw InvalidArgument("classify_region: theta must lie in [-pi, pi)");
    const double upper = kPi + theta0;
    const double lower = -kPi - theta0;
    if (theta == -kPi) return FarFieldRegion::Barrier;
    if (theta == upper || theta == lower) return FarFieldRegion::OpticalBoundary;
    if (theta > upper) return FarFieldRegion::I;
    if (theta > lower) return FarFieldRegion::II;
    return FarFieldRegion::III;
}

namespace {

struct MirroredPair {
    PolarPoint x;
    PolarPoint x0;
};

// Mirror y -> -y when the source lies in the upper half-plane.
MirroredPair reduce_source(Vec2 x, Vec2 x0) {
    PolarPoint px = to_polar(x);
    PolarPoint p0 = to_polar(x0);
    if (p0.theta > 0.0) {
        px = to_polar({x.x, -x.y});
        p0 = to_polar({x0.x, -x0.y});
    }
    return {px, p0};
}

}  // namespace

FarFieldRegion farfield_region(Vec2 x, Vec2 x0) {
    const auto [px, p0] = reduce_source(x, x0);
    return classify_region(px.theta, p0.theta);
}

Vec2 farfield_velocity(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c) {
    (void)bc;  // the leading-order velocities coincide for both boundary conditions
    require_time(t, "farfield_velocity");
    const auto [px, p0] = reduce_source(x, x0);
    const double large = c.mass() * px.r * p0.r / (c.hbar() * t);
    if (large < 100.0)
        throw OutOfAsymptoticRange("farfield_velocity: m r r0 / hbar t = " + std::to_string(large) + " < 100");
    const auto [u1, u2] = diffraction_arguments(px, p0, t, c);
    if (std::min(std::abs(u1), std::abs(u2)) < 5.0)
        throw OutOfAsymptoticRange("farfield_velocity: too close to an optical boundary (min |u| < 5)");
    switch (classify_region(px.theta, p0.theta)) {
        case FarFieldRegion::I: return ((px.r + p0.r) / t) * (x / px.r);
        case FarFieldRegion::II: return (x - x0) / t;
        case FarFieldRegion::III: return Vec2{x.x - x0.x, x.y} / t;
        default: break;
    }
    throw OutOfAsymptoticRange("farfield_velocity: point on an optical boundary or the barrier");
}

// ---------------------------------------------------------------------------

PlaneWave::PlaneWave(double k0_, double theta0_) : k0(k0_), theta0(theta0_) {
    if (!(k0_ > 0.0)) throw InvalidArgument("PlaneWave: k0 must be > 0");
    if (!(theta0_ >= -kPi && theta0_ < kPi)) throw InvalidArgument("PlaneWave: theta0 must lie in [-pi, pi)");
}

Vec2 PlaneWave::wave_vector() const { return {-k0 * std::cos(theta0), -k0 * std::sin(theta0)}; }

Vec2 PlaneWave::reflected_wave_vector() const {
    const Vec2 k = wave_vector();
    return {k.x, -k.y};
}

PlaneWaveArguments plane_wave_arguments(PolarPoint x, const PlaneWave& wave) {
    const double amp = std::sqrt(2.0 * wave.k0 * x.r);
    return {amp * std::cos(0.5 * (x.theta - wave.theta0)), -amp * std::cos(0.5 * (x.theta + wave.theta0))};
}

Complex planewave_psi(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc) {
    const auto [a1, a2] = plane_wave_arguments(x, wave);
    return std::polar(1.0, wave.k0 * x.r)
           * (specfun::fresnel_F(a1) + static_cast<double>(bc.epsilon()) * specfun::fresnel_F(a2));
}

Complex planewave_psi(Vec2 x, const PlaneWave& wave, BoundaryCondition bc) {
    return planewave_psi(to_polar(x), wave, bc);
}

namespace {

// Unit direction multiplying the tip term of the plane-wave gradient:
// Neumann: sin(theta0/2) (-sin(theta/2), cos(theta/2)); Dirichlet: cos(theta0/2) (cos(theta/2), sin(theta/2)).
Vec2 plane_wave_tip_direction(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc) {
    const double h = 0.5 * x.theta;
    if (bc.neumann()) return std::sin(0.5 * wave.theta0) * Vec2{-std::sin(h), std::cos(h)};
    return std::cos(0.5 * wave.theta0) * Vec2{std::cos(h), std::sin(h)};
}

}  // namespace

ComplexGrad planewave_gradient(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc) {
    require_off_tip(x.r, "planewave_gradient");
    const double eps = bc.epsilon();
    const auto [a1, a2] = plane_wave_arguments(x, wave);
    const Complex f1 = specfun::fresnel_F(a1);
    const Complex f2 = specfun::fresnel_F(a2);
    const Vec2 k = wave.wave_vector();
    const Vec2 kr = wave.reflected_wave_vector();
    const Complex tip = detail::kEMinusIPiOver4 * std::sqrt(2.0 * wave.k0 / (kPi * x.r));
    const Vec2 dir = plane_wave_tip_direction(x, wave, bc);
    const Complex front = std::polar(1.0, wave.k0 * x.r);
    return {front * (kI * (f1 * k.x + eps * f2 * kr.x) + tip * dir.x),
            front * (kI * (f1 * k.y + eps * f2 * kr.y) + tip * dir.y)};
}

Vec2 planewave_velocity(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc, const PhysicalConstants& c) {
    require_off_tip(x.r, "planewave_velocity");
    const double eps = bc.epsilon();
    const auto [a1, a2] = plane_wave_arguments(x, wave);
    const Complex f1 = specfun::fresnel_F(a1);
    const Complex f2 = specfun::fresnel_F(a2);
    const Complex denom = f1 + eps * f2;
    const double denom2 = std::norm(denom);
    if (std::sqrt(denom2) < kNodeThreshold)
        throw NodeSingularity("planewave_velocity: scattering-state node", std::sqrt(denom2));
    const Vec2 k = wave.wave_vector();
    const double side = std::sqrt(2.0 * wave.k0 / (kPi * x.r)) * (detail::kEMinusIPiOver4 / denom).imag();
    const Vec2 dir = plane_wave_tip_direction(x, wave, bc);
    const double hm = c.hbar_over_mass();
    return Vec2{hm * (k.x + side * dir.x), hm * (k.y * (std::norm(f1) - std::norm(f2)) / denom2 + side * dir.y)};
}

Vec2 planewave_velocity(Vec2 x, const PlaneWave& wave, BoundaryCondition bc, const PhysicalConstants& c) {
    return planewave_velocity(to_polar(x), wave, bc, c);
}

}  // namespace bohm::halfline
