#pragma once

// Half-line barrier {y = 0, x <= 0}: time-dependent propagator with its
// gradient and Bohmian velocity, far-field asymptotics per optical region, and
// the stationary plane-wave scattering states.

#include "bohm/core.hpp"

namespace bohm::halfline {

/// Polar coordinates with theta in [-pi, pi); the barrier is the seam theta = +-pi.
struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;

    [[nodiscard]] Vec2 cartesian() const;
    friend bool operator==(const PolarPoint&, const PolarPoint&) = default;
};

/// atan2-based conversion, mapping theta = pi onto -pi.
PolarPoint to_polar(Vec2 x);

/// Points with |y| < 1e-12 and x < 0.
bool on_barrier(Vec2 x);

/// Distance from x to the barrier segment {y = 0, x <= 0}.
double barrier_distance(Vec2 x);

/// True when the straight segment a -> b crosses the barrier line strictly.
bool crosses_barrier(Vec2 a, Vec2 b);

struct DiffractionArguments {
    double u1;
    double u2;
};

/// u1 = sqrt(2 m r r0 / hbar t) cos((theta - theta0)/2), u2 = -sqrt(...) cos((theta + theta0)/2).
DiffractionArguments diffraction_arguments(PolarPoint x, PolarPoint x0, double t,
                                           const PhysicalConstants& c = {});

/// K = (m / 2 pi i hbar t) exp(i m (r + r0)^2 / 2 hbar t) [F(u1) +- F(u2)], + for Neumann.
Complex halfline_propagator(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc,
                            const PhysicalConstants& c = {});
Complex halfline_propagator(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c = {});

/// Analytic gradient of the propagator. Throws SingularPoint for r < 1e-10 (the tip).
ComplexGrad halfline_propagator_gradient(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc,
                                         const PhysicalConstants& c = {});
ComplexGrad halfline_propagator_gradient(Vec2 x, Vec2 x0, double t, BoundaryCondition bc,
                                         const PhysicalConstants& c = {});

/// Bohmian velocity of the propagator state, from the closed formula. Throws
/// NodeSingularity where |F(u1) +- F(u2)| < 1e-12.
Vec2 halfline_propagator_velocity(PolarPoint x, PolarPoint x0, double t, BoundaryCondition bc,
                                  const PhysicalConstants& c = {});
Vec2 halfline_propagator_velocity(Vec2 x, Vec2 x0, double t, BoundaryCondition bc,
                                  const PhysicalConstants& c = {});

enum class FarFieldRegion {
    I,                ///< pi + theta0 < theta < pi: scattered wave only
    II,               ///< -pi - theta0 < theta < pi + theta0: incident + scattered
    III,              ///< -pi < theta < -pi - theta0: incident + reflected
    OpticalBoundary,  ///< theta exactly on pi + theta0 or -pi - theta0
    Barrier,          ///< theta = -pi
};

std::string to_string(FarFieldRegion region);

/// Region of direction theta for a source at angle theta0 in (-pi, 0]. Sources
/// with theta0 > 0 must be mirrored (y -> -y) first; InvalidArgument otherwise.
FarFieldRegion classify_region(double theta, double theta0);

/// Leading-order far-field velocity of the classified region:
///   I: ((r + r0)/t) x/r,  II: (x - x0)/t,  III: (x - x0_x e_x)/t.
/// Requires m r r0 / hbar t >= 100 and min(|u1|, |u2|) >= 5, else OutOfAsymptoticRange.
/// Sources with theta0 > 0 are handled by mirror symmetry.
Vec2 farfield_velocity(Vec2 x, Vec2 x0, double t, BoundaryCondition bc, const PhysicalConstants& c = {});

/// Region used by farfield_velocity after any mirror reduction.
FarFieldRegion farfield_region(Vec2 x, Vec2 x0);

// ---------------------------------------------------------------------------
// Stationary scattering of a plane wave.

/// Incident wave vector k = -k0 (cos theta0, sin theta0).
struct PlaneWave {
    double k0 = 1.0;
    double theta0 = 0.0;

    PlaneWave() = default;
    PlaneWave(double k0, double theta0);
    [[nodiscard]] Vec2 wave_vector() const;
    /// k'_0 = (k_x, -k_y), the reflected wave vector.
    [[nodiscard]] Vec2 reflected_wave_vector() const;
    friend bool operator==(const PlaneWave&, const PlaneWave&) = default;
};

struct PlaneWaveArguments {
    double a1;
    double a2;
};

/// a1 = sqrt(2 k0 r) cos((theta - theta0)/2), a2 = -sqrt(2 k0 r) cos((theta + theta0)/2).
PlaneWaveArguments plane_wave_arguments(PolarPoint x, const PlaneWave& wave);

/// psi = exp(i k0 r) [F(a1) +- F(a2)], + for Neumann.
Complex planewave_psi(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc);
Complex planewave_psi(Vec2 x, const PlaneWave& wave, BoundaryCondition bc);

/// Analytic gradient. Throws SingularPoint at the tip.
ComplexGrad planewave_gradient(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc);

/// Time-independent Bohmian velocity. Throws NodeSingularity at zeros of psi,
/// SingularPoint at the tip.
Vec2 planewave_velocity(PolarPoint x, const PlaneWave& wave, BoundaryCondition bc,
                        const PhysicalConstants& c = {});
Vec2 planewave_velocity(Vec2 x, const PlaneWave& wave, BoundaryCondition bc, const PhysicalConstants& c = {});

}  // namespace bohm::halfline
