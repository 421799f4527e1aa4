#pragma once

// Free particle in the plane: propagator, spreading Gaussian packet, and the
// corresponding Bohmian velocity fields. Also the building block for the
// method-of-images constructions in wall.hpp.

#include "bohm/core.hpp"

namespace bohm::freespace {

struct GaussianPacket1D {
    double center = 0.0;
    double momentum = 0.0;
    double width = 1.0;  ///< sigma > 0

    GaussianPacket1D() = default;
    GaussianPacket1D(double center, double momentum, double width);
    friend bool operator==(const GaussianPacket1D&, const GaussianPacket1D&) = default;
};

/// Isotropic 2D packet; its wave function is the product of two 1D packets.
struct GaussianPacket2D {
    Vec2 center;
    Vec2 momentum;
    double width = 1.0;

    GaussianPacket2D() = default;
    GaussianPacket2D(Vec2 center, Vec2 momentum, double width);
    [[nodiscard]] GaussianPacket1D x_packet() const { return {center.x, momentum.x, width}; }
    [[nodiscard]] GaussianPacket1D y_packet() const { return {center.y, momentum.y, width}; }
    friend bool operator==(const GaussianPacket2D&, const GaussianPacket2D&) = default;
};

/// Dimensionless spreading parameter hbar t / (2 m sigma^2).
double spreading(double t, double width, const PhysicalConstants& c);

/// Width sigma(t) = sigma |1 + i hbar t / (2 m sigma^2)| of the density.
double packet_width(double t, double width, const PhysicalConstants& c);

/// 2D free propagator (m / 2 pi i hbar t) exp(i m |x - x0|^2 / 2 hbar t). Throws DomainError for t <= 0.
Complex free_propagator(Vec2 x, Vec2 x0, double t, const PhysicalConstants& c = {});

/// 1D free propagator sqrt(m / 2 pi i hbar t) exp(i m (x - x0)^2 / 2 hbar t).
Complex free_propagator_1d(double x, double x0, double t, const PhysicalConstants& c = {});

/// Evolved 1D Gaussian packet. The two large phases of the textbook form are
/// combined analytically, so t -> 0 is continuous and t = 0 gives the initial packet.
Complex free_gaussian_psi_1d(double x, double t, const GaussianPacket1D& packet,
                             const PhysicalConstants& c = {});

/// d/dx of free_gaussian_psi_1d.
Complex free_gaussian_dpsi_1d(double x, double t, const GaussianPacket1D& packet,
                              const PhysicalConstants& c = {});

/// Product form psi_x(x) psi_y(y) of the 2D packet.
Complex free_gaussian_psi(Vec2 x, double t, const GaussianPacket2D& packet,
                          const PhysicalConstants& c = {});

/// 1D velocity [p/m + (hbar t/2m sigma^2)^2 (x - xbar)/t] / [1 + (hbar t/2m sigma^2)^2].
double free_gaussian_velocity_1d(double x, double t, const GaussianPacket1D& packet,
                                 const PhysicalConstants& c = {});

/// 2D velocity: the 1D formula on each axis. Returns p/m at t = 0.
Vec2 free_gaussian_velocity(Vec2 x, double t, const GaussianPacket2D& packet,
                            const PhysicalConstants& c = {});

/// Velocity of the propagator state, (x - x0)/t. Throws DomainError for t <= 0.
Vec2 free_propagator_velocity(Vec2 x, Vec2 x0, double t);

}  // namespace bohm::freespace
