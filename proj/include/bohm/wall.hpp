#pragma once

// Particle in the half-plane y > 0 bounded by a wall at y = 0. The y-motion is
// a half-line problem solved by mirror images; the x-motion is free.

#include "bohm/core.hpp"
#include "bohm/freespace.hpp"

namespace bohm::wall {

/// Symmetrised Gaussian on the half-line y >= 0: a packet at ybar > 0 plus its
/// mirror image at -ybar (with reversed momentum). norm_a is the closed-form
/// constant a(pbar, sigma, hbar).
struct WallPacket1D {
    double center = 1.0;   ///< ybar > 0
    double momentum = 0.0;
    double width = 1.0;
    double norm_a = 0.0;

    WallPacket1D() = default;
    WallPacket1D(double center, double momentum, double width, const PhysicalConstants& c = {});
    friend bool operator==(const WallPacket1D&, const WallPacket1D&) = default;
};

/// a = (2 pi)^{-1/4} [1 + exp(-2 (pbar sigma/hbar)^2) (1 - Re erf(-2i pbar sigma/hbar))]^{-1/2}
double wall_norm_constant(double momentum, double width, const PhysicalConstants& c = {});

/// Exact value of int_0^inf |psi_0|^2 dy for a packet built with wall_norm_constant:
/// (1 + exp(-ybar^2/2sigma^2 - 2 kappa^2)) / (1 + exp(-2 kappa^2)), kappa = pbar sigma/hbar.
double wall_initial_norm(const WallPacket1D& packet, const PhysicalConstants& c = {});

/// Packet in the x direction (free) times a wall packet in y.
struct WallPacket2D {
    freespace::GaussianPacket1D x;
    WallPacket1D y;
    friend bool operator==(const WallPacket2D&, const WallPacket2D&) = default;
};

/// psi(y, t) = R(t) exp(i phi(y, t)) (exp(i s/hbar) + eps exp(-i s/hbar)).
struct WallPacketFactors {
    Complex R;
    Complex phi;  ///< complex-valued; its imaginary part carries the Gaussian envelope
    Complex s;
};

WallPacketFactors wall_packet_factors(double y, double t, const WallPacket1D& packet,
                                      const PhysicalConstants& c = {});

/// Initial state: even (Neumann) or odd (Dirichlet) combination of the packet and its mirror.
Complex wall_initial_psi(double y, const WallPacket1D& packet, BoundaryCondition bc,
                         const PhysicalConstants& c = {});

/// Half-line propagator sqrt(m/2 pi i hbar t) [exp(i m (y-z)^2/2 hbar t) +- exp(i m (y+z)^2/2 hbar t)].
Complex wall_propagator_1d(double y, double z, double t, BoundaryCondition bc,
                           const PhysicalConstants& c = {});

/// Evolved packet; t = 0 returns wall_initial_psi.
Complex wall_packet_psi(double y, double t, const WallPacket1D& packet, BoundaryCondition bc,
                        const PhysicalConstants& c = {});

/// 2D product wave function psi_x(x, t) psi_y(y, t).
Complex wall_packet_psi_2d(Vec2 x, double t, const WallPacket2D& packet, BoundaryCondition bc,
                           const PhysicalConstants& c = {});

/// Normal (y) component of the Bohmian velocity of the half-line packet.
/// Throws NodeSingularity at a zero of psi (Dirichlet at y = 0 in particular).
double wall_velocity_1d(double y, double t, const WallPacket1D& packet, BoundaryCondition bc,
                        const PhysicalConstants& c = {});

/// (v_x, v_y): free Gaussian velocity along x, wall velocity along y.
Vec2 wall_velocity_2d(Vec2 x, double t, const WallPacket2D& packet, BoundaryCondition bc,
                      const PhysicalConstants& c = {});

/// Velocity y/t of the Neumann propagator state.
double wall_propagator_velocity(double y, double t);

}  // namespace bohm::wall
