#pragma once

// Concrete guiding waves wrapped as VelocityFields for the integrator.

#include <memory>

#include "bohm/dynamics.hpp"
#include "bohm/freespace.hpp"
#include "bohm/halfline.hpp"
#include "bohm/quadrature.hpp"
#include "bohm/wall.hpp"

namespace bohm::fields {

using dynamics::Geometry;
using dynamics::VelocityField;

class FreePacketField final : public VelocityField {
public:
    explicit FreePacketField(freespace::GaussianPacket2D packet, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::Plane; }
    [[nodiscard]] std::string describe() const override;

private:
    freespace::GaussianPacket2D packet_;
    PhysicalConstants c_;
};

/// Free propagator state started from a point source at x0.
class FreePropagatorField final : public VelocityField {
public:
    explicit FreePropagatorField(Vec2 source, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::Plane; }
    [[nodiscard]] std::string describe() const override;

private:
    Vec2 source_;
    PhysicalConstants c_;
};

/// Free packet along x times symmetrised wall packet along y.
class WallPacketField final : public VelocityField {
public:
    WallPacketField(wall::WallPacket2D packet, BoundaryCondition bc, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::HalfPlane; }
    [[nodiscard]] std::string describe() const override;

private:
    wall::WallPacket2D packet_;
    BoundaryCondition bc_;
    PhysicalConstants c_;
};

/// Wall propagator state from a source at (x0, y0), y0 > 0. Velocity
/// ((x - x0)/t, y/t) away from its nodes.
class WallPropagatorField final : public VelocityField {
public:
    WallPropagatorField(Vec2 source, BoundaryCondition bc, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::HalfPlane; }
    [[nodiscard]] std::string describe() const override;

private:
    Vec2 source_;
    BoundaryCondition bc_;
    PhysicalConstants c_;
};

class HalflinePropagatorField final : public VelocityField {
public:
    HalflinePropagatorField(Vec2 source, BoundaryCondition bc, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::HalfLine; }
    [[nodiscard]] std::string describe() const override;

private:
    halfline::PolarPoint source_;
    BoundaryCondition bc_;
    PhysicalConstants c_;
};

/// Gaussian packet next to the half-line, by quadrature at the lowest order
/// (from `order` up to 256) that resolves the integrand at each point and time.
class HalflinePacketField final : public VelocityField {
public:
    HalflinePacketField(const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                        int order = quadrature::kDefaultOrder, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override { return quad_->velocity(x, t); }
    [[nodiscard]] Complex psi(Vec2 x, double t) const override { return quad_->psi(x, t); }
    [[nodiscard]] Geometry geometry() const override { return Geometry::HalfLine; }
    [[nodiscard]] std::string describe() const override;
    [[nodiscard]] const quadrature::ResolvedPacketQuadrature& quadrature() const { return *quad_; }

private:
    std::shared_ptr<const quadrature::ResolvedPacketQuadrature> quad_;
};

/// Stationary scattering state of an incident plane wave; time is ignored.
class PlaneWaveField final : public VelocityField {
public:
    PlaneWaveField(halfline::PlaneWave wave, BoundaryCondition bc, PhysicalConstants c = {});
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override;
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return Geometry::HalfLine; }
    [[nodiscard]] std::string describe() const override;

private:
    halfline::PlaneWave wave_;
    BoundaryCondition bc_;
    PhysicalConstants c_;
};

}  // namespace bohm::fields
