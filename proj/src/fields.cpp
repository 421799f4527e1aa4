#include "bohm/fields.hpp"

#include <sstream>

namespace bohm::fields {
namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::string fmt(Vec2 v) { return "(" + fmt(v.x) + ", " + fmt(v.y) + ")"; }

}  // namespace

FreePacketField::FreePacketField(freespace::GaussianPacket2D packet, PhysicalConstants c)
    : packet_(packet), c_(c) {}

Vec2 FreePacketField::velocity(Vec2 x, double t) const { return freespace::free_gaussian_velocity(x, t, packet_, c_); }

Complex FreePacketField::psi(Vec2 x, double t) const { return freespace::free_gaussian_psi(x, t, packet_, c_); }

std::string FreePacketField::describe() const {
    return "free packet center " + fmt(packet_.center) + " momentum " + fmt(packet_.momentum) + " sigma "
           + fmt(packet_.width);
}

FreePropagatorField::FreePropagatorField(Vec2 source, PhysicalConstants c) : source_(source), c_(c) {}

Vec2 FreePropagatorField::velocity(Vec2 x, double t) const { return freespace::free_propagator_velocity(x, source_, t); }

Complex FreePropagatorField::psi(Vec2 x, double t) const { return freespace::free_propagator(x, source_, t, c_); }

std::string FreePropagatorField::describe() const { return "free propagator source " + fmt(source_); }

WallPacketField::WallPacketField(wall::WallPacket2D packet, BoundaryCondition bc, PhysicalConstants c)
    : packet_(packet), bc_(bc), c_(c) {}

Vec2 WallPacketField::velocity(Vec2 x, double t) const { return wall::wall_velocity_2d(x, t, packet_, bc_, c_); }

Complex WallPacketField::psi(Vec2 x, double t) const { return wall::wall_packet_psi_2d(x, t, packet_, bc_, c_); }

std::string WallPacketField::describe() const {
    return "wall packet " + to_string(bc_.kind) + " center " + fmt(Vec2{packet_.x.center, packet_.y.center})
           + " momentum " + fmt(Vec2{packet_.x.momentum, packet_.y.momentum}) + " sigma " + fmt(packet_.y.width);
}

WallPropagatorField::WallPropagatorField(Vec2 source, BoundaryCondition bc, PhysicalConstants c)
    : source_(source), bc_(bc), c_(c) {
    if (!(source.y > 0.0)) throw InvalidArgument("WallPropagatorField: source must have y > 0");
}

Vec2 WallPropagatorField::velocity(Vec2 x, double t) const {
    if (!(t > 0.0)) throw DomainError("WallPropagatorField: t must be > 0");
    if (!(x.y >= 0.0)) throw DomainError("WallPropagatorField: point below the wall (y < 0)");
    // The image factor is real (2 cos B or -2i sin B); its zeros are the nodes.
    const double b = c_.mass() * x.y * source_.y / (c_.hbar() * t);
    const double image = bc_.neumann() ? std::cos(b) : std::sin(b);
    if (std::abs(image) < 1e-12) {
        throw NodeSingularity("WallPropagatorField: propagator node at y = " + std::to_string(x.y),
                              std::abs(psi(x, t)));
    }
    return {(x.x - source_.x) / t, wall::wall_propagator_velocity(x.y, t)};
}

Complex WallPropagatorField::psi(Vec2 x, double t) const {
    return freespace::free_propagator_1d(x.x, source_.x, t, c_) * wall::wall_propagator_1d(x.y, source_.y, t, bc_, c_);
}

std::string WallPropagatorField::describe() const {
    return "wall propagator " + to_string(bc_.kind) + " source " + fmt(source_);
}

HalflinePropagatorField::HalflinePropagatorField(Vec2 source, BoundaryCondition bc, PhysicalConstants c)
    : source_(halfline::to_polar(source)), bc_(bc), c_(c) {
    if (halfline::on_barrier(source) || source_.r < 1e-10)
        throw InvalidArgument("HalflinePropagatorField: source lies on the barrier");
}

Vec2 HalflinePropagatorField::velocity(Vec2 x, double t) const {
    return halfline::halfline_propagator_velocity(halfline::to_polar(x), source_, t, bc_, c_);
}

Complex HalflinePropagatorField::psi(Vec2 x, double t) const {
    return halfline::halfline_propagator(halfline::to_polar(x), source_, t, bc_, c_);
}

std::string HalflinePropagatorField::describe() const {
    return "half-line propagator " + to_string(bc_.kind) + " source " + fmt(source_.cartesian());
}

HalflinePacketField::HalflinePacketField(const freespace::GaussianPacket2D& packet, BoundaryCondition bc, int order,
                                         PhysicalConstants c)
    : quad_(std::make_shared<const quadrature::ResolvedPacketQuadrature>(packet, bc, order, c)) {}

std::string HalflinePacketField::describe() const {
    const auto& p = quad_->packet();
    return "half-line packet " + to_string(quad_->boundary().kind) + " center " + fmt(p.center) + " momentum "
           + fmt(p.momentum) + " sigma " + fmt(p.width) + " order >= " + std::to_string(quad_->floor_order());
}

PlaneWaveField::PlaneWaveField(halfline::PlaneWave wave, BoundaryCondition bc, PhysicalConstants c)
    : wave_(wave), bc_(bc), c_(c) {}

Vec2 PlaneWaveField::velocity(Vec2 x, double) const { return halfline::planewave_velocity(x, wave_, bc_, c_); }

Complex PlaneWaveField::psi(Vec2 x, double) const { return halfline::planewave_psi(x, wave_, bc_); }

std::string PlaneWaveField::describe() const {
    return "plane wave " + to_string(bc_.kind) + " k0 " + fmt(wave_.k0) + " theta0 " + fmt(wave_.theta0);
}

}  // namespace bohm::fields
