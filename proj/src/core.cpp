#include "bohm/core.hpp"

namespace bohm {

PhysicalConstants::PhysicalConstants(double hbar, double mass) : hbar_(hbar), mass_(mass) {
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw InvalidArgument("PhysicalConstants: hbar must be finite and > 0");
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw InvalidArgument("PhysicalConstants: mass must be finite and > 0");
}

std::string to_string(BoundaryKind kind) {
    return kind == BoundaryKind::Neumann ? "neumann" : "dirichlet";
}

BoundaryKind parse_boundary_kind(const std::string& text) {
    if (text == "neumann" || text == "Neumann" || text == "N") return BoundaryKind::Neumann;
    if (text == "dirichlet" || text == "Dirichlet" || text == "D") return BoundaryKind::Dirichlet;
    throw ConfigError("unknown boundary condition '" + text + "' (expected neumann|dirichlet)");
}

}  // namespace bohm
