#pragma once

// Wave function of an initial Gaussian packet next to the half-line barrier,
// obtained by integrating the propagator (and its gradient) against the
// initial state with a tensor-product Gauss-Legendre rule over the packet's
// truncated support.

#include <memory>
#include <optional>
#include <vector>

#include "bohm/core.hpp"
#include "bohm/detail/halfline_kernel.hpp"
#include "bohm/freespace.hpp"

namespace bohm::quadrature {

inline constexpr int kDefaultOrder = 64;
inline constexpr int kMaxOrder = 256;
/// Below this time the integrand oscillates faster than the capped rule resolves.
inline constexpr double kMinTime = 1e-3;
inline constexpr double kConvergenceTolerance = 1e-6;

/// Gauss-Legendre rule mapped to [a, b].
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = -1.0;
    double b = 1.0;

    template <class F>
    auto integrate(F&& f) const {
        decltype(f(0.0)) sum{};
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// Rule of the given order on [a, b]. The reference rule on [-1, 1] is computed
/// once per order (Newton iteration on Legendre polynomials) and cached.
/// Throws InvalidArgument for order < 2 or a >= b.
QuadratureRule gauss_legendre(int order, double a, double b);

/// Integration box for the initial packet.
struct TruncatedSupport {
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    /// [xbar - n sigma, xbar + n sigma] x [ybar - n sigma, ybar + n sigma].
    static TruncatedSupport around(const freespace::GaussianPacket2D& packet, double n_sigma = 3.0);
    /// True when the box touches the barrier {y = 0, x <= 0}.
    [[nodiscard]] bool meets_barrier() const;
    friend bool operator==(const TruncatedSupport&, const TruncatedSupport&) = default;
};

/// Overlap between the integration box and the barrier. The box is never
/// clipped; far_side_mass is the fraction of the initial |psi_0|^2 inside the
/// box that sits on the other side of the barrier from the packet center.
struct SupportDiagnostics {
    bool overlaps_barrier = false;
    double far_side_mass = 0.0;
};

SupportDiagnostics diagnose_support(const freespace::GaussianPacket2D& packet, const TruncatedSupport& box);

/// Initial state exp(-|x - xbar|^2 / 4 sigma^2 + i pbar.x / hbar) / (2 pi sigma^2), unnormalized.
Complex initial_packet(Vec2 x, const freespace::GaussianPacket2D& packet, const PhysicalConstants& c = {});

/// Fixed-order evaluator. Nodes, weights and the initial state at every node
/// are computed once; each evaluation is a single pass over the tensor grid.
/// Immutable after construction, so one instance may be shared between threads.
class PacketQuadrature {
public:
    PacketQuadrature(const freespace::GaussianPacket2D& packet, BoundaryCondition bc, int order = kDefaultOrder,
                     const PhysicalConstants& c = {}, std::optional<TruncatedSupport> box = std::nullopt);

    /// Requires t > 0.
    [[nodiscard]] Complex psi(Vec2 x, double t) const;
    /// psi and its gradient. Throws SingularPoint at the tip.
    [[nodiscard]] PsiSample sample(Vec2 x, double t) const;
    /// (hbar/m) Im(grad psi / psi). Throws NodeSingularity where |psi| < node_threshold(t).
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const;
    /// 1e-12 times the peak modulus the free packet would have at time t.
    [[nodiscard]] double node_threshold(double t) const;

    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] const TruncatedSupport& support() const { return box_; }
    [[nodiscard]] const SupportDiagnostics& diagnostics() const { return diagnostics_; }
    [[nodiscard]] const freespace::GaussianPacket2D& packet() const { return packet_; }
    [[nodiscard]] BoundaryCondition boundary() const { return bc_; }

private:
    struct Source {
        halfline::detail::HalfAngles where;
        Complex weight;  ///< quadrature weight times psi_0 at the node
    };

    void require_time(double t, const char* who) const;

    freespace::GaussianPacket2D packet_;
    BoundaryCondition bc_;
    int order_;
    PhysicalConstants consts_;
    TruncatedSupport box_;
    SupportDiagnostics diagnostics_;
    std::vector<Source> sources_;
};

/// Nodes per axis needed to resolve the integrand's oscillation over the box at
/// (x, t). The phase gradient in the source point is bounded by
/// m (|x| + |z|) / hbar t + |pbar| / hbar (the longest path runs through the tip).
double resolving_nodes(Vec2 x, double t, const freespace::GaussianPacket2D& packet, const TruncatedSupport& box,
                       const PhysicalConstants& c = {});

/// Evaluators at orders floor, 2 floor, ... up to 256, each call served by the
/// lowest order that resolves the integrand there. Early times and far points
/// use more nodes; late times near the packet use the floor.
class ResolvedPacketQuadrature {
public:
    ResolvedPacketQuadrature(const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                             int floor_order = kDefaultOrder, const PhysicalConstants& c = {});

    /// Throws AccuracyError when even order 256 cannot resolve (x, t).
    [[nodiscard]] const PacketQuadrature& level_for(Vec2 x, double t) const;
    [[nodiscard]] Complex psi(Vec2 x, double t) const { return level_for(x, t).psi(x, t); }
    [[nodiscard]] PsiSample sample(Vec2 x, double t) const { return level_for(x, t).sample(x, t); }
    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const { return level_for(x, t).velocity(x, t); }

    [[nodiscard]] int floor_order() const { return levels_.front().order(); }
    [[nodiscard]] const freespace::GaussianPacket2D& packet() const { return levels_.front().packet(); }
    [[nodiscard]] BoundaryCondition boundary() const { return levels_.front().boundary(); }
    [[nodiscard]] const TruncatedSupport& support() const { return levels_.front().support(); }

private:
    PhysicalConstants consts_;
    std::vector<PacketQuadrature> levels_;
};

/// psi(x, t) by adaptive order doubling from `order` until two successive
/// estimates agree to 1e-6 relative, capped at order 256.
/// Throws DomainError for t < 1e-3, AccuracyError if the cap is reached.
Complex packet_psi(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                   int order = kDefaultOrder, const PhysicalConstants& c = {});

/// grad psi(x, t) with the same doubling, convergence judged on the gradient norm.
ComplexGrad packet_grad_psi(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                            int order = kDefaultOrder, const PhysicalConstants& c = {});

/// Bohmian velocity from the converged psi and grad psi.
Vec2 packet_velocity(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                     int order = kDefaultOrder, const PhysicalConstants& c = {});

}  // namespace bohm::quadrature
