#include "bohm/quadrature.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "bohm/halfline.hpp"

namespace bohm::quadrature {
namespace {

using halfline::detail::HalfAngles;
using halfline::detail::TimeScale;

struct ReferenceRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

ReferenceRule build_reference(int n) {
    ReferenceRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // Recompute the derivative at the converged root for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = -x;
        rule.nodes[hi] = x;
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

std::shared_ptr<const ReferenceRule> reference_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const ReferenceRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const ReferenceRule>(build_reference(n));
    return slot;
}

// Peak of |psi| for the free evolution of the unnormalized initial packet.
double free_peak(double t, double width, const PhysicalConstants& c) {
    const double tau = freespace::spreading(t, width, c);
    return 1.0 / (2.0 * kPi * width * width * std::hypot(1.0, tau));
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 2) throw InvalidArgument("gauss_legendre: order must be >= 2");
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidArgument("gauss_legendre: interval must satisfy a < b");
    const auto ref = reference_rule(order);
    QuadratureRule rule;
    rule.order = order;
    rule.a = a;
    rule.b = b;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    rule.nodes.reserve(ref->nodes.size());
    rule.weights.reserve(ref->nodes.size());
    for (std::size_t i = 0; i < ref->nodes.size(); ++i) {
        rule.nodes.push_back(mid + half * ref->nodes[i]);
        rule.weights.push_back(half * ref->weights[i]);
    }
    return rule;
}

TruncatedSupport TruncatedSupport::around(const freespace::GaussianPacket2D& p, double n_sigma) {
    if (!(n_sigma > 0.0)) throw InvalidArgument("TruncatedSupport: n_sigma must be > 0");
    const double h = n_sigma * p.width;
    return {p.center.x - h, p.center.x + h, p.center.y - h, p.center.y + h};
}

bool TruncatedSupport::meets_barrier() const { return y_lo <= 0.0 && y_hi >= 0.0 && x_lo <= 0.0; }

SupportDiagnostics diagnose_support(const freespace::GaussianPacket2D& p, const TruncatedSupport& box) {
    SupportDiagnostics d;
    d.overlaps_barrier = box.meets_barrier();
    if (!d.overlaps_barrier) return d;
    // Density factorizes; the part across the barrier is the strip x <= 0 on
    // the far side of y = 0.
    const auto gauss_mass = [&](double centre, double lo, double hi) {
        const double s = std::sqrt(2.0) * p.width;
        return 0.5 * (std::erf((hi - centre) / s) - std::erf((lo - centre) / s));
    };
    const double total = gauss_mass(p.center.x, box.x_lo, box.x_hi) * gauss_mass(p.center.y, box.y_lo, box.y_hi);
    const double far_y = p.center.y >= 0.0 ? gauss_mass(p.center.y, box.y_lo, 0.0)
                                           : gauss_mass(p.center.y, 0.0, box.y_hi);
    const double far_x = gauss_mass(p.center.x, box.x_lo, std::min(0.0, box.x_hi));
    d.far_side_mass = total > 0.0 ? far_x * far_y / total : 0.0;
    return d;
}

Complex initial_packet(Vec2 x, const freespace::GaussianPacket2D& p, const PhysicalConstants& c) {
    const Vec2 d = x - p.center;
    const double s2 = p.width * p.width;
    return std::exp(Complex{-dot(d, d) / (4.0 * s2), dot(p.momentum, x) / c.hbar()}) / (2.0 * kPi * s2);
}

PacketQuadrature::PacketQuadrature(const freespace::GaussianPacket2D& packet, BoundaryCondition bc, int order,
                                   const PhysicalConstants& c, std::optional<TruncatedSupport> box)
    : packet_(packet), bc_(bc), order_(order), consts_(c), box_(box.value_or(TruncatedSupport::around(packet))) {
    if (halfline::on_barrier(packet.center) || norm(packet.center) < 1e-10)
        throw InvalidArgument("PacketQuadrature: packet center lies on the barrier");
    diagnostics_ = diagnose_support(packet_, box_);
    const auto rx = gauss_legendre(order, box_.x_lo, box_.x_hi);
    const auto ry = gauss_legendre(order, box_.y_lo, box_.y_hi);
    sources_.reserve(rx.nodes.size() * ry.nodes.size());
    for (std::size_t i = 0; i < rx.nodes.size(); ++i) {
        for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
            const Vec2 node{rx.nodes[i], ry.nodes[j]};
            const auto polar = halfline::to_polar(node);
            sources_.push_back({halfline::detail::half_angles(node, polar.r, polar.theta),
                                rx.weights[i] * ry.weights[j] * initial_packet(node, packet_, consts_)});
        }
    }
}

void PacketQuadrature::require_time(double t, const char* who) const {
    if (!(t > 0.0)) throw DomainError(std::string(who) + ": requires t > 0");
}

double PacketQuadrature::node_threshold(double t) const { return 1e-12 * free_peak(t, packet_.width, consts_); }

Complex PacketQuadrature::psi(Vec2 x, double t) const {
    require_time(t, "PacketQuadrature::psi");
    const auto polar = halfline::to_polar(x);
    const auto here = halfline::detail::half_angles(x, polar.r, polar.theta);
    const TimeScale ts(consts_.mass() / (consts_.hbar() * t), bc_.epsilon());
    Complex sum = 0.0;
    for (const auto& s : sources_) sum += s.weight * halfline::detail::propagator_kernel<false>(here, s.where, ts).value;
    return sum;
}

PsiSample PacketQuadrature::sample(Vec2 x, double t) const {
    require_time(t, "PacketQuadrature::sample");
    const auto polar = halfline::to_polar(x);
    if (polar.r < 1e-10) throw SingularPoint("PacketQuadrature::sample: gradient diverges at the barrier tip");
    const auto here = halfline::detail::half_angles(x, polar.r, polar.theta);
    const TimeScale ts(consts_.mass() / (consts_.hbar() * t), bc_.epsilon());
    PsiSample out{0.0, {0.0, 0.0}};
    for (const auto& s : sources_) {
        const auto k = halfline::detail::propagator_kernel<true>(here, s.where, ts);
        out.psi += s.weight * k.value;
        out.grad.dx += s.weight * k.grad.dx;
        out.grad.dy += s.weight * k.grad.dy;
    }
    return out;
}

Vec2 PacketQuadrature::velocity(Vec2 x, double t) const {
    const auto s = sample(x, t);
    const double modulus = std::abs(s.psi);
    if (modulus < node_threshold(t))
        throw NodeSingularity("PacketQuadrature::velocity: wave function node", modulus);
    const double hm = consts_.hbar_over_mass();
    return {hm * (s.grad.dx / s.psi).imag(), hm * (s.grad.dy / s.psi).imag()};
}

double resolving_nodes(Vec2 x, double t, const freespace::GaussianPacket2D& packet, const TruncatedSupport& box,
                       const PhysicalConstants& c) {
    if (!(t > 0.0)) throw DomainError("resolving_nodes: requires t > 0");
    const double far_corner = std::max(std::hypot(box.x_lo, box.y_lo), std::hypot(box.x_lo, box.y_hi));
    const double reach = std::max(far_corner, std::max(std::hypot(box.x_hi, box.y_lo), std::hypot(box.x_hi, box.y_hi)));
    const double rate = c.mass() * (norm(x) + reach) / (c.hbar() * t) + norm(packet.momentum) / c.hbar();
    const double side = std::max(box.x_hi - box.x_lo, box.y_hi - box.y_lo);
    // Three eighths of a node per radian of phase across the box, plus a few for the envelope.
    return 0.375 * rate * side + 8.0;
}

ResolvedPacketQuadrature::ResolvedPacketQuadrature(const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                                                   int floor_order, const PhysicalConstants& c)
    : consts_(c) {
    if (floor_order < 2 || floor_order > kMaxOrder)
        throw InvalidArgument("ResolvedPacketQuadrature: floor order must lie in [2, 256]");
    for (int n = floor_order;; n *= 2) {
        levels_.emplace_back(packet, bc, std::min(n, kMaxOrder), c);
        if (n >= kMaxOrder) break;
    }
}

const PacketQuadrature& ResolvedPacketQuadrature::level_for(Vec2 x, double t) const {
    const double needed = resolving_nodes(x, t, packet(), support(), consts_);
    for (const auto& level : levels_)
        if (level.order() >= needed) return level;
    std::ostringstream msg;
    msg << "ResolvedPacketQuadrature: " << std::ceil(needed) << " nodes per axis needed at t = " << t
        << ", above the cap of 256";
    throw AccuracyError(msg.str(), 0.0, 0.0);
}

namespace {

void require_adaptive(double t, int order, const char* who) {
    if (!(t >= kMinTime))
        throw DomainError(std::string(who) + ": t must be >= 1e-3 (the rule cannot resolve the integrand earlier)");
    if (order < 2 || order > kMaxOrder) throw InvalidArgument(std::string(who) + ": order must lie in [2, 256]");
}

// Doubles the order (clamped at the cap) until
// distance(prev, next) <= tol * size(next).
template <class Eval, class Distance, class Size, class ToComplex>
auto converge(int order, const char* who, Eval eval, Distance distance, Size size, ToComplex to_complex) {
    // Starting at the cap leaves nothing to compare against; begin one level lower.
    if (order >= kMaxOrder) order = kMaxOrder / 2;
    auto prev = eval(order);
    auto last = prev;
    while (order < kMaxOrder) {
        order = std::min(2 * order, kMaxOrder);
        prev = last;
        last = eval(order);
        if (distance(prev, last) <= kConvergenceTolerance * size(last)) return last;
    }
    throw AccuracyError(std::string(who) + ": no convergence at order 256", to_complex(prev), to_complex(last));
}

}  // namespace

Complex packet_psi(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc, int order,
                   const PhysicalConstants& c) {
    require_adaptive(t, order, "packet_psi");
    return converge(
        order, "packet_psi", [&](int n) { return PacketQuadrature(packet, bc, n, c).psi(x, t); },
        [](Complex a, Complex b) { return std::abs(a - b); },
        [&](Complex v) { return std::max(std::abs(v), free_peak(t, packet.width, c) * 1e-6); },
        [](Complex v) { return v; });
}

ComplexGrad packet_grad_psi(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc,
                            int order, const PhysicalConstants& c) {
    require_adaptive(t, order, "packet_grad_psi");
    const auto gnorm = [](const ComplexGrad& g) { return std::sqrt(std::norm(g.dx) + std::norm(g.dy)); };
    return converge(
        order, "packet_grad_psi", [&](int n) { return PacketQuadrature(packet, bc, n, c).sample(x, t).grad; },
        [&](const ComplexGrad& a, const ComplexGrad& b) { return gnorm({a.dx - b.dx, a.dy - b.dy}); },
        [&](const ComplexGrad& g) { return std::max(gnorm(g), free_peak(t, packet.width, c) * 1e-6); },
        [](const ComplexGrad& g) { return g.dx; });
}

Vec2 packet_velocity(Vec2 x, double t, const freespace::GaussianPacket2D& packet, BoundaryCondition bc, int order,
                     const PhysicalConstants& c) {
    require_adaptive(t, order, "packet_velocity");
    const auto snorm = [](const PsiSample& s) {
        return std::sqrt(std::norm(s.psi) + std::norm(s.grad.dx) + std::norm(s.grad.dy));
    };
    const auto s = converge(
        order, "packet_velocity", [&](int n) { return PacketQuadrature(packet, bc, n, c).sample(x, t); },
        [&](const PsiSample& a, const PsiSample& b) {
            return std::sqrt(std::norm(a.psi - b.psi) + std::norm(a.grad.dx - b.grad.dx)
                             + std::norm(a.grad.dy - b.grad.dy));
        },
        [&](const PsiSample& v) { return std::max(snorm(v), free_peak(t, packet.width, c) * 1e-6); },
        [](const PsiSample& v) { return v.psi; });
    const double modulus = std::abs(s.psi);
    const double threshold = 1e-12 * free_peak(t, packet.width, c);
    if (modulus < threshold) throw NodeSingularity("packet_velocity: wave function node", modulus);
    const double hm = c.hbar_over_mass();
    return {hm * (s.grad.dx / s.psi).imag(), hm * (s.grad.dy / s.psi).imag()};
}

}  // namespace bohm::quadrature
