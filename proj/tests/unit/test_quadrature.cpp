#include <doctest.h>

#include <random>
#include <thread>

#include "bohm/halfline.hpp"
#include "bohm/quadrature.hpp"
#include "oracles.hpp"

using namespace bohm;
using namespace bohm::quadrature;
using freespace::GaussianPacket2D;

namespace {

const BoundaryCondition kN = BoundaryCondition::Neumann();
const BoundaryCondition kD = BoundaryCondition::Dirichlet();

double grad_norm(const ComplexGrad& g) { return std::sqrt(std::norm(g.dx) + std::norm(g.dy)); }

// Integral of the initial packet over the truncated support, by the same tensor rule.
Complex box_mass(const GaussianPacket2D& p, const TruncatedSupport& box, int order, const PhysicalConstants& c) {
    const auto rx = gauss_legendre(order, box.x_lo, box.x_hi);
    const auto ry = gauss_legendre(order, box.y_lo, box.y_hi);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < rx.nodes.size(); ++i)
        for (std::size_t j = 0; j < ry.nodes.size(); ++j)
            sum += rx.weights[i] * ry.weights[j] * initial_packet({rx.nodes[i], ry.nodes[j]}, p, c);
    return sum;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
    SUBCASE("x^3 on [0, 1] with two nodes") {
        const auto r = gauss_legendre(2, 0.0, 1.0);
        CHECK(r.integrate([](double x) { return x * x * x; }) == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("weights sum to the interval length") {
        for (int n : {2, 3, 7, 64, 256}) {
            const auto r = gauss_legendre(n, -1.0, 1.0);
            CHECK(r.integrate([](double) { return 1.0; }) == doctest::Approx(2.0).epsilon(1e-14));
            for (double x : r.nodes) {
                CHECK(x > -1.0);
                CHECK(x < 1.0);
            }
            CHECK(std::is_sorted(r.nodes.begin(), r.nodes.end()));
        }
    }
    SUBCASE("exp on [0, 1] with order 16") {
        const auto r = gauss_legendre(16, 0.0, 1.0);
        CHECK(std::abs(r.integrate([](double x) { return std::exp(x); }) - (std::exp(1.0) - 1.0)) <= 1e-13);
    }
    SUBCASE("exact up to degree 2n - 1") {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        for (int n : {2, 3, 5, 8, 12, 20}) {
            const int degree = 2 * n - 1;
            std::vector<double> a(static_cast<std::size_t>(degree + 1));
            for (auto& v : a) v = coef(rng);
            const double lo = -0.5;
            const double hi = 1.5;
            double exact = 0.0;
            for (int k = 0; k <= degree; ++k)
                exact += a[static_cast<std::size_t>(k)] * (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
            const auto r = gauss_legendre(n, lo, hi);
            const double got = r.integrate([&](double x) {
                double s = 0.0;
                for (int k = degree; k >= 0; --k) s = s * x + a[static_cast<std::size_t>(k)];
                return s;
            });
            CHECK(std::abs(got - exact) <= 1e-13 * std::max(1.0, std::abs(exact)));
        }
    }
    SUBCASE("invalid requests") {
        CHECK_THROWS_AS((void)gauss_legendre(1, 0.0, 1.0), InvalidArgument);
        CHECK_THROWS_AS((void)gauss_legendre(4, 1.0, 1.0), InvalidArgument);
        CHECK_THROWS_AS((void)gauss_legendre(4, 2.0, 1.0), InvalidArgument);
    }
    SUBCASE("the rule cache is safe under concurrent first use") {
        std::vector<std::vector<double>> seen(8);
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < seen.size(); ++k) {
            pool.emplace_back([&, k] {
                for (int n = 150; n < 170; ++n) {
                    const auto r = gauss_legendre(n, 0.0, 1.0);
                    seen[k].push_back(r.integrate([](double x) { return std::cos(x); }));
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& s : seen) CHECK(s == seen.front());
    }
}

TEST_CASE("initial packet and support") {
    const PhysicalConstants c;
    const GaussianPacket2D p({4.0, -4.0}, {0.0, 0.0}, 0.1);
    CHECK(initial_packet(p.center, p, c) == Complex{1.0 / (2.0 * kPi * 0.01), 0.0});

    const auto box = TruncatedSupport::around(p);
    CHECK(box == TruncatedSupport{3.7, 4.3, -4.3, -3.7});
    CHECK_FALSE(box.meets_barrier());
    CHECK_FALSE(diagnose_support(p, box).overlaps_barrier);

    SUBCASE("overlap mass matches a direct integral") {
        const GaussianPacket2D q({-1.0, 0.4}, {0.0, 0.0}, 0.5);
        const auto b = TruncatedSupport::around(q);
        const auto d = diagnose_support(q, b);
        CHECK(d.overlaps_barrier);
        const auto rho = [&](double x, double y) { return std::norm(initial_packet({x, y}, q, c)); };
        const auto mass = [&](double xl, double xh, double yl, double yh) {
            return oracle::integrate([&](double y) { return oracle::integrate([&](double x) { return rho(x, y); }, xl, xh); },
                                     yl, yh);
        };
        const double total = mass(b.x_lo, b.x_hi, b.y_lo, b.y_hi);
        const double far = mass(b.x_lo, 0.0, b.y_lo, 0.0);
        CHECK(d.far_side_mass == doctest::Approx(far / total).epsilon(1e-10));
    }
    SUBCASE("a packet centered on the barrier is rejected") {
        CHECK_THROWS_AS(PacketQuadrature(GaussianPacket2D({-1.0, 0.0}, {0, 0}, 0.2), kN, 8, c), InvalidArgument);
        CHECK_THROWS_AS(PacketQuadrature(GaussianPacket2D({0.0, 0.0}, {0, 0}, 0.2), kN, 8, c), InvalidArgument);
    }
}

TEST_CASE("packet wave function") {
    const PhysicalConstants c;

    SUBCASE("equals the direct tensor sum of propagator times initial state, and is linear") {
        const GaussianPacket2D p({2.0, -1.5}, {1.0, 0.5}, 0.4);
        const PacketQuadrature q(p, kD, 24, c);
        const auto rx = gauss_legendre(24, q.support().x_lo, q.support().x_hi);
        const auto ry = gauss_legendre(24, q.support().y_lo, q.support().y_hi);
        const Complex alpha{0.3, -2.0};
        for (const Vec2 x : {Vec2{-1.0, 1.0}, Vec2{3.0, 0.2}, Vec2{0.5, -2.5}}) {
            Complex direct = 0.0;
            for (std::size_t i = 0; i < rx.nodes.size(); ++i)
                for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
                    const Vec2 z{rx.nodes[i], ry.nodes[j]};
                    direct += rx.weights[i] * ry.weights[j] * halfline::halfline_propagator(x, z, 0.4, kD, c)
                              * alpha * initial_packet(z, p, c);
                }
            const Complex got = alpha * q.psi(x, 0.4);
            CHECK(std::abs(got - direct) <= 1e-11 * std::abs(direct));
        }
    }
    SUBCASE("narrow packet reduces to the propagator") {
        const GaussianPacket2D p({4.0, -4.0}, {0.0, 0.0}, 0.01);
        const PacketQuadrature q(p, kN, 16, c);
        const Complex mass = box_mass(p, q.support(), 16, c);
        for (const Vec2 x : {Vec2{1.0, 2.0}, Vec2{-2.0, 1.0}, Vec2{-3.0, -1.0}}) {
            // The residual shrinks like (k sigma)^2 with the local wavenumber k ~ m r / hbar t.
            for (double t : {0.5, 1.0}) {
                const Complex k = halfline::halfline_propagator(x, p.center, t, kN, c);
                CHECK(std::abs(q.psi(x, t) / mass - k) <= 0.01 * std::abs(k));
            }
        }
    }
    SUBCASE("far from the barrier the packet evolves freely") {
        const GaussianPacket2D p({4.0, -4.0}, {0.0, 0.0}, 0.5);
        // The free closed form is normalized; the initial packet here carries 1/(2 pi sigma^2).
        const double scale = 1.0 / std::sqrt(2.0 * kPi * p.width * p.width);
        const double t = 0.5;
        const PacketQuadrature wide(p, kN, 64, c, TruncatedSupport::around(p, 6.0));
        const PacketQuadrature paper(p, kN, 64, c);
        const auto rx = gauss_legendre(64, paper.support().x_lo, paper.support().x_hi);
        const auto ry = gauss_legendre(64, paper.support().y_lo, paper.support().y_hi);
        for (const Vec2 x : {Vec2{4.0, -4.0}, Vec2{5.0, -3.5}, Vec2{3.2, -4.6}}) {
            const Complex free = scale * freespace::free_gaussian_psi(x, t, p, c);
            CHECK(std::abs(wide.psi(x, t) - free) <= 1e-3 * std::abs(free));
            // The truncated state, propagated with no barrier at all.
            Complex truncated_free = 0.0;
            for (std::size_t i = 0; i < rx.nodes.size(); ++i)
                for (std::size_t j = 0; j < ry.nodes.size(); ++j) {
                    const Vec2 z{rx.nodes[i], ry.nodes[j]};
                    truncated_free += rx.weights[i] * ry.weights[j] * freespace::free_propagator(x, z, t, c)
                                      * initial_packet(z, p, c);
                }
            CHECK(std::abs(paper.psi(x, t) - truncated_free) <= 0.01 * std::abs(truncated_free));
            CHECK(std::abs(packet_psi(x, t, p, kN, 64, c) - paper.psi(x, t)) <= 1e-5 * std::abs(free));
        }
    }
    SUBCASE("Dirichlet packet vanishes on the barrier") {
        const GaussianPacket2D p({1.5, -1.5}, {0.0, 0.0}, 0.25);
        for (double t : {0.05, 0.3}) {
            const double peak = 1.0 / (2.0 * kPi * p.width * p.width * std::hypot(1.0, freespace::spreading(t, p.width, c)));
            for (double x : {-0.2, -1.0, -2.5}) CHECK(std::abs(packet_psi({x, 0.0}, t, p, kD, 64, c)) <= 1e-6 * peak);
        }
    }
    SUBCASE("successive orders form a Cauchy sequence") {
        const GaussianPacket2D p({2.0, -1.5}, {0.0, 0.0}, 0.4);
        for (const Vec2 x : {Vec2{-0.5, 0.8}, Vec2{2.0, -1.0}}) {
            std::vector<Complex> est;
            for (int n : {8, 16, 32, 64, 128}) est.push_back(PacketQuadrature(p, kN, n, c).psi(x, 0.3));
            const double floor = 1e-12 * std::abs(est.back());
            for (std::size_t k = 1; k + 1 < est.size(); ++k) {
                const double d0 = std::abs(est[k] - est[k - 1]);
                const double d1 = std::abs(est[k + 1] - est[k]);
                CHECK(d1 <= std::max(0.5 * d0, floor));
            }
        }
    }
    SUBCASE("non-convergence reports the last two estimates") {
        // At t = 1e-3 a wide packet needs far more than 256 nodes per axis.
        const GaussianPacket2D p({3.0, -3.0}, {0.0, 0.0}, 1.0);
        try {
            (void)packet_psi({3.0, -2.0}, 1e-3, p, kN, 64, c);
            FAIL("expected AccuracyError");
        } catch (const AccuracyError& e) {
            CHECK(e.previous() != e.last());
            CHECK(std::abs(e.last() - PacketQuadrature(p, kN, 256, c).psi({3.0, -2.0}, 1e-3)) == 0.0);
        }
    }
    SUBCASE("time and order guards") {
        const GaussianPacket2D p({2.0, -1.5}, {0.0, 0.0}, 0.4);
        CHECK_THROWS_AS((void)packet_psi({1.0, 1.0}, 5e-4, p, kN, 64, c), DomainError);
        CHECK_THROWS_AS((void)packet_psi({1.0, 1.0}, 0.1, p, kN, 1, c), InvalidArgument);
        CHECK_THROWS_AS((void)PacketQuadrature(p, kN, 8, c).psi({1.0, 1.0}, 0.0), DomainError);
    }
}

TEST_CASE("packet gradient and velocity") {
    const PhysicalConstants c;
    const GaussianPacket2D p({1.5, -1.5}, {0.5, 1.0}, 0.3);

    SUBCASE("gradient matches finite differences of the wave function") {
        const PacketQuadrature fine(p, kN, 256, c);
        std::mt19937_64 rng(123);
        std::uniform_real_distribution<double> rs(0.3, 3.5);
        std::uniform_real_distribution<double> ths(-kPi + 0.2, kPi - 0.2);
        std::uniform_real_distribution<double> ts(0.1, 0.6);
        double worst = 0.0;
        int used = 0;
        for (int i = 0; i < 100; ++i) {
            const Vec2 x = halfline::PolarPoint{rs(rng), ths(rng)}.cartesian();
            const double t = ts(rng);
            const double peak = 1.0 / (2.0 * kPi * p.width * p.width * std::hypot(1.0, freespace::spreading(t, p.width, c)));
            if (std::abs(fine.psi(x, t)) < 1e-3 * peak) continue;  // far tail: FD loses all digits
            const double h = 1e-4;
            const ComplexGrad fd{(fine.psi(x + Vec2{h, 0}, t) - fine.psi(x - Vec2{h, 0}, t)) / (2.0 * h),
                                 (fine.psi(x + Vec2{0, h}, t) - fine.psi(x - Vec2{0, h}, t)) / (2.0 * h)};
            const auto g = packet_grad_psi(x, t, p, kN, 64, c);
            worst = std::max(worst, grad_norm({g.dx - fd.dx, g.dy - fd.dy}) / grad_norm(g));
            ++used;
        }
        CHECK(used >= 40);
        CHECK(worst <= 1e-5);
    }
    SUBCASE("Neumann normal derivative vanishes on the barrier") {
        for (double x : {-0.3, -1.0, -2.0}) {
            const auto g = packet_grad_psi({x, 0.0}, 0.3, p, kN, 64, c);
            CHECK(std::abs(g.dy) <= 1e-5 * grad_norm(g));
            const Vec2 v = packet_velocity({x, 0.0}, 0.3, p, kN, 64, c);
            CHECK(std::abs(v.y) <= 1e-5 * norm(v));
        }
    }
    SUBCASE("narrow packet: grad psi / psi tends to grad K / K") {
        const GaussianPacket2D narrow({4.0, -4.0}, {0.0, 0.0}, 0.01);
        const PacketQuadrature q(narrow, kN, 16, c);
        for (const Vec2 x : {Vec2{1.0, 2.0}, Vec2{-2.0, 1.0}}) {
            const auto s = q.sample(x, 0.5);
            const Complex k = halfline::halfline_propagator(x, narrow.center, 0.5, kN, c);
            const auto gk = halfline::halfline_propagator_gradient(x, narrow.center, 0.5, kN, c);
            const ComplexGrad rp{s.grad.dx / s.psi, s.grad.dy / s.psi};
            const ComplexGrad rk{gk.dx / k, gk.dy / k};
            CHECK(grad_norm({rp.dx - rk.dx, rp.dy - rk.dy}) <= 0.01 * grad_norm(rk));
        }
    }
    SUBCASE("velocity of the fixed-order evaluator matches the adaptive one") {
        const PacketQuadrature q(p, kD, 128, c);
        for (const Vec2 x : {Vec2{1.0, 1.0}, Vec2{2.0, -1.0}}) {
            const Vec2 a = q.velocity(x, 0.3);
            const Vec2 b = packet_velocity(x, 0.3, p, kD, 64, c);
            CHECK(norm(a - b) <= 1e-5 * norm(b));
        }
    }
    SUBCASE("singular points") {
        const PacketQuadrature q(p, kD, 16, c);
        CHECK_THROWS_AS((void)q.sample({0.0, 0.0}, 0.3), SingularPoint);
        CHECK_THROWS_AS((void)q.velocity({-1.0, 0.0}, 0.3), NodeSingularity);
        CHECK(q.node_threshold(0.3) > 0.0);
    }
    SUBCASE("velocity at the packet center is finite right after release") {
        const GaussianPacket2D fig({4.0, -4.0}, {0.0, 0.0}, 0.1);
        const PacketQuadrature q(fig, kN, 64, c);
        const Vec2 v = q.velocity(fig.center, 0.01);
        CHECK(std::isfinite(v.x));
        CHECK(std::isfinite(v.y));
        // Seeds on a small circle move outward first.
        for (int k = 0; k < 8; ++k) {
            const Vec2 dir{std::cos(kPi * k / 4.0), std::sin(kPi * k / 4.0)};
            CHECK(dot(q.velocity(fig.center + dir * 0.02, 0.01) - v, dir) > 0.0);
        }
    }
}

TEST_CASE("order chosen per point and time") {
    const PhysicalConstants c;
    const GaussianPacket2D fig({-4.0, -4.0}, {0.0, 0.0}, 0.1);
    const ResolvedPacketQuadrature rq(fig, kD, 16, c);

    SUBCASE("more nodes early and far away, the floor late and near") {
        CHECK(rq.level_for(fig.center, 1.0).order() == 16);
        CHECK(rq.level_for(fig.center, 0.05).order() == 64);
        CHECK(rq.level_for(fig.center, 0.1).order() == 32);
        CHECK(rq.level_for(fig.center, 0.01).order() == 256);
        CHECK(rq.level_for({20.0, 20.0}, 0.1).order() > rq.level_for(fig.center, 0.1).order());
        CHECK(resolving_nodes(fig.center, 0.02, fig, rq.support(), c)
              > resolving_nodes(fig.center, 0.04, fig, rq.support(), c));
    }
    SUBCASE("beyond the cap is an explicit error") {
        CHECK_THROWS_AS((void)rq.level_for(fig.center, 1e-3), AccuracyError);
        CHECK_THROWS_AS((void)rq.psi(fig.center, 1e-3), AccuracyError);
        CHECK_THROWS_AS(ResolvedPacketQuadrature(fig, kD, 1, c), InvalidArgument);
    }
    SUBCASE("the chosen level agrees with order 256") {
        const double pm = 8.0 / std::sqrt(2.0);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (const auto& [packet, bc] : {std::pair{fig, kD}, std::pair{GaussianPacket2D({4.0, -4.0}, {0, 0}, 0.1), kN},
                                         std::pair{GaussianPacket2D({4.0, -4.0}, {-pm, pm}, 0.5), kD}}) {
            const ResolvedPacketQuadrature chosen(packet, bc, 16, c);
            const PacketQuadrature reference(packet, bc, 256, c);
            for (double t : {0.02, 0.1, 0.5}) {
                const double floor = 1e6 * reference.node_threshold(t);  // 1e-6 of the free peak
                for (int i = 0; i < 6; ++i) {
                    const Vec2 x = packet.center + (i < 3 ? 0.5 : 5.0) * Vec2{u(rng), u(rng)};
                    // Points beyond the cap are covered by the error subcase above.
                    if (resolving_nodes(x, t, packet, chosen.support(), c) > 128.0) continue;
                    const Complex a = chosen.psi(x, t);
                    const Complex b = reference.psi(x, t);
                    CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(b), floor));
                }
            }
        }
    }
}
