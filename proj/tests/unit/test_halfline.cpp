#include <doctest.h>

#include <functional>
#include <numeric>
#include <random>

#include "bohm/fields.hpp"
#include "bohm/freespace.hpp"
#include "bohm/halfline.hpp"
#include "bohm/specfun.hpp"
#include "oracles.hpp"

using namespace bohm;
using namespace bohm::halfline;

namespace {

const BoundaryCondition kN = BoundaryCondition::Neumann();
const BoundaryCondition kD = BoundaryCondition::Dirichlet();

double free_modulus(double t, const PhysicalConstants& c) { return c.mass() / (2.0 * kPi * c.hbar() * t); }

ComplexGrad fd_gradient(const std::function<Complex(Vec2)>& f, Vec2 x, double h) {
    return {(f(x + Vec2{h, 0}) - f(x - Vec2{h, 0})) / (2.0 * h), (f(x + Vec2{0, h}) - f(x - Vec2{0, h})) / (2.0 * h)};
}

double grad_norm(const ComplexGrad& g) { return std::sqrt(std::norm(g.dx) + std::norm(g.dy)); }

double grad_distance(const ComplexGrad& a, const ComplexGrad& b) {
    return std::sqrt(std::norm(a.dx - b.dx) + std::norm(a.dy - b.dy));
}

double angle_between(Vec2 a, Vec2 b) {
    return std::abs(std::atan2(a.x * b.y - a.y * b.x, dot(a, b)));
}

}  // namespace

TEST_CASE("polar geometry and the barrier") {
    CHECK(to_polar({-2.0, 0.0}).theta == -kPi);
    CHECK(to_polar({0.0, 1.0}).theta == doctest::Approx(kPi / 2));
    CHECK(to_polar({3.0, -4.0}).r == doctest::Approx(5.0));
    const PolarPoint p{2.0, 0.7};
    CHECK(norm(to_polar(p.cartesian()).cartesian() - p.cartesian()) <= 1e-15);

    CHECK(on_barrier({-1.0, 0.0}));
    CHECK(on_barrier({-1.0, 5e-13}));
    CHECK_FALSE(on_barrier({1.0, 0.0}));
    CHECK_FALSE(on_barrier({-1.0, 1e-6}));

    CHECK(barrier_distance({-3.0, 0.5}) == 0.5);
    CHECK(barrier_distance({3.0, 4.0}) == 5.0);

    CHECK(crosses_barrier({-1.0, 0.1}, {-1.0, -0.1}));
    CHECK_FALSE(crosses_barrier({1.0, 0.1}, {1.0, -0.1}));
    CHECK_FALSE(crosses_barrier({-1.0, 0.1}, {-2.0, 0.3}));
    CHECK(crosses_barrier({0.5, 1.0}, {-1.5, -1.0}));  // segment hits y = 0 at x = -0.5
}

TEST_CASE("half-line propagator") {
    const PhysicalConstants c;
    const PolarPoint src{4.0 * std::sqrt(2.0), -kPi / 4.0};

    SUBCASE("Dirichlet vanishes at the barrier seam") {
        for (double t : {0.3, 1.0}) {
            for (double r : {0.5, 3.0}) {
                const double k = std::abs(halfline_propagator(PolarPoint{r, kPi - 1e-9}, src, t, kD, c));
                CHECK(k <= 1e-6 * free_modulus(t, c));
                CHECK(std::abs(halfline_propagator(Vec2{-r, 0.0}, src.cartesian(), t, kD, c)) <= 1e-12 * free_modulus(t, c));
            }
        }
    }
    SUBCASE("Neumann reduces to the free propagator when u2 = -u1") {
        // A source on the positive x axis (theta0 = 0) gives u2 = -u1 everywhere.
        const PolarPoint s0{3.0, 0.0};
        for (const PolarPoint x : {PolarPoint{2.0, 0.4}, PolarPoint{5.0, -2.0}, PolarPoint{1.0, 2.9}}) {
            const Complex k = halfline_propagator(x, s0, 0.8, kN, c);
            const Complex free = freespace::free_propagator(x.cartesian(), s0.cartesian(), 0.8, c);
            CHECK(std::abs(k - free) <= 1e-12 * std::abs(free));
        }
    }
    SUBCASE("deep in region II it is the free propagator") {
        const PolarPoint x{200.0, 0.0};
        const PolarPoint s{5.657, -kPi / 4.0};
        const Complex k = halfline_propagator(x, s, 1.0, kN, c);
        const Complex free = freespace::free_propagator(x.cartesian(), s.cartesian(), 1.0, c);
        CHECK(std::abs(k - free) <= 0.01 * std::abs(free));
    }
    SUBCASE("Neumann plus Dirichlet isolates each diffraction term") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> rs(0.1, 8.0);
        std::uniform_real_distribution<double> ths(-kPi, kPi);
        std::uniform_real_distribution<double> ts(0.05, 2.0);
        for (int i = 0; i < 300; ++i) {
            const PolarPoint x{rs(rng), ths(rng)};
            const PolarPoint x0{rs(rng), ths(rng)};
            const double t = ts(rng);
            const auto [u1, u2] = diffraction_arguments(x, x0, t, c);
            const Complex front = c.mass() / (2.0 * kPi * kI * c.hbar() * t)
                                  * std::polar(1.0, c.mass() * (x.r + x0.r) * (x.r + x0.r) / (2.0 * c.hbar() * t));
            const Complex kn = halfline_propagator(x, x0, t, kN, c);
            const Complex kd = halfline_propagator(x, x0, t, kD, c);
            const double scale = free_modulus(t, c);
            // Tolerance carries the rounding of the overall phase m (r + r0)^2 / 2 hbar t.
            const double phase = c.mass() * (x.r + x0.r) * (x.r + x0.r) / (2.0 * c.hbar() * t);
            const double tol = 1e-12 * scale * std::max(1.0, phase / 100.0);
            CHECK(std::abs(kn + kd - 2.0 * front * specfun::fresnel_F(u1)) <= tol);
            CHECK(std::abs(kn - kd - 2.0 * front * specfun::fresnel_F(u2)) <= tol);
        }
    }
    SUBCASE("diffraction arguments") {
        const PolarPoint x{2.0, 1.0};
        const auto [u1, u2] = diffraction_arguments(x, src, 0.5, c);
        const double amp = std::sqrt(2.0 * c.mass() * x.r * src.r / (c.hbar() * 0.5));
        CHECK(u1 == doctest::Approx(amp * std::cos(0.5 * (x.theta - src.theta))));
        CHECK(u2 == doctest::Approx(-amp * std::cos(0.5 * (x.theta + src.theta))));
    }
    SUBCASE("non-positive time is rejected") {
        CHECK_THROWS_AS((void)halfline_propagator(PolarPoint{1.0, 0.0}, src, 0.0, kN, c), DomainError);
        CHECK_THROWS_AS((void)halfline_propagator_gradient(PolarPoint{1.0, 0.0}, src, -1.0, kN, c), DomainError);
    }
}

TEST_CASE("propagator gradient") {
    const PhysicalConstants c;
    const Vec2 src{4.0, -4.0};

    SUBCASE("finite differences at random interior points") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> rs(0.3, 6.0);
        std::uniform_real_distribution<double> ths(-kPi + 0.2, kPi - 0.2);
        std::uniform_real_distribution<double> ts(0.2, 2.0);
        for (auto bc : {kN, kD}) {
            double worst = 0.0;
            for (int i = 0; i < 100; ++i) {
                const Vec2 x = PolarPoint{rs(rng), ths(rng)}.cartesian();
                const double t = ts(rng);
                const auto g = halfline_propagator_gradient(x, src, t, bc, c);
                const auto fd = fd_gradient([&](Vec2 y) { return halfline_propagator(y, src, t, bc, c); }, x, 1e-5);
                worst = std::max(worst, grad_distance(g, fd) / grad_norm(g));
            }
            CHECK(worst <= 1e-6);
        }
    }
    SUBCASE("Neumann normal derivative vanishes on the barrier") {
        for (double r : {0.5, 2.0, 6.0}) {
            const auto on = halfline_propagator_gradient(Vec2{-r, 0.0}, src, 0.7, kN, c);
            CHECK(std::abs(on.dy) <= 1e-12 * grad_norm(on));
            const auto near = halfline_propagator_gradient(PolarPoint{r, kPi - 1e-6}, to_polar(src), 0.7, kN, c);
            CHECK(std::abs(near.dy) <= 1e-4 * grad_norm(near));
        }
    }
    SUBCASE("gradient grows like r^{-1/2} into the tip") {
        for (auto bc : {kN, kD}) {
            std::vector<double> lx;
            std::vector<double> ly;
            for (int k = 0; k <= 20; ++k) {
                const double r = std::pow(10.0, -4.0 + 0.1 * k);
                lx.push_back(std::log(r));
                ly.push_back(std::log(grad_norm(halfline_propagator_gradient(PolarPoint{r, kPi / 3.0}, to_polar(src), 1.0, bc, c))));
            }
            const double n = static_cast<double>(lx.size());
            const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
            const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
            double sxy = 0.0;
            double sxx = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sxy += (lx[i] - mx) * (ly[i] - my);
                sxx += (lx[i] - mx) * (lx[i] - mx);
            }
            const double slope = sxy / sxx;
            CHECK(slope >= -0.6);
            CHECK(slope <= -0.4);
        }
    }
    SUBCASE("the tip itself is rejected") {
        CHECK_THROWS_AS((void)halfline_propagator_gradient(Vec2{0.0, 0.0}, src, 1.0, kN, c), SingularPoint);
        CHECK_THROWS_AS((void)halfline_propagator_velocity(Vec2{1e-11, 0.0}, src, 1.0, kN, c), SingularPoint);
    }
}

TEST_CASE("propagator velocity") {
    const PhysicalConstants c;
    const Vec2 src{4.0, -4.0};
    const PolarPoint psrc = to_polar(src);

    SUBCASE("closed formula equals (hbar/m) Im(grad K / K)") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> rs(0.05, 10.0);
        std::uniform_real_distribution<double> ths(-kPi, kPi);
        std::uniform_real_distribution<double> ts(0.05, 3.0);
        for (auto bc : {kN, kD}) {
            double worst = 0.0;
            for (int i = 0; i < 500; ++i) {
                const Vec2 x = PolarPoint{rs(rng), ths(rng)}.cartesian();
                const double t = ts(rng);
                const Complex k = halfline_propagator(x, src, t, bc, c);
                if (std::abs(k) < 1e-6 * free_modulus(t, c)) continue;
                const auto g = halfline_propagator_gradient(x, src, t, bc, c);
                const Vec2 ref{c.hbar_over_mass() * (g.dx / k).imag(), c.hbar_over_mass() * (g.dy / k).imag()};
                const Vec2 v = halfline_propagator_velocity(x, src, t, bc, c);
                worst = std::max(worst, norm(v - ref) / std::max(norm(ref), 1e-300));
            }
            CHECK(worst <= 1e-10);
        }
    }
    SUBCASE("Dirichlet node on the barrier") {
        CHECK_THROWS_AS((void)halfline_propagator_velocity(Vec2{-2.0, 0.0}, src, 0.5, kD, c), NodeSingularity);
    }
    SUBCASE("Neumann normal velocity vanishes on the barrier") {
        for (double r : {0.3, 1.0, 4.0}) {
            const Vec2 v = halfline_propagator_velocity(Vec2{-r, 0.0}, src, 0.6, kN, c);
            CHECK(std::abs(v.y) <= 1e-12 * norm(v));
        }
    }
    SUBCASE("region asymptotics at r = 200, r0 = 4 sqrt 2, t = 1") {
        for (auto bc : {kN, kD}) {
            const Vec2 x1 = PolarPoint{200.0, 0.9 * kPi}.cartesian();
            const Vec2 v1 = halfline_propagator_velocity(x1, src, 1.0, bc, c);
            CHECK(angle_between(v1, x1) <= 0.05);

            const Vec2 x2 = PolarPoint{200.0, 0.0}.cartesian();
            const Vec2 v2 = halfline_propagator_velocity(x2, src, 1.0, bc, c);
            CHECK(norm(v2 - (x2 - src)) <= 0.01 * norm(v2));

            const Vec2 x3 = PolarPoint{200.0, -0.9 * kPi}.cartesian();
            const Vec2 v3 = halfline_propagator_velocity(x3, src, 1.0, bc, c);
            const Vec2 reflected{x3.x - src.x, x3.y};
            CHECK(norm(v3 - reflected) <= 0.01 * norm(v3));
        }
    }
    SUBCASE("region I flow is radial for sources with r0 <= 6") {
        for (double r0 : {1.0, 4.0 * std::sqrt(2.0), 6.0}) {
            for (double th0 : {-0.1, -kPi / 4.0, -kPi / 2.0, -2.5}) {
                const Vec2 s = PolarPoint{r0, th0}.cartesian();
                for (double frac : {0.2, 0.5, 0.8}) {
                    const double theta = kPi + th0 + frac * (-th0);
                    const Vec2 x = PolarPoint{200.0, theta}.cartesian();
                    const auto [u1, u2] = diffraction_arguments(to_polar(x), PolarPoint{r0, th0}, 1.0, c);
                    if (std::min(std::abs(u1), std::abs(u2)) < 5.0) continue;
                    const Vec2 v = halfline_propagator_velocity(x, s, 1.0, kN, c);
                    const Vec2 radial = x * ((200.0 + r0) / 200.0);
                    CHECK(norm(v - radial) <= 0.05 * norm(v));
                }
            }
        }
    }
}

TEST_CASE("region classification") {
    const double th0 = -kPi / 4.0;
    CHECK(classify_region(0.9 * kPi, th0) == FarFieldRegion::I);
    CHECK(classify_region(0.0, th0) == FarFieldRegion::II);
    CHECK(classify_region(-0.9 * kPi, th0) == FarFieldRegion::III);
    CHECK(classify_region(kPi + th0, th0) == FarFieldRegion::OpticalBoundary);
    CHECK(classify_region(-kPi - th0, th0) == FarFieldRegion::OpticalBoundary);
    CHECK(classify_region(-kPi, th0) == FarFieldRegion::Barrier);
    CHECK_THROWS_AS((void)classify_region(0.0, 0.5), InvalidArgument);
    CHECK_THROWS_AS((void)classify_region(0.0, -kPi), InvalidArgument);
    CHECK_THROWS_AS((void)classify_region(kPi, th0), InvalidArgument);
    // Sources above the axis are mirrored first.
    CHECK(farfield_region(PolarPoint{10.0, -0.9 * kPi}.cartesian(), Vec2{4.0, 4.0}) == FarFieldRegion::I);
    CHECK(to_string(FarFieldRegion::III) == "III");
}

TEST_CASE("far-field velocity") {
    const PhysicalConstants c;
    const Vec2 src{4.0, -4.0};
    SUBCASE("closed forms per region") {
        const Vec2 x1 = PolarPoint{200.0, 0.9 * kPi}.cartesian();
        const Vec2 v1 = farfield_velocity(x1, src, 1.0, kN, c);
        CHECK(norm(v1 - x1 * ((200.0 + norm(src)) / 200.0)) <= 1e-12 * norm(v1));
        const Vec2 x2 = PolarPoint{200.0, 0.3}.cartesian();
        CHECK(farfield_velocity(x2, src, 1.0, kN, c) == (x2 - src) / 1.0);
        const Vec2 x3 = PolarPoint{200.0, -0.9 * kPi}.cartesian();
        const Vec2 v3 = farfield_velocity(x3, src, 1.0, kN, c);
        CHECK(v3.y == doctest::Approx(x3.y));
        CHECK(v3.x == doctest::Approx(x3.x - src.x));
    }
    SUBCASE("agreement with the exact field within the next-order bound") {
        for (auto bc : {kN, kD}) {
            for (double theta = -kPi + 0.01; theta < kPi; theta += 0.05) {
                const Vec2 x = PolarPoint{200.0, theta}.cartesian();
                const auto [u1, u2] = diffraction_arguments(to_polar(x), to_polar(src), 1.0, c);
                const double umin = std::min(std::abs(u1), std::abs(u2));
                if (umin < 5.0) {
                    CHECK_THROWS_AS((void)farfield_velocity(x, src, 1.0, bc, c), OutOfAsymptoticRange);
                    continue;
                }
                const Vec2 exact = halfline_propagator_velocity(x, src, 1.0, bc, c);
                const Vec2 asym = farfield_velocity(x, src, 1.0, bc, c);
                CHECK(norm(exact - asym) <= 2.0 / (2.0 * std::sqrt(kPi) * umin) * norm(exact));
            }
        }
    }
    SUBCASE("outside the asymptotic range") {
        CHECK_THROWS_AS((void)farfield_velocity(Vec2{3.0, 0.0}, src, 1.0, kN, c), OutOfAsymptoticRange);
    }
}

TEST_CASE("plane-wave scattering state") {
    const PlaneWave up(5.0, -kPi / 2.0);

    SUBCASE("Dirichlet vanishes on the barrier") {
        for (double r : {0.2, 1.0, 5.0}) {
            CHECK(std::abs(planewave_psi(PolarPoint{r, kPi - 1e-9}, up, kD)) <= 1e-6);
            CHECK(std::abs(planewave_psi(Vec2{-r, 0.0}, up, kD)) <= 1e-12);
        }
    }
    SUBCASE("Neumann state with a2 = -a1 is a unit-modulus plane wave") {
        const PlaneWave axis(3.0, 0.0);
        for (const PolarPoint x : {PolarPoint{1.0, 0.3}, PolarPoint{4.0, -2.0}, PolarPoint{2.5, 2.8}}) {
            const Complex psi = planewave_psi(x, axis, kN);
            CHECK(std::abs(psi) == doctest::Approx(1.0).epsilon(1e-12));
            const Complex plane = std::exp(kI * dot(axis.wave_vector(), x.cartesian()));
            CHECK(std::abs(psi - plane) <= 1e-12);
        }
    }
    SUBCASE("Helmholtz residual by the five-point stencil") {
        const double h = 1e-3;
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> rs(0.3, 6.0);
        std::uniform_real_distribution<double> ths(-kPi + 0.1, kPi - 0.1);
        for (const PlaneWave w : {up, PlaneWave(5.0, kPi / 3.0), PlaneWave(2.0, -2.0)}) {
            for (auto bc : {kN, kD}) {
                double worst = 0.0;
                for (int i = 0; i < 50; ++i) {
                    const Vec2 x = PolarPoint{rs(rng), ths(rng)}.cartesian();
                    const auto f = [&](Vec2 y) { return planewave_psi(y, w, bc); };
                    const Complex lap = (f(x + Vec2{h, 0}) + f(x - Vec2{h, 0}) + f(x + Vec2{0, h}) + f(x - Vec2{0, h})
                                         - 4.0 * f(x))
                                        / (h * h);
                    const Complex psi = f(x);
                    if (std::abs(psi) < 1e-3) continue;
                    worst = std::max(worst, std::abs(lap + w.k0 * w.k0 * psi) / (w.k0 * w.k0 * std::abs(psi)));
                }
                CHECK(worst <= 1e-4);
            }
        }
    }
    SUBCASE("node near (-1.5, -4.7) for k0 = 5 with momentum along +y") {
        double best = 1e300;
        Vec2 where;
        for (double x = -1.8; x <= -1.2; x += 0.002) {
            for (double y = -5.0; y <= -4.4; y += 0.002) {
                const double m = std::abs(planewave_psi(Vec2{x, y}, up, kN));
                if (m < best) {
                    best = m;
                    where = {x, y};
                }
            }
        }
        CHECK(best <= 1e-2);
        CHECK(norm(where - Vec2{-1.5, -4.7}) <= 0.3);
        // Interior minimum, not an edge of the search window.
        CHECK(where.x > -1.79);
        CHECK(where.x < -1.21);
        CHECK(where.y > -4.99);
        CHECK(where.y < -4.41);
    }
}

TEST_CASE("plane-wave gradient and velocity") {
    const PhysicalConstants c;
    const PlaneWave up(5.0, -kPi / 2.0);

    SUBCASE("finite-difference gradient") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> rs(0.3, 6.0);
        std::uniform_real_distribution<double> ths(-kPi + 0.1, kPi - 0.1);
        for (const PlaneWave w : {up, PlaneWave(5.0, kPi / 3.0)}) {
            for (auto bc : {kN, kD}) {
                double worst = 0.0;
                double worst_v = 0.0;
                for (int i = 0; i < 200; ++i) {
                    const PolarPoint p{rs(rng), ths(rng)};
                    const Vec2 x = p.cartesian();
                    const auto g = planewave_gradient(p, w, bc);
                    const auto fd = fd_gradient([&](Vec2 y) { return planewave_psi(y, w, bc); }, x, 1e-5);
                    worst = std::max(worst, grad_distance(g, fd) / grad_norm(g));
                    const Complex psi = planewave_psi(p, w, bc);
                    if (std::abs(psi) < 1e-3) continue;
                    const Vec2 vfd{c.hbar_over_mass() * (fd.dx / psi).imag(), c.hbar_over_mass() * (fd.dy / psi).imag()};
                    const Vec2 v = planewave_velocity(p, w, bc, c);
                    worst_v = std::max(worst_v, norm(v - vfd) / norm(v));
                }
                CHECK(worst <= 1e-6);
                CHECK(worst_v <= 1e-6);
            }
        }
    }
    SUBCASE("Neumann normal velocity vanishes on the barrier") {
        for (double r : {0.3, 1.0, 4.0}) {
            const Vec2 v = planewave_velocity(PolarPoint{r, kPi - 1e-9}, up, kN, c);
            CHECK(std::abs(v.y) <= 1e-6 * norm(v));
        }
    }
    SUBCASE("far from the tip on the lit side the flow is the incident momentum") {
        const Vec2 classical = up.wave_vector() * c.hbar_over_mass();
        for (double theta : {-1.2, -0.5, 0.0, 0.6, 1.3}) {
            const PolarPoint p{1e4 / up.k0, theta};
            const Vec2 v = planewave_velocity(p, up, kN, c);
            CHECK(norm(v - classical) <= 3.0 / std::sqrt(up.k0 * p.r) * norm(classical));
        }
    }
    SUBCASE("the field does not depend on time") {
        const fields::PlaneWaveField field(up, kN, c);
        for (const Vec2 x : {Vec2{1.0, 2.0}, Vec2{-3.0, -0.5}}) CHECK(field.velocity(x, 0.1) == field.velocity(x, 17.0));
    }
    SUBCASE("node and tip errors") {
        CHECK_THROWS_AS((void)planewave_velocity(Vec2{-1.0, 0.0}, up, kD, c), NodeSingularity);
        CHECK_THROWS_AS((void)planewave_velocity(Vec2{0.0, 0.0}, up, kN, c), SingularPoint);
        CHECK_THROWS_AS(PlaneWave(0.0, 0.0), InvalidArgument);
    }
}
