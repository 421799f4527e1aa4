#pragma once

// Bohmian trajectories dX/dt = v(X, t): fixed-step RK4 with an emergency
// step-halving guard, circular seeding, parallel ensembles, and the
// equivariance check (advected |psi|^2 samples against direct samples).

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bohm/core.hpp"

namespace bohm::dynamics {

/// Where particles are allowed to move.
enum class Geometry {
    Plane,      ///< no obstacle
    HalfPlane,  ///< wall at y = 0, motion in y >= 0
    HalfLine,   ///< barrier {y = 0, x <= 0}
};

/// A guiding wave function and its velocity field. Implementations must be
/// deterministic and safe to call concurrently.
class VelocityField {
public:
    virtual ~VelocityField() = default;

    /// Bohmian velocity at (x, t). Throws NumericError subclasses (NodeSingularity,
    /// DomainError, SingularPoint, ...) where it is undefined.
    [[nodiscard]] virtual Vec2 velocity(Vec2 x, double t) const = 0;
    /// The wave function itself, up to a constant factor.
    [[nodiscard]] virtual Complex psi(Vec2 x, double t) const = 0;
    [[nodiscard]] virtual Geometry geometry() const = 0;
    [[nodiscard]] virtual std::string describe() const = 0;

    /// Position allowed by the geometry (closed half-plane for a wall).
    [[nodiscard]] bool inside(Vec2 x) const;
    /// A straight move a -> b that stays inside and does not cross the barrier.
    [[nodiscard]] bool admissible(Vec2 a, Vec2 b) const;
};

/// Adapts any callable v(x, t) to a VelocityField (psi is not available).
class FunctionField final : public VelocityField {
public:
    using Fn = std::function<Vec2(Vec2, double)>;
    explicit FunctionField(Fn fn, Geometry geometry = Geometry::Plane, std::string name = "function");

    [[nodiscard]] Vec2 velocity(Vec2 x, double t) const override { return fn_(x, t); }
    /// Throws InvalidArgument: a bare velocity field has no wave function.
    [[nodiscard]] Complex psi(Vec2 x, double t) const override;
    [[nodiscard]] Geometry geometry() const override { return geometry_; }
    [[nodiscard]] std::string describe() const override { return name_; }

private:
    Fn fn_;
    Geometry geometry_;
    std::string name_;
};

enum class TrajectoryStatus { Completed, NodeEncounter, LeftDomain, StepFailure };

std::string to_string(TrajectoryStatus status);

struct TrajectorySample {
    double t;
    Vec2 x;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    std::string detail;  ///< reason for early termination, empty when completed
};

/// Raised by rk4_step when a stage fails; records which stage (1-4, or 5 for
/// the final position) and the underlying cause.
class StepFailure : public NumericError {
public:
    enum class Cause { Node, Domain, Other };
    StepFailure(const std::string& what, int stage, Cause cause)
        : NumericError(what), stage_(stage), cause_(cause) {}
    [[nodiscard]] int stage() const { return stage_; }
    [[nodiscard]] Cause cause() const { return cause_; }

private:
    int stage_;
    Cause cause_;
};

/// One classical RK4 step. Every stage point must be admissible with respect
/// to the starting position. Throws StepFailure.
Vec2 rk4_step(Vec2 x, double t, double h, const VelocityField& field);

struct IntegrationSettings {
    double h = 1e-3;
    int max_halvings = 20;
    /// Stop with LeftDomain when the particle leaves this box (if set).
    std::optional<Rect> bounds;
};

/// Integrates from t_init to t_end, recording a sample after every step of
/// length h (the last step may be shorter). A failed step is retried as two
/// half steps, recursively, up to max_halvings levels; a step that still fails
/// ends the trajectory with the matching status. Never throws for numeric
/// trouble; InvalidArgument for inconsistent settings.
Trajectory integrate(Vec2 seed, double t_init, double t_end, const VelocityField& field,
                     const IntegrationSettings& settings = {});

/// Seeds on a circle of radius rho around center at angles 2 pi k / N.
struct InitialCircle {
    Vec2 center;
    double radius = 0.02;
    int count = 16;
    double t_init = 0.01;

    friend bool operator==(const InitialCircle&, const InitialCircle&) = default;
};

/// Throws InvalidArgument for radius <= 0, count < 1 or t_init <= 0.
std::vector<Vec2> circle_seeds(const InitialCircle& circle);

/// Number of worker threads to use for `requested` (0 means hardware concurrency).
unsigned resolve_threads(unsigned requested);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
/// written by index; the first exception thrown by any task is rethrown.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// One trajectory per seed, in seed order; identical for any thread count.
std::vector<Trajectory> integrate_ensemble(const std::vector<Vec2>& seeds, double t_init, double t_end,
                                           const VelocityField& field, const IntegrationSettings& settings = {},
                                           unsigned threads = 0);

// ---------------------------------------------------------------------------
// Equivariance.

using Density = std::function<double(Vec2)>;

struct SamplerReport {
    std::vector<Vec2> points;
    double efficiency = 0.0;  ///< accepted / proposed
    double mass = 0.0;        ///< grid estimate of the density integral over the box
};

/// Rejection sampling of `count` points from an unnormalized density on `box`.
/// The envelope is 1.5 x the maximum over an envelope_grid^2 lattice. Throws
/// ConfigError when the estimated mass is below 1e-6 or the envelope is zero.
SamplerReport rejection_sample(const Density& density, const Rect& box, std::size_t count, std::uint64_t seed,
                               int envelope_grid = 128, unsigned threads = 0);

/// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

struct EquivarianceConfig {
    Rect box_initial;
    Rect box_final;
    std::size_t samples = 10000;
    double t_initial = 0.0;
    double t_final = 0.5;
    double h = 1e-2;
    std::uint64_t seed = 12345;
    int envelope_grid = 128;
    unsigned threads = 0;
};

struct EquivarianceReport {
    double ks_x = 1.0;
    double ks_y = 1.0;
    double efficiency_initial = 0.0;
    double efficiency_final = 0.0;
    std::size_t advected = 0;  ///< trajectories that completed
    std::size_t failed = 0;
};

/// Samples density_initial, advects every sample with the field from t_initial
/// to t_final, and compares the result with direct samples of density_final
/// on each axis. Requires samples >= 1000.
EquivarianceReport equivariance_test(const VelocityField& field, const Density& density_initial,
                                     const Density& density_final, const EquivarianceConfig& config);

}  // namespace bohm::dynamics
