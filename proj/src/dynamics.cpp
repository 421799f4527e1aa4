#include "bohm/dynamics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "bohm/halfline.hpp"

namespace bohm::dynamics {

bool VelocityField::inside(Vec2 x) const {
    if (!std::isfinite(x.x) || !std::isfinite(x.y)) return false;
    if (geometry() == Geometry::HalfPlane) return x.y >= 0.0;
    return true;
}

bool VelocityField::admissible(Vec2 a, Vec2 b) const {
    if (!inside(b)) return false;
    if (geometry() == Geometry::HalfLine) return !halfline::crosses_barrier(a, b);
    return true;
}

FunctionField::FunctionField(Fn fn, Geometry geometry, std::string name)
    : fn_(std::move(fn)), geometry_(geometry), name_(std::move(name)) {
    if (!fn_) throw InvalidArgument("FunctionField: empty velocity function");
}

Complex FunctionField::psi(Vec2, double) const {
    throw InvalidArgument("FunctionField: no wave function attached to '" + name_ + "'");
}

std::string to_string(TrajectoryStatus status) {
    switch (status) {
        case TrajectoryStatus::Completed: return "completed";
        case TrajectoryStatus::NodeEncounter: return "node-encounter";
        case TrajectoryStatus::LeftDomain: return "left-domain";
        case TrajectoryStatus::StepFailure: return "step-failure";
    }
    return "?";
}

namespace {

Vec2 stage_velocity(const VelocityField& field, Vec2 from, Vec2 p, double t, int stage) {
    const std::string where = "rk4 stage " + std::to_string(stage);
    if (!field.admissible(from, p)) throw StepFailure(where + ": leaves the domain", stage, StepFailure::Cause::Domain);
    Vec2 v;
    try {
        v = field.velocity(p, t);
    } catch (const NodeSingularity& e) {
        throw StepFailure(where + ": " + e.what(), stage, StepFailure::Cause::Node);
    } catch (const DomainError& e) {
        throw StepFailure(where + ": " + e.what(), stage, StepFailure::Cause::Domain);
    } catch (const SingularPoint& e) {
        throw StepFailure(where + ": " + e.what(), stage, StepFailure::Cause::Domain);
    } catch (const NumericError& e) {
        throw StepFailure(where + ": " + e.what(), stage, StepFailure::Cause::Other);
    }
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
        throw StepFailure(where + ": non-finite velocity", stage, StepFailure::Cause::Other);
    return v;
}

}  // namespace

Vec2 rk4_step(Vec2 x, double t, double h, const VelocityField& field) {
    if (!(h > 0.0)) throw InvalidArgument("rk4_step: h must be > 0");
    const Vec2 k1 = stage_velocity(field, x, x, t, 1);
    const Vec2 k2 = stage_velocity(field, x, x + (0.5 * h) * k1, t + 0.5 * h, 2);
    const Vec2 k3 = stage_velocity(field, x, x + (0.5 * h) * k2, t + 0.5 * h, 3);
    const Vec2 k4 = stage_velocity(field, x, x + h * k3, t + h, 4);
    const Vec2 next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!field.admissible(x, next))
        throw StepFailure("rk4 update: leaves the domain", 5, StepFailure::Cause::Domain);
    return next;
}

namespace {

// Total rk4 attempts allowed while recovering a single step.
constexpr int kRetryBudget = 4096;

Vec2 advance(Vec2 x, double t, double dt, int depth, int max_depth, int& budget, const VelocityField& field) {
    try {
        return rk4_step(x, t, dt, field);
    } catch (const StepFailure&) {
        if (depth >= max_depth || --budget <= 0) throw;
    }
    const double half = 0.5 * dt;
    const Vec2 mid = advance(x, t, half, depth + 1, max_depth, budget, field);
    return advance(mid, t + half, half, depth + 1, max_depth, budget, field);
}

}  // namespace

Trajectory integrate(Vec2 seed, double t_init, double t_end, const VelocityField& field,
                     const IntegrationSettings& settings) {
    if (!(t_init >= 0.0) || !(t_end > t_init)) throw InvalidArgument("integrate: need t_end > t_init >= 0");
    const double h = settings.h;
    if (!(h > 0.0) || h > (t_end - t_init) * (1.0 + 1e-12))
        throw InvalidArgument("integrate: need 0 < h <= t_end - t_init");
    if (settings.max_halvings < 0 || settings.max_halvings > 20)
        throw InvalidArgument("integrate: max_halvings must lie in [0, 20]");

    Trajectory out;
    out.samples.push_back({t_init, seed});
    if (!field.inside(seed) || (settings.bounds && !settings.bounds->contains(seed))) {
        out.status = TrajectoryStatus::LeftDomain;
        out.detail = "seed outside the domain";
        return out;
    }

    const double span = (t_end - t_init) / h;
    const auto steps = static_cast<long>(std::ceil(span - 1e-9 * std::max(1.0, span)));
    out.samples.reserve(static_cast<std::size_t>(steps) + 1);
    Vec2 x = seed;
    double t = t_init;
    for (long k = 1; k <= steps; ++k) {
        const double next_t = k == steps ? t_end : t_init + static_cast<double>(k) * h;
        int budget = kRetryBudget;
        try {
            x = advance(x, t, next_t - t, 0, settings.max_halvings, budget, field);
        } catch (const StepFailure& e) {
            switch (e.cause()) {
                case StepFailure::Cause::Node: out.status = TrajectoryStatus::NodeEncounter; break;
                case StepFailure::Cause::Domain: out.status = TrajectoryStatus::LeftDomain; break;
                case StepFailure::Cause::Other: out.status = TrajectoryStatus::StepFailure; break;
            }
            out.detail = "t = " + std::to_string(t) + ": " + e.what();
            return out;
        }
        t = next_t;
        out.samples.push_back({t, x});
        if (settings.bounds && !settings.bounds->contains(x)) {
            out.status = TrajectoryStatus::LeftDomain;
            out.detail = "left the bounding box at t = " + std::to_string(t);
            return out;
        }
    }
    return out;
}

std::vector<Vec2> circle_seeds(const InitialCircle& c) {
    if (!(c.radius > 0.0)) throw InvalidArgument("circle_seeds: radius must be > 0");
    if (c.count < 1) throw InvalidArgument("circle_seeds: count must be >= 1");
    if (!(c.t_init > 0.0)) throw InvalidArgument("circle_seeds: t_init must be > 0");
    std::vector<Vec2> seeds;
    seeds.reserve(static_cast<std::size_t>(c.count));
    for (int k = 0; k < c.count; ++k) {
        // Exact values on the axes so that N = 4 gives exact compass points.
        const int q = 4 * k;
        double cs;
        double sn;
        if (q % c.count == 0) {
            static constexpr double kCos[] = {1.0, 0.0, -1.0, 0.0};
            static constexpr double kSin[] = {0.0, 1.0, 0.0, -1.0};
            cs = kCos[q / c.count];
            sn = kSin[q / c.count];
        } else {
            const double angle = 2.0 * kPi * k / c.count;
            cs = std::cos(angle);
            sn = std::sin(angle);
        }
        seeds.push_back({c.center.x + c.radius * cs, c.center.y + c.radius * sn});
    }
    return seeds;
}

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
    const auto workers = static_cast<std::size_t>(std::min<std::size_t>(resolve_threads(threads), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || abort.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                abort = true;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<Trajectory> integrate_ensemble(const std::vector<Vec2>& seeds, double t_init, double t_end,
                                           const VelocityField& field, const IntegrationSettings& settings,
                                           unsigned threads) {
    std::vector<Trajectory> out(seeds.size());
    parallel_for(seeds.size(), threads,
                 [&](std::size_t i) { out[i] = integrate(seeds[i], t_init, t_end, field, settings); });
    return out;
}

// ---------------------------------------------------------------------------

SamplerReport rejection_sample(const Density& density, const Rect& box, std::size_t count, std::uint64_t seed,
                               int envelope_grid, unsigned threads) {
    if (!box.valid()) throw ConfigError("rejection_sample: degenerate sampling box");
    if (envelope_grid < 2) throw ConfigError("rejection_sample: envelope grid must be >= 2");

    const auto g = static_cast<std::size_t>(envelope_grid);
    std::vector<double> grid(g * g);
    const double dx = (box.x_hi - box.x_lo) / static_cast<double>(g - 1);
    const double dy = (box.y_hi - box.y_lo) / static_cast<double>(g - 1);
    parallel_for(g, threads, [&](std::size_t i) {
        for (std::size_t j = 0; j < g; ++j)
            grid[i * g + j] = density({box.x_lo + static_cast<double>(i) * dx, box.y_lo + static_cast<double>(j) * dy});
    });
    double peak = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const double v = grid[i * g + j];
            if (!std::isfinite(v) || v < 0.0) throw ConfigError("rejection_sample: density must be finite and >= 0");
            peak = std::max(peak, v);
            const double wx = (i == 0 || i == g - 1) ? 0.5 : 1.0;
            const double wy = (j == 0 || j == g - 1) ? 0.5 : 1.0;
            mass += wx * wy * v;
        }
    }
    mass *= dx * dy;
    if (!(peak > 0.0) || mass < 1e-6)
        throw ConfigError("rejection_sample: density mass in the box is below 1e-6");

    const double envelope = 1.5 * peak;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x_lo, box.x_hi);
    std::uniform_real_distribution<double> uy(box.y_lo, box.y_hi);
    std::uniform_real_distribution<double> uz(0.0, envelope);

    SamplerReport report;
    report.mass = mass;
    report.points.reserve(count);
    std::size_t proposed = 0;
    // Proposals are drawn sequentially and evaluated in parallel batches, so
    // the accepted sequence does not depend on the thread count.
    const std::size_t batch = 4096;
    struct Proposal {
        Vec2 p;
        double level;
        double value;
    };
    std::vector<Proposal> proposals(batch);
    while (report.points.size() < count) {
        if (proposed > 1000 * count + 100000)
            throw ConfigError("rejection_sample: acceptance rate too low to reach the requested count");
        for (auto& pr : proposals) {
            pr.p = {ux(rng), uy(rng)};
            pr.level = uz(rng);
        }
        parallel_for(batch, threads, [&](std::size_t i) { proposals[i].value = density(proposals[i].p); });
        for (const auto& pr : proposals) {
            ++proposed;
            if (pr.level < pr.value) {
                report.points.push_back(pr.p);
                if (report.points.size() == count) break;
            }
        }
    }
    report.efficiency = static_cast<double>(report.points.size()) / static_cast<double>(proposed);
    return report;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InvalidArgument("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

EquivarianceReport equivariance_test(const VelocityField& field, const Density& density_initial,
                                     const Density& density_final, const EquivarianceConfig& cfg) {
    if (cfg.samples < 1000) throw InvalidArgument("equivariance_test: at least 1000 samples required");
    const auto start = rejection_sample(density_initial, cfg.box_initial, cfg.samples, cfg.seed, cfg.envelope_grid,
                                        cfg.threads);
    IntegrationSettings settings;
    settings.h = cfg.h;
    const auto trajectories =
        integrate_ensemble(start.points, cfg.t_initial, cfg.t_final, field, settings, cfg.threads);
    const auto direct = rejection_sample(density_final, cfg.box_final, cfg.samples, cfg.seed ^ 0x9e3779b97f4a7c15ULL,
                                         cfg.envelope_grid, cfg.threads);

    EquivarianceReport report;
    report.efficiency_initial = start.efficiency;
    report.efficiency_final = direct.efficiency;
    std::vector<double> ax;
    std::vector<double> ay;
    for (const auto& tr : trajectories) {
        if (tr.status != TrajectoryStatus::Completed) {
            ++report.failed;
            continue;
        }
        ax.push_back(tr.samples.back().x.x);
        ay.push_back(tr.samples.back().x.y);
    }
    report.advected = ax.size();
    if (ax.empty()) return report;
    std::vector<double> bx;
    std::vector<double> by;
    for (const auto& p : direct.points) {
        bx.push_back(p.x);
        by.push_back(p.y);
    }
    report.ks_x = ks_distance(ax, bx);
    report.ks_y = ks_distance(ay, by);
    return report;
}

}  // namespace bohm::dynamics
