// bohm: run Bohmian trajectory scenarios and write trajectory / density files.
//
//   bohm list
//   bohm run fig_GWP_N_x4 --out-dir out --threads 4
//   bohm density scenarios/fig_planewave_N.scn
//   bohm selftest

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "bohm/fields.hpp"
#include "bohm/quadrature.hpp"
#include "bohm/scenario.hpp"
#include "bohm/specfun.hpp"
#include "bohm/wall.hpp"

namespace fs = std::filesystem;
using namespace bohm;

namespace {

fs::path scenario_dir(const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (const char* env = std::getenv("BOHM_SCENARIO_DIR")) return env;
    return BOHM_SCENARIO_DIR;
}

// A path to an existing file, or the name of a canned scenario.
fs::path resolve_scenario(const std::string& arg, const fs::path& dir) {
    if (fs::exists(arg)) return arg;
    const fs::path canned = dir / (arg + ".scn");
    if (fs::exists(canned)) return canned;
    throw scenario::IoError("no scenario file or canned scenario named '" + arg + "'");
}

scenario::RunOptions options_from(const std::string& out_dir, unsigned threads, double h, int order) {
    scenario::RunOptions o;
    o.out_dir = out_dir;
    o.threads = threads;
    if (h > 0.0) o.h = h;
    if (order > 0) o.order = order;
    return o;
}

int cmd_list(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw scenario::IoError("scenario directory '" + dir.string() + "' not found");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".scn") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        const auto s = scenario::load_scenario(f);
        std::cout << s.name << "\t" << scenario::to_string(s.kind);
        if (s.kind != scenario::FieldKind::FreePacket && s.kind != scenario::FieldKind::FreePropagator)
            std::cout << " (" << to_string(s.bc.kind) << ")";
        std::cout << "\t" << f.string() << "\n";
    }
    return scenario::kExitOk;
}

int cmd_run(const fs::path& file, const scenario::RunOptions& opts) {
    const auto s = scenario::load_scenario(file);
    const auto report = scenario::run_scenario(s, opts);
    std::cout << "scenario " << s.name << ": " << report.trajectories.size() << " trajectories in " << report.seconds
              << " s\n";
    for (const auto& [status, count] : report.status_counts)
        std::cout << "  " << dynamics::to_string(status) << ": " << count << "\n";
    for (std::size_t i = 0; i < report.trajectories.size(); ++i) {
        const auto& tr = report.trajectories[i];
        if (tr.status != dynamics::TrajectoryStatus::Completed)
            std::cout << "  trajectory " << i << " " << dynamics::to_string(tr.status) << ": " << tr.detail << "\n";
    }
    std::cout << "trajectories: " << report.trajectory_file.string() << "\n";
    if (report.density_file) std::cout << "density: " << report.density_file->string() << "\n";
    return scenario::kExitOk;
}

int cmd_density(const fs::path& file, const scenario::RunOptions& opts) {
    const auto s = scenario::load_scenario(file);
    const auto grid = scenario::run_density(s, opts);
    std::cout << "density " << grid.spec.nx << "x" << grid.spec.ny << " at t = " << grid.spec.t << ": "
              << (opts.out_dir / s.density_path).string() << "\n";
    return scenario::kExitOk;
}

// Quick invariant checks; the full suite lives in the test binaries.
int cmd_selftest(const fs::path& dir) {
    int failures = 0;
    const auto check = [&](const std::string& name, bool ok, double value) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << " (" << value << ")\n";
        if (!ok) ++failures;
    };

    double worst = 0.0;
    for (double u = -50.0; u <= 50.0; u += 0.37)
        worst = std::max(worst, std::abs(specfun::fresnel_F(u) + specfun::fresnel_F(-u) - std::polar(1.0, -u * u)));
    check("F(u) + F(-u) = exp(-iu^2)", worst <= 1e-10, worst);

    const auto rule = quadrature::gauss_legendre(16, 0.0, 1.0);
    const double e_int = rule.integrate([](double x) { return std::exp(x); });
    check("Gauss-Legendre order 16 integrates exp on [0,1]", std::abs(e_int - (std::exp(1.0) - 1.0)) <= 1e-13,
          std::abs(e_int - (std::exp(1.0) - 1.0)));

    const double kd = std::abs(halfline::halfline_propagator(Vec2{-2.0, 0.0}, Vec2{3.0, -1.0}, 0.7,
                                                             BoundaryCondition::Dirichlet()));
    check("Dirichlet half-line propagator vanishes on the barrier", kd <= 1e-12, kd);

    const double vn = halfline::halfline_propagator_velocity(Vec2{-2.0, 1e-13}, Vec2{3.0, -1.0}, 0.7,
                                                             BoundaryCondition::Neumann())
                          .y;
    check("Neumann normal velocity vanishes on the barrier", std::abs(vn) <= 1e-6, vn);

    const double vw = wall::wall_velocity_1d(0.0, 0.5, wall::WallPacket1D(4.0, -2.0, 1.0), BoundaryCondition::Neumann());
    check("wall Neumann velocity vanishes at y = 0", std::abs(vw) <= 1e-12, vw);

    dynamics::FunctionField radial([](Vec2 x, double t) { return (x - Vec2{1.0, 2.0}) / t; });
    const auto tr = dynamics::integrate({2.0, 2.5}, 0.1, 1.0, radial, {1e-2});
    const Vec2 end = tr.samples.back().x;
    const double rk_err = norm(end - (Vec2{1.0, 2.0} + (Vec2{2.0, 2.5} - Vec2{1.0, 2.0}) * 10.0));
    check("RK4 on v = (x - x0)/t", rk_err <= 1e-10, rk_err);

    if (fs::is_directory(dir)) {
        int bad = 0;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() != ".scn") continue;
            const auto s = scenario::load_scenario(entry.path());
            if (!(scenario::parse_scenario(scenario::serialize_scenario(s)) == s)) ++bad;
        }
        check("canned scenarios round-trip", bad == 0, bad);
    }
    return failures == 0 ? scenario::kExitOk : scenario::kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bohmian trajectories for walls, half-line barriers and plane waves"};
    app.require_subcommand(1);
    // "-h" would collide with the step-size flag --h.
    app.set_help_flag("--help", "Print this help message and exit");

    std::string out_dir = ".";
    unsigned threads = 0;
    double h = 0.0;
    int order = 0;
    std::string dir_override;
    app.add_option("--scenario-dir", dir_override, "Directory of canned scenarios");

    const auto add_run_flags = [&](CLI::App* sub) {
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
        sub->add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();
        sub->add_option("--h", h, "Override the RK4 step size")->check(CLI::PositiveNumber);
        sub->add_option("--order", order, "Override the quadrature order (halfline_packet)")->check(CLI::Range(2, 256));
    };

    std::string file;
    auto* run = app.add_subcommand("run", "Integrate a scenario and write its trajectory (and density) files");
    run->add_option("scenario", file, "Scenario file or canned scenario name")->required();
    add_run_flags(run);

    auto* density = app.add_subcommand("density", "Write only the density grid of a scenario");
    density->add_option("scenario", file, "Scenario file or canned scenario name")->required();
    add_run_flags(density);

    auto* list = app.add_subcommand("list", "List canned scenarios");
    auto* selftest = app.add_subcommand("selftest", "Run quick invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? scenario::kExitOk : scenario::kExitConfig;
    }

    const fs::path dir = scenario_dir(dir_override);
    try {
        if (*list) return cmd_list(dir);
        if (*selftest) return cmd_selftest(dir);
        const auto opts = options_from(out_dir, threads, h, order);
        if (*run) return cmd_run(resolve_scenario(file, dir), opts);
        if (*density) {
            auto o = opts;
            o.write_trajectories = false;
            return cmd_density(resolve_scenario(file, dir), o);
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return scenario::kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return scenario::kExitNumeric;
    } catch (const scenario::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return scenario::kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return scenario::kExitOther;
    }
    return scenario::kExitOther;
}
