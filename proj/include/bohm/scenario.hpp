#pragma once

// Declarative run descriptions: a flat key = value text format with dotted
// keys, the mapping from a scenario to a velocity field, and the writers for
// trajectory and density files.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bohm/dynamics.hpp"
#include "bohm/halfline.hpp"

namespace bohm::scenario {

enum class FieldKind {
    FreePacket,
    FreePropagator,
    WallPacket,
    WallPropagator,
    HalflinePropagator,
    HalflinePacket,
    PlaneWave,
    PlaneWaveDirichlet,
};

std::string to_string(FieldKind kind);
/// Throws ConfigError for unknown names.
FieldKind parse_field_kind(const std::string& text);

struct PacketParams {
    Vec2 center;
    Vec2 momentum;
    double sigma = 1.0;
    friend bool operator==(const PacketParams&, const PacketParams&) = default;
};

/// Seeds evenly spaced on the segment [start, end] (endpoints included when count >= 2).
struct SeedLine {
    Vec2 start;
    Vec2 end;
    int count = 1;
    double t_init = 0.0;
    friend bool operator==(const SeedLine&, const SeedLine&) = default;
};

struct DensityGridSpec {
    Rect bounds;
    int nx = 2;
    int ny = 2;
    double t = 0.0;
    friend bool operator==(const DensityGridSpec&, const DensityGridSpec&) = default;
};

struct Scenario {
    std::string name;
    FieldKind kind = FieldKind::FreePacket;
    BoundaryCondition bc;
    PhysicalConstants constants;

    std::optional<PacketParams> packet;       ///< free_packet, wall_packet, halfline_packet
    std::optional<Vec2> source;               ///< the propagator kinds
    std::optional<halfline::PlaneWave> wave;  ///< the plane-wave kinds

    std::optional<dynamics::InitialCircle> circle;
    std::optional<SeedLine> line;

    double h = 1e-3;
    double t_end = 1.0;
    int order = 64;  ///< quadrature order per axis, halfline_packet only
    std::optional<Rect> bounds;

    std::string trajectory_path;
    std::optional<DensityGridSpec> density;
    std::string density_path;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Parses scenario text. Throws ConfigError naming the offending key or line.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
/// Text that parse_scenario maps back to an equal Scenario.
std::string serialize_scenario(const Scenario& scenario);

/// Checks every constraint; throws ConfigError with the parameter name.
void validate(const Scenario& scenario);

/// Builds the guiding field. Throws ConfigError for inconsistent parameters.
std::unique_ptr<dynamics::VelocityField> make_field(const Scenario& scenario);

/// Start time and seed positions (circle or line).
struct SeedSet {
    double t_init;
    std::vector<Vec2> points;
};
SeedSet seeds(const Scenario& scenario);

/// Cells where psi is undefined (the barrier tip, outside the domain) hold this value.
inline constexpr double kMissing = -1.0;

struct DensityGrid {
    DensityGridSpec spec;
    std::string description;
    std::vector<double> values;  ///< |psi|, row-major: row j is y_j, column i is x_i
    [[nodiscard]] double at(int i, int j) const {
        return values[static_cast<std::size_t>(j) * static_cast<std::size_t>(spec.nx) + static_cast<std::size_t>(i)];
    }
    [[nodiscard]] Vec2 point(int i, int j) const;
};

/// |psi| on the grid. Tip cells and cells where psi raises a numeric error get kMissing.
DensityGrid sample_density(const dynamics::VelocityField& field, const DensityGridSpec& grid, unsigned threads = 0);

/// Writes the 4-line header (bounds, resolution, time, field) then one row per y.
void write_density(std::ostream& out, const DensityGrid& grid);
/// CSV with header traj_id,t,x,y,status and 17 significant digits.
void write_trajectories(std::ostream& out, const std::vector<dynamics::Trajectory>& trajectories);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    unsigned threads = 0;
    std::optional<double> h;
    std::optional<int> order;
    bool write_trajectories = true;
    bool write_density = true;
};

struct RunReport {
    std::map<dynamics::TrajectoryStatus, std::size_t> status_counts;
    double seconds = 0.0;
    std::filesystem::path trajectory_file;
    std::optional<std::filesystem::path> density_file;
    std::vector<dynamics::Trajectory> trajectories;
};

/// Applies overrides, integrates all seeds and writes the outputs.
/// Throws ConfigError, NumericError, or IoError.
RunReport run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Density grid only (the `density` subcommand).
DensityGrid run_density(const Scenario& scenario, const RunOptions& options = {});

class IoError : public Error {
public:
    using Error::Error;
};

/// Process exit codes by error category.
inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

/// Format used in all output files: shortest round-trip safe, 17 significant digits.
std::string format_number(double value);

}  // namespace bohm::scenario
