#include "bohm/scenario.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bohm/fields.hpp"
#include "bohm/quadrature.hpp"

namespace bohm::scenario {
namespace {

struct KindName {
    FieldKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {FieldKind::FreePacket, "free_packet"},
    {FieldKind::FreePropagator, "free_propagator"},
    {FieldKind::WallPacket, "wall_packet"},
    {FieldKind::WallPropagator, "wall_propagator"},
    {FieldKind::HalflinePropagator, "halfline_propagator"},
    {FieldKind::HalflinePacket, "halfline_packet"},
    {FieldKind::PlaneWave, "plane_wave"},
    {FieldKind::PlaneWaveDirichlet, "plane_wave_dirichlet"},
};

bool uses_packet(FieldKind k) {
    return k == FieldKind::FreePacket || k == FieldKind::WallPacket || k == FieldKind::HalflinePacket;
}

bool uses_source(FieldKind k) {
    return k == FieldKind::FreePropagator || k == FieldKind::WallPropagator || k == FieldKind::HalflinePropagator;
}

bool uses_wave(FieldKind k) { return k == FieldKind::PlaneWave || k == FieldKind::PlaneWaveDirichlet; }

bool uses_bc(FieldKind k) { return k != FieldKind::FreePacket && k != FieldKind::FreePropagator; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Key/value store that remembers which keys were consumed.
class Entries {
public:
    explicit Entries(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(number) + ": expected 'key = value'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
            if (!values_.emplace(key, value).second)
                throw ConfigError("line " + std::to_string(number) + ": duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> take(const std::string& key) {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    bool has_prefix(const std::string& prefix) const {
        const auto it = values_.lower_bound(prefix);
        return it != values_.end() && it->first.compare(0, prefix.size(), prefix) == 0;
    }

    void reject_unused(const std::string& kind) const {
        for (const auto& [key, value] : values_)
            if (!used_.count(key))
                throw ConfigError("key '" + key + "' is unknown or not used by field kind '" + kind + "'");
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ConfigError(key + ": expected a finite number, got '" + text + "'");
    return v;
}

int parse_int(const std::string& key, const std::string& text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(key + ": expected an integer, got '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text, std::size_t n) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.size() != n)
        throw ConfigError(key + ": expected " + std::to_string(n) + " comma-separated numbers, got '" + text + "'");
    return out;
}

Vec2 parse_vec2(const std::string& key, const std::string& text) {
    const auto v = parse_list(key, text, 2);
    return {v[0], v[1]};
}

Rect parse_rect(const std::string& key, const std::string& text) {
    const auto v = parse_list(key, text, 4);
    return {v[0], v[1], v[2], v[3]};
}

std::string require(Entries& e, const std::string& key, const std::string& why) {
    auto v = e.take(key);
    if (!v) throw ConfigError("missing key '" + key + "' (" + why + ")");
    return *v;
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string to_string(FieldKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

FieldKind parse_field_kind(const std::string& text) {
    for (const auto& [k, name] : kKindNames)
        if (text == name) return k;
    throw ConfigError("field.kind: unknown field kind '" + text + "'");
}

Scenario parse_scenario(const std::string& text) {
    Entries e(text);
    Scenario s;
    s.name = require(e, "name", "scenario name");
    s.kind = parse_field_kind(require(e, "field.kind", "field selection"));
    const std::string kind = to_string(s.kind);
    const std::string why = "required by " + kind;

    if (uses_bc(s.kind)) {
        const auto bc = e.take("field.bc");
        if (bc) {
            try {
                s.bc = {parse_boundary_kind(*bc)};
            } catch (const ConfigError& err) {
                throw ConfigError(std::string("field.bc: ") + err.what());
            }
        }
        if (s.kind == FieldKind::PlaneWaveDirichlet) {
            if (bc && s.bc.neumann()) throw ConfigError("field.bc: plane_wave_dirichlet requires dirichlet");
            s.bc = BoundaryCondition::Dirichlet();
        }
    }

    {
        const auto hbar = e.take("constants.hbar");
        const auto mass = e.take("constants.mass");
        const PhysicalConstants defaults;
        try {
            s.constants = PhysicalConstants(hbar ? parse_double("constants.hbar", *hbar) : defaults.hbar(),
                                            mass ? parse_double("constants.mass", *mass) : defaults.mass());
        } catch (const InvalidArgument& err) {
            throw ConfigError(std::string("constants: ") + err.what());
        }
    }

    if (uses_packet(s.kind)) {
        PacketParams p;
        p.center = parse_vec2("packet.center", require(e, "packet.center", why));
        if (auto m = e.take("packet.momentum")) p.momentum = parse_vec2("packet.momentum", *m);
        p.sigma = parse_double("packet.sigma", require(e, "packet.sigma", why));
        s.packet = p;
    }
    if (uses_source(s.kind)) s.source = parse_vec2("source", require(e, "source", why));
    if (uses_wave(s.kind)) {
        halfline::PlaneWave w;
        w.k0 = parse_double("wave.k0", require(e, "wave.k0", why));
        w.theta0 = parse_double("wave.theta0", require(e, "wave.theta0", why));
        s.wave = w;
    }

    const bool has_circle = e.has_prefix("circle.");
    const bool has_line = e.has_prefix("line.");
    if (has_circle == has_line) throw ConfigError("seeds: exactly one of circle.* or line.* must be given");
    if (has_circle) {
        dynamics::InitialCircle c;
        if (auto v = e.take("circle.center")) {
            c.center = parse_vec2("circle.center", *v);
        } else if (s.packet) {
            c.center = s.packet->center;
        } else if (s.source) {
            c.center = *s.source;
        } else {
            throw ConfigError("missing key 'circle.center' (no packet or source to default to)");
        }
        c.radius = parse_double("circle.rho", require(e, "circle.rho", "circle radius"));
        c.count = parse_int("circle.count", require(e, "circle.count", "number of seeds"));
        c.t_init = parse_double("circle.t_init", require(e, "circle.t_init", "seeding time"));
        s.circle = c;
    } else {
        SeedLine l;
        l.start = parse_vec2("line.start", require(e, "line.start", "seed line"));
        l.end = parse_vec2("line.end", require(e, "line.end", "seed line"));
        l.count = parse_int("line.count", require(e, "line.count", "number of seeds"));
        if (auto v = e.take("line.t_init")) l.t_init = parse_double("line.t_init", *v);
        s.line = l;
    }

    if (auto v = e.take("integration.h")) s.h = parse_double("integration.h", *v);
    s.t_end = parse_double("integration.t_end", require(e, "integration.t_end", "end time"));
    if (s.kind == FieldKind::HalflinePacket)
        if (auto v = e.take("integration.order")) s.order = parse_int("integration.order", *v);
    if (auto v = e.take("integration.bounds")) s.bounds = parse_rect("integration.bounds", *v);

    s.trajectory_path = e.take("output.trajectories").value_or(s.name + "_trajectories.csv");
    if (e.has_prefix("density.")) {
        DensityGridSpec d;
        d.bounds = parse_rect("density.bounds", require(e, "density.bounds", "density grid"));
        d.nx = parse_int("density.nx", require(e, "density.nx", "density grid"));
        d.ny = parse_int("density.ny", require(e, "density.ny", "density grid"));
        d.t = parse_double("density.t", require(e, "density.t", "density grid"));
        s.density = d;
        s.density_path = e.take("output.density").value_or(s.name + "_density.csv");
    }

    e.reject_unused(kind);
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_scenario(text.str());
    } catch (const ConfigError& err) {
        throw ConfigError(path.string() + ": " + err.what());
    }
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    const auto vec = [](Vec2 v) { return format_number(v.x) + ", " + format_number(v.y); };
    const auto rect = [](const Rect& r) {
        return format_number(r.x_lo) + ", " + format_number(r.x_hi) + ", " + format_number(r.y_lo) + ", "
               + format_number(r.y_hi);
    };
    out << "name = " << s.name << "\n";
    out << "field.kind = " << to_string(s.kind) << "\n";
    if (uses_bc(s.kind)) out << "field.bc = " << to_string(s.bc.kind) << "\n";
    out << "constants.hbar = " << format_number(s.constants.hbar()) << "\n";
    out << "constants.mass = " << format_number(s.constants.mass()) << "\n";
    if (s.packet) {
        out << "packet.center = " << vec(s.packet->center) << "\n";
        out << "packet.momentum = " << vec(s.packet->momentum) << "\n";
        out << "packet.sigma = " << format_number(s.packet->sigma) << "\n";
    }
    if (s.source) out << "source = " << vec(*s.source) << "\n";
    if (s.wave) {
        out << "wave.k0 = " << format_number(s.wave->k0) << "\n";
        out << "wave.theta0 = " << format_number(s.wave->theta0) << "\n";
    }
    if (s.circle) {
        out << "circle.center = " << vec(s.circle->center) << "\n";
        out << "circle.rho = " << format_number(s.circle->radius) << "\n";
        out << "circle.count = " << s.circle->count << "\n";
        out << "circle.t_init = " << format_number(s.circle->t_init) << "\n";
    }
    if (s.line) {
        out << "line.start = " << vec(s.line->start) << "\n";
        out << "line.end = " << vec(s.line->end) << "\n";
        out << "line.count = " << s.line->count << "\n";
        out << "line.t_init = " << format_number(s.line->t_init) << "\n";
    }
    out << "integration.h = " << format_number(s.h) << "\n";
    out << "integration.t_end = " << format_number(s.t_end) << "\n";
    if (s.kind == FieldKind::HalflinePacket) out << "integration.order = " << s.order << "\n";
    if (s.bounds) out << "integration.bounds = " << rect(*s.bounds) << "\n";
    out << "output.trajectories = " << s.trajectory_path << "\n";
    if (s.density) {
        out << "density.bounds = " << rect(s.density->bounds) << "\n";
        out << "density.nx = " << s.density->nx << "\n";
        out << "density.ny = " << s.density->ny << "\n";
        out << "density.t = " << format_number(s.density->t) << "\n";
        out << "output.density = " << s.density_path << "\n";
    }
    return out.str();
}

void validate(const Scenario& s) {
    const std::string kind = to_string(s.kind);
    if (s.name.empty()) throw ConfigError("name: must not be empty");
    if (uses_packet(s.kind) != s.packet.has_value()) throw ConfigError("packet.*: present iff " + kind + " needs it");
    if (uses_source(s.kind) != s.source.has_value()) throw ConfigError("source: present iff " + kind + " needs it");
    if (uses_wave(s.kind) != s.wave.has_value()) throw ConfigError("wave.*: present iff " + kind + " needs it");
    if (s.kind == FieldKind::PlaneWaveDirichlet && s.bc.neumann())
        throw ConfigError("field.bc: plane_wave_dirichlet requires dirichlet");

    if (s.packet) {
        if (!(s.packet->sigma > 0.0)) throw ConfigError("packet.sigma: must be > 0");
        if (s.kind == FieldKind::WallPacket && !(s.packet->center.y > 0.0))
            throw ConfigError("packet.center: wall packets need y > 0");
        if (s.kind == FieldKind::HalflinePacket
            && (halfline::on_barrier(s.packet->center) || norm(s.packet->center) < 1e-10))
            throw ConfigError("packet.center: lies on the barrier");
    }
    if (s.source) {
        if (s.kind == FieldKind::WallPropagator && !(s.source->y > 0.0))
            throw ConfigError("source: wall propagator needs y > 0");
        if (s.kind == FieldKind::HalflinePropagator && (halfline::on_barrier(*s.source) || norm(*s.source) < 1e-10))
            throw ConfigError("source: lies on the barrier");
    }
    if (s.wave) {
        if (!(s.wave->k0 > 0.0)) throw ConfigError("wave.k0: must be > 0");
        if (!(s.wave->theta0 >= -kPi && s.wave->theta0 < kPi)) throw ConfigError("wave.theta0: must lie in [-pi, pi)");
    }

    if (s.circle.has_value() == s.line.has_value()) throw ConfigError("seeds: exactly one of circle.* or line.*");
    double t_init = 0.0;
    if (s.circle) {
        if (!(s.circle->radius > 0.0)) throw ConfigError("circle.rho: must be > 0");
        if (s.circle->count < 1) throw ConfigError("circle.count: must be >= 1");
        if (!(s.circle->t_init > 0.0)) throw ConfigError("circle.t_init: must be > 0");
        t_init = s.circle->t_init;
    } else {
        if (s.line->count < 1) throw ConfigError("line.count: must be >= 1");
        if (!(s.line->t_init >= 0.0)) throw ConfigError("line.t_init: must be >= 0");
        t_init = s.line->t_init;
    }
    if (uses_source(s.kind) && !(t_init > 0.0)) throw ConfigError("seeds: propagator fields need t_init > 0");
    if (s.kind == FieldKind::HalflinePacket && t_init < 1e-3)
        throw ConfigError("seeds: halfline_packet needs t_init >= 1e-3");
    if (!(s.h > 0.0)) throw ConfigError("integration.h: must be > 0");
    if (!(s.t_end > t_init)) throw ConfigError("integration.t_end: must exceed the seeding time");
    if (s.h > (s.t_end - t_init) * (1.0 + 1e-12)) throw ConfigError("integration.h: exceeds the integration span");
    if (s.order < 2 || s.order > 256) throw ConfigError("integration.order: must lie in [2, 256]");
    if (s.bounds && !s.bounds->valid()) throw ConfigError("integration.bounds: degenerate box");

    if (s.kind == FieldKind::HalflinePacket) {
        const freespace::GaussianPacket2D g(s.packet->center, s.packet->momentum, s.packet->sigma);
        const auto box = quadrature::TruncatedSupport::around(g);
        for (const Vec2 seed : seeds(s).points) {
            const double nodes = quadrature::resolving_nodes(seed, t_init, g, box, s.constants);
            if (nodes > quadrature::kMaxOrder)
                throw ConfigError(std::string(s.circle ? "circle.t_init" : "line.t_init") + ": the packet integral needs "
                                  + format_number(std::ceil(nodes))
                                  + " nodes per axis at the seeding time (cap 256); start later");
        }
    }

    if (s.trajectory_path.empty()) throw ConfigError("output.trajectories: must not be empty");
    if (s.density) {
        const auto& d = *s.density;
        if (!d.bounds.valid()) throw ConfigError("density.bounds: degenerate box");
        if (d.nx < 2 || d.ny < 2) throw ConfigError("density.nx/ny: must be >= 2");
        const bool needs_positive = uses_source(s.kind) || s.kind == FieldKind::HalflinePacket;
        if (needs_positive ? !(d.t > 0.0) : !(d.t >= 0.0)) throw ConfigError("density.t: out of range for " + kind);
        if (s.density_path.empty()) throw ConfigError("output.density: must not be empty");
    }
}

std::unique_ptr<dynamics::VelocityField> make_field(const Scenario& s) {
    validate(s);
    const auto& c = s.constants;
    try {
        switch (s.kind) {
            case FieldKind::FreePacket:
                return std::make_unique<fields::FreePacketField>(
                    freespace::GaussianPacket2D(s.packet->center, s.packet->momentum, s.packet->sigma), c);
            case FieldKind::FreePropagator: return std::make_unique<fields::FreePropagatorField>(*s.source, c);
            case FieldKind::WallPacket: {
                const auto& p = *s.packet;
                wall::WallPacket2D wp{freespace::GaussianPacket1D(p.center.x, p.momentum.x, p.sigma),
                                      wall::WallPacket1D(p.center.y, p.momentum.y, p.sigma, c)};
                return std::make_unique<fields::WallPacketField>(wp, s.bc, c);
            }
            case FieldKind::WallPropagator: return std::make_unique<fields::WallPropagatorField>(*s.source, s.bc, c);
            case FieldKind::HalflinePropagator:
                return std::make_unique<fields::HalflinePropagatorField>(*s.source, s.bc, c);
            case FieldKind::HalflinePacket:
                return std::make_unique<fields::HalflinePacketField>(
                    freespace::GaussianPacket2D(s.packet->center, s.packet->momentum, s.packet->sigma), s.bc, s.order,
                    c);
            case FieldKind::PlaneWave:
            case FieldKind::PlaneWaveDirichlet:
                return std::make_unique<fields::PlaneWaveField>(halfline::PlaneWave(s.wave->k0, s.wave->theta0), s.bc,
                                                                c);
        }
    } catch (const InvalidArgument& err) {
        throw ConfigError(to_string(s.kind) + ": " + err.what());
    }
    throw ConfigError("field.kind: unsupported");
}

SeedSet seeds(const Scenario& s) {
    if (s.circle) return {s.circle->t_init, dynamics::circle_seeds(*s.circle)};
    const auto& l = *s.line;
    SeedSet out{l.t_init, {}};
    for (int k = 0; k < l.count; ++k) {
        const double f = l.count == 1 ? 0.5 : static_cast<double>(k) / (l.count - 1);
        out.points.push_back(l.start + f * (l.end - l.start));
    }
    return out;
}

Vec2 DensityGrid::point(int i, int j) const {
    const auto& b = spec.bounds;
    return {b.x_lo + (b.x_hi - b.x_lo) * i / (spec.nx - 1), b.y_lo + (b.y_hi - b.y_lo) * j / (spec.ny - 1)};
}

DensityGrid sample_density(const dynamics::VelocityField& field, const DensityGridSpec& spec, unsigned threads) {
    if (!spec.bounds.valid() || spec.nx < 2 || spec.ny < 2) throw ConfigError("density grid: invalid specification");
    DensityGrid grid;
    grid.spec = spec;
    grid.description = field.describe();
    grid.values.assign(static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny), kMissing);
    dynamics::parallel_for(static_cast<std::size_t>(spec.ny), threads, [&](std::size_t j) {
        for (int i = 0; i < spec.nx; ++i) {
            const Vec2 p = grid.point(i, static_cast<int>(j));
            double value = kMissing;
            if (norm(p) >= 1e-10 || field.geometry() != dynamics::Geometry::HalfLine) {
                try {
                    value = std::abs(field.psi(p, spec.t));
                    if (!std::isfinite(value)) value = kMissing;
                } catch (const NumericError&) {
                    value = kMissing;
                }
            }
            grid.values[j * static_cast<std::size_t>(spec.nx) + static_cast<std::size_t>(i)] = value;
        }
    });
    return grid;
}

void write_density(std::ostream& out, const DensityGrid& g) {
    const auto& b = g.spec.bounds;
    out << "# bounds " << format_number(b.x_lo) << ' ' << format_number(b.x_hi) << ' ' << format_number(b.y_lo) << ' '
        << format_number(b.y_hi) << "\n";
    out << "# resolution " << g.spec.nx << ' ' << g.spec.ny << "\n";
    out << "# time " << format_number(g.spec.t) << "\n";
    out << "# field " << g.description << "; |psi| row-major, row j = y_j, missing = "
        << format_number(kMissing) << "\n";
    for (int j = 0; j < g.spec.ny; ++j) {
        for (int i = 0; i < g.spec.nx; ++i) {
            if (i > 0) out << ',';
            out << format_number(g.at(i, j));
        }
        out << '\n';
    }
}

void write_trajectories(std::ostream& out, const std::vector<dynamics::Trajectory>& trajectories) {
    out << "traj_id,t,x,y,status\n";
    for (std::size_t id = 0; id < trajectories.size(); ++id) {
        const auto& tr = trajectories[id];
        const std::string status = dynamics::to_string(tr.status);
        for (const auto& s : tr.samples)
            out << id << ',' << format_number(s.t) << ',' << format_number(s.x.x) << ',' << format_number(s.x.y) << ','
                << status << '\n';
    }
}

namespace {

Scenario with_overrides(Scenario s, const RunOptions& o) {
    if (o.h) s.h = *o.h;
    if (o.order) {
        if (s.kind != FieldKind::HalflinePacket) throw ConfigError("--order: only meaningful for halfline_packet");
        s.order = *o.order;
    }
    validate(s);
    return s;
}

std::filesystem::path output_path(const RunOptions& o, const std::string& name) {
    const std::filesystem::path p(name);
    return p.is_absolute() ? p : o.out_dir / p;
}

template <class Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    writer(out);
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

DensityGrid run_density(const Scenario& scenario, const RunOptions& options) {
    const Scenario s = with_overrides(scenario, options);
    if (!s.density) throw ConfigError("density.*: scenario '" + s.name + "' has no density grid");
    const auto field = make_field(s);
    auto grid = sample_density(*field, *s.density, options.threads);
    if (options.write_density)
        write_file(output_path(options, s.density_path), [&](std::ostream& out) { write_density(out, grid); });
    return grid;
}

RunReport run_scenario(const Scenario& scenario, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const Scenario s = with_overrides(scenario, options);
    const auto field = make_field(s);
    const auto seed_set = seeds(s);

    dynamics::IntegrationSettings settings;
    settings.h = s.h;
    settings.bounds = s.bounds;
    RunReport report;
    report.trajectories =
        dynamics::integrate_ensemble(seed_set.points, seed_set.t_init, s.t_end, *field, settings, options.threads);
    for (const auto& tr : report.trajectories) ++report.status_counts[tr.status];

    report.trajectory_file = output_path(options, s.trajectory_path);
    if (options.write_trajectories)
        write_file(report.trajectory_file, [&](std::ostream& out) { write_trajectories(out, report.trajectories); });
    if (s.density && options.write_density) {
        const auto grid = sample_density(*field, *s.density, options.threads);
        report.density_file = output_path(options, s.density_path);
        write_file(*report.density_file, [&](std::ostream& out) { write_density(out, grid); });
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace bohm::scenario
