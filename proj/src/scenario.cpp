#include "ymlab/scenario.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <utility>

#include "ymlab/errors.hpp"

namespace ymlab {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 9> kCommands = {{
    {Command::Evolve, "evolve"},
    {Command::Defect, "defect"},
    {Command::Scaling, "scaling"},
    {Command::Spectrum, "spectrum"},
    {Command::ModeCoupling, "modecoupling"},
    {Command::Lyapunov, "lyapunov"},
    {Command::Collapse, "collapse"},
    {Command::Table, "table"},
    {Command::Visibility, "visibility"},
}};

constexpr std::array<std::pair<InitKind, std::string_view>, 4> kInitKinds = {{
    {InitKind::Zero, "Zero"},
    {InitKind::PlaneWave, "PlaneWave"},
    {InitKind::RandomGaussian, "RandomGaussian"},
    {InitKind::WavePacket, "WavePacket"},
}};

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Typed, path-aware view of one JSON object.
class Section {
public:
    Section(const json& obj, std::string path, std::initializer_list<std::string_view> allowed)
        : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(path_, "expected an object");
        for (const auto& [key, value] : obj_.items()) {
            bool known = false;
            for (auto a : allowed) known = known || key == a;
            if (!known) throw ConfigError(join(path_, key), "unknown key");
        }
    }

    bool has(std::string_view key) const { return obj_.contains(key); }
    const json& raw(std::string_view key) const { return obj_.at(key); }
    std::string field(std::string_view key) const { return join(path_, key); }

    double number(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_number()) throw ConfigError(field(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
        return x;
    }
    double number(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

    std::int64_t integer(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_number_integer()) throw ConfigError(field(key), "expected an integer");
        return v.get<std::int64_t>();
    }

    std::uint64_t unsigned_integer(std::string_view key) const {
        const json& v = require(key);
        if (v.is_number_unsigned()) return v.get<std::uint64_t>();
        if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
        throw ConfigError(field(key), "expected a non-negative integer");
    }
    std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) const {
        return has(key) ? unsigned_integer(key) : fallback;
    }

    bool boolean(std::string_view key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
        return v.get<bool>();
    }

    std::string text(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_string()) throw ConfigError(field(key), "expected a string");
        return v.get<std::string>();
    }

    std::vector<int> int_list(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_array()) throw ConfigError(field(key), "expected an array of integers");
        std::vector<int> out;
        for (const auto& x : v) {
            if (!x.is_number_integer()) throw ConfigError(field(key), "expected an array of integers");
            out.push_back(x.get<int>());
        }
        return out;
    }

    std::vector<double> number_list(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError(field(key), "expected an array of numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }

private:
    const json& require(std::string_view key) const {
        if (!obj_.contains(key)) throw ConfigError(field(key), "missing required field");
        return obj_.at(key);
    }

    const json& obj_;
    std::string path_;
};

// Re-raise a library validation message "<field>: <detail>" under `block`.
[[noreturn]] void rethrow_under(const std::string& block, const std::invalid_argument& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    if (colon != std::string::npos && msg.find(' ') > colon) {
        throw ConfigError(block + "." + msg.substr(0, colon), msg.substr(colon + 2));
    }
    throw ConfigError(block, msg);
}

LatticeGeometry parse_geometry(const json& doc) {
    Section sec(doc, "geometry", {"spatial_dim", "extent"});
    const auto extent = sec.int_list("extent");
    if (extent.empty() || extent.size() > 3) throw ConfigError("geometry.extent", "expected 1 to 3 extents");
    if (sec.has("spatial_dim") && sec.integer("spatial_dim") != static_cast<std::int64_t>(extent.size())) {
        throw ConfigError("geometry.spatial_dim", "does not match the number of extents");
    }
    for (int n : extent) {
        if (n < LatticeGeometry::kMinExtent) {
            throw ConfigError("geometry.extent", "every extent must be >= " + std::to_string(LatticeGeometry::kMinExtent) +
                                                     " (got " + std::to_string(n) + ")");
        }
    }
    return LatticeGeometry(extent);
}

InitSpec parse_init(const json& doc, const std::string& path, const LatticeGeometry& geo, GaugeGroup group) {
    Section sec(doc, path, {"kind", "amplitude", "mode", "colors", "directions", "width", "seed"});
    InitSpec spec;
    const std::string kind = sec.text("kind");
    bool found = false;
    for (const auto& [k, name] : kInitKinds) {
        if (kind == name) {
            spec.kind = k;
            found = true;
        }
    }
    if (!found) throw ConfigError(sec.field("kind"), "unknown init kind '" + kind + "'");
    if (spec.kind != InitKind::Zero) {
        spec.amplitude = sec.number("amplitude");
        spec.colors = sec.int_list("colors");
        if (sec.has("directions")) spec.directions = sec.int_list("directions");
    }
    if (spec.kind == InitKind::PlaneWave || spec.kind == InitKind::WavePacket) spec.mode = sec.int_list("mode");
    if (spec.kind == InitKind::WavePacket) spec.width = sec.number("width");
    if (spec.kind == InitKind::RandomGaussian) spec.seed = sec.unsigned_integer("seed", 0);
    try {
        validate(spec, geo, group);
    } catch (const std::invalid_argument& e) {
        rethrow_under(path, e);
    }
    return spec;
}

EvolveParams parse_evolve(const json& doc) {
    Section sec(doc, "evolve", {"g", "dt", "steps", "observe_every", "energy_drift_threshold", "allow_large_dt"});
    EvolveParams p;
    p.g = sec.number("g");
    p.dt = sec.number("dt", kDefaultDt);
    p.steps = sec.unsigned_integer("steps");
    p.observe_every = sec.unsigned_integer("observe_every", 10);
    p.energy_drift_threshold = sec.number("energy_drift_threshold", kDefaultEnergyDriftThreshold);
    p.allow_large_dt = sec.boolean("allow_large_dt", false);
    try {
        validate(p);
    } catch (const std::invalid_argument& e) {
        rethrow_under("evolve", e);
    }
    return p;
}

ChaosConfig parse_chaos(const json& doc) {
    Section sec(doc, "chaos", {"delta0", "renorm_interval", "perturb_seed"});
    ChaosConfig c;
    c.delta0 = sec.number("delta0", c.delta0);
    c.renorm_interval = sec.unsigned_integer("renorm_interval", c.renorm_interval);
    c.perturb_seed = sec.unsigned_integer("perturb_seed", c.perturb_seed);
    if (!(c.delta0 >= 1e-10 && c.delta0 <= 1e-4)) throw ConfigError("chaos.delta0", "must lie in [1e-10, 1e-4]");
    if (c.renorm_interval < 1) throw ConfigError("chaos.renorm_interval", "must be >= 1");
    return c;
}

CollapseConfig parse_collapse(const json& doc) {
    Section sec(doc, "collapse",
                {"e_nl_ev", "energy_scale_ev", "presets_path", "horizon_s", "seed", "speed_m_s", "flight_times_s"});
    CollapseConfig c;
    if (sec.has("e_nl_ev")) {
        c.e_nl_ev = sec.number("e_nl_ev");
        if (*c.e_nl_ev < 0.0) throw ConfigError("collapse.e_nl_ev", "must be >= 0");
    }
    if (sec.has("energy_scale_ev")) {
        c.energy_scale_ev = sec.number("energy_scale_ev");
        if (!(*c.energy_scale_ev > 0.0)) throw ConfigError("collapse.energy_scale_ev", "must be > 0");
    }
    if (sec.has("presets_path")) c.presets_path = sec.text("presets_path");
    if (sec.has("horizon_s")) {
        c.horizon_s = sec.number("horizon_s");
        if (!(*c.horizon_s > 0.0)) throw ConfigError("collapse.horizon_s", "must be > 0");
    }
    c.seed = sec.unsigned_integer("seed", c.seed);
    c.speed_m_s = sec.number("speed_m_s", c.speed_m_s);
    if (!(c.speed_m_s > 0.0 && c.speed_m_s <= kPhysical.c_m_s)) {
        throw ConfigError("collapse.speed_m_s", "must lie in (0, c]");
    }
    if (sec.has("flight_times_s")) {
        c.flight_times_s = sec.number_list("flight_times_s");
        for (double t : c.flight_times_s) {
            if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("collapse.flight_times_s", "entries must be >= 0");
        }
    }
    return c;
}

OutputConfig parse_output(const json& doc) {
    Section sec(doc, "output", {"path", "format"});
    OutputConfig o;
    if (sec.has("path")) o.path = sec.text("path");
    if (sec.has("format")) {
        const auto f = parse_format(sec.text("format"));
        if (!f) throw ConfigError("output.format", "expected csv, json or bin");
        o.format = *f;
    }
    return o;
}

bool needs_lattice(Command c) {
    switch (c) {
        case Command::Evolve:
        case Command::Defect:
        case Command::Scaling:
        case Command::Spectrum:
        case Command::ModeCoupling:
        case Command::Lyapunov: return true;
        default: return false;
    }
}

json to_json_init(const InitSpec& s) {
    json j;
    for (const auto& [k, name] : kInitKinds)
        if (k == s.kind) j["kind"] = name;
    if (s.kind == InitKind::Zero) return j;
    j["amplitude"] = s.amplitude;
    j["colors"] = s.colors;
    if (!s.directions.empty()) j["directions"] = s.directions;
    if (s.kind == InitKind::PlaneWave || s.kind == InitKind::WavePacket) j["mode"] = s.mode;
    if (s.kind == InitKind::WavePacket) j["width"] = s.width;
    if (s.kind == InitKind::RandomGaussian) j["seed"] = s.seed;
    return j;
}

}  // namespace

std::string_view command_name(Command c) noexcept {
    for (const auto& [k, name] : kCommands)
        if (k == c) return name;
    return "?";
}

std::optional<Command> parse_command(std::string_view name) noexcept {
    for (const auto& [k, n] : kCommands)
        if (n == name) return k;
    return std::nullopt;
}

std::string_view format_name(OutputFormat f) noexcept {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::Binary: return "bin";
    }
    return "?";
}

std::optional<OutputFormat> parse_format(std::string_view name) noexcept {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "bin") return OutputFormat::Binary;
    return std::nullopt;
}

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed scenario document: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario parse_scenario(const json& doc) {
    Section root(doc, "", {"name", "command", "group", "geometry", "init_a", "init_b", "evolve", "scaling", "chaos",
                           "collapse", "output"});
    Scenario s;
    const std::string cmd = root.text("command");
    const auto command = parse_command(cmd);
    if (!command) throw ConfigError("command", "unknown command '" + cmd + "'");
    s.command = *command;
    s.name = root.has("name") ? root.text("name") : std::string(command_name(s.command));

    if (root.has("group")) {
        try {
            s.group = GaugeGroup::parse(root.text("group"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("group", e.what());
        }
    }
    if (root.has("geometry")) s.geometry = parse_geometry(root.raw("geometry"));

    const bool lattice = needs_lattice(s.command);
    if (lattice) {
        if (!root.has("group")) throw ConfigError("group", "missing required field");
        if (!s.geometry) throw ConfigError("geometry", "missing required block");
        if (!root.has("init_a")) throw ConfigError("init_a", "missing required block");
    }
    if (root.has("init_a") || root.has("init_b")) {
        if (!s.geometry) throw ConfigError("geometry", "required when an init block is present");
    }
    if (root.has("init_a")) s.init_a = parse_init(root.raw("init_a"), "init_a", *s.geometry, s.group);
    if (root.has("init_b")) s.init_b = parse_init(root.raw("init_b"), "init_b", *s.geometry, s.group);
    if ((s.command == Command::Defect || s.command == Command::Scaling) && !s.init_b) {
        throw ConfigError("init_b", "missing required block for command " + cmd);
    }

    if (root.has("evolve")) s.evolve = parse_evolve(root.raw("evolve"));
    if (lattice && s.command != Command::Spectrum && !s.evolve) {
        throw ConfigError("evolve", "missing required block for command " + cmd);
    }

    if (root.has("scaling")) {
        Section sec(root.raw("scaling"), "scaling", {"g_list"});
        s.g_list = sec.number_list("g_list");
        for (std::size_t i = 0; i < s.g_list.size(); ++i) {
            if (!(s.g_list[i] > 0.0)) throw ConfigError("scaling.g_list", "couplings must be > 0");
            if (i > 0 && !(s.g_list[i] > s.g_list[i - 1])) {
                throw ConfigError("scaling.g_list", "must be strictly ascending");
            }
        }
    }
    if (s.command == Command::Scaling && s.g_list.empty()) throw ConfigError("scaling.g_list", "missing required field");

    if (root.has("chaos")) s.chaos = parse_chaos(root.raw("chaos"));
    if (s.command == Command::Lyapunov) {
        if (!s.chaos) throw ConfigError("chaos", "missing required block for command lyapunov");
        if (s.evolve->steps < s.chaos->renorm_interval) {
            throw ConfigError("evolve.steps", "shorter than one chaos.renorm_interval");
        }
    }

    if (root.has("collapse")) s.collapse = parse_collapse(root.raw("collapse"));
    switch (s.command) {
        case Command::Collapse:
            if (!s.collapse) throw ConfigError("collapse", "missing required block for command collapse");
            if (s.collapse->e_nl_ev.has_value() == s.collapse->energy_scale_ev.has_value()) {
                throw ConfigError("collapse.e_nl_ev", "give exactly one of e_nl_ev or energy_scale_ev");
            }
            if (s.collapse->energy_scale_ev) {
                if (!root.has("group")) throw ConfigError("group", "required for lattice collapse estimates");
                if (!s.init_a) throw ConfigError("init_a", "required for lattice collapse estimates");
                if (!s.evolve) throw ConfigError("evolve", "required for lattice collapse estimates");
            }
            break;
        case Command::Table:
            if (!s.collapse || s.collapse->presets_path.empty()) {
                throw ConfigError("collapse.presets_path", "missing required field for command table");
            }
            break;
        case Command::Visibility:
            if (!s.collapse || !s.collapse->e_nl_ev) {
                throw ConfigError("collapse.e_nl_ev", "missing required field for command visibility");
            }
            if (s.collapse->flight_times_s.empty()) {
                throw ConfigError("collapse.flight_times_s", "missing required field for command visibility");
            }
            break;
        default: break;
    }

    if (root.has("output")) s.output = parse_output(root.raw("output"));
    return s;
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["command"] = command_name(s.command);
    j["group"] = s.group.name();
    if (s.geometry) {
        j["geometry"] = {{"spatial_dim", s.geometry->spatial_dim()}, {"extent", s.geometry->extent()}};
    }
    if (s.init_a) j["init_a"] = to_json_init(*s.init_a);
    if (s.init_b) j["init_b"] = to_json_init(*s.init_b);
    if (s.evolve) {
        const auto& p = *s.evolve;
        j["evolve"] = {{"g", p.g},
                       {"dt", p.dt},
                       {"steps", p.steps},
                       {"observe_every", p.observe_every},
                       {"energy_drift_threshold", p.energy_drift_threshold},
                       {"allow_large_dt", p.allow_large_dt}};
    }
    if (!s.g_list.empty()) j["scaling"] = {{"g_list", s.g_list}};
    if (s.chaos) {
        j["chaos"] = {{"delta0", s.chaos->delta0},
                      {"renorm_interval", s.chaos->renorm_interval},
                      {"perturb_seed", s.chaos->perturb_seed}};
    }
    if (s.collapse) {
        const auto& c = *s.collapse;
        nlohmann::ordered_json cj = nlohmann::ordered_json::object();
        if (c.e_nl_ev) cj["e_nl_ev"] = *c.e_nl_ev;
        if (c.energy_scale_ev) cj["energy_scale_ev"] = *c.energy_scale_ev;
        if (!c.presets_path.empty()) cj["presets_path"] = c.presets_path;
        if (c.horizon_s) cj["horizon_s"] = *c.horizon_s;
        cj["seed"] = c.seed;
        cj["speed_m_s"] = c.speed_m_s;
        if (!c.flight_times_s.empty()) cj["flight_times_s"] = c.flight_times_s;
        j["collapse"] = cj;
    }
    nlohmann::ordered_json out = {{"format", format_name(s.output.format)}};
    if (!s.output.path.empty()) out["path"] = s.output.path;
    j["output"] = out;
    return j;
}

void apply_override(nlohmann::json& doc, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("--override", "expected key=value, got '" + std::string(assignment) + "'");
    }
    const std::string path(assignment.substr(0, eq));
    const std::string value_text(assignment.substr(eq + 1));
    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text;
    }

    json* node = &doc;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (key.empty()) throw ConfigError(path, "malformed override path");
        if (!node->is_object()) throw ConfigError(path, "override path passes through a non-object");
        if (dot == std::string::npos) {
            (*node)[key] = value;
            return;
        }
        if (!node->contains(key)) (*node)[key] = json::object();
        node = &(*node)[key];
        start = dot + 1;
    }
}

}  // namespace ymlab
