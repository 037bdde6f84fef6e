#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ymlab/collapse.hpp"
#include "ymlab/field_state.hpp"
#include "ymlab/integrator.hpp"

namespace ymlab {

enum class Command { Evolve, Defect, Scaling, Spectrum, ModeCoupling, Lyapunov, Collapse, Table, Visibility };
enum class OutputFormat { Csv, Json, Binary };

std::string_view command_name(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
std::string_view format_name(OutputFormat f) noexcept;
std::optional<OutputFormat> parse_format(std::string_view name) noexcept;

struct ChaosConfig {
    double delta0 = 1e-8;
    std::size_t renorm_interval = 10;
    std::uint64_t perturb_seed = 1;
    friend bool operator==(const ChaosConfig&, const ChaosConfig&) = default;
};

struct CollapseConfig {
    std::optional<double> e_nl_ev;          // direct energy for collapse / visibility
    std::optional<double> energy_scale_ev;  // eV per lattice energy unit (lattice collapse)
    std::string presets_path;               // table
    std::optional<double> horizon_s;        // hit process horizon
    std::uint64_t seed = 1;
    double speed_m_s = kPhysical.c_m_s;
    std::vector<double> flight_times_s;     // visibility
    friend bool operator==(const CollapseConfig&, const CollapseConfig&) = default;
};

struct OutputConfig {
    std::string path;  // empty: summary only
    OutputFormat format = OutputFormat::Csv;
    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct Scenario {
    std::string name;
    Command command = Command::Evolve;
    GaugeGroup group;
    std::optional<LatticeGeometry> geometry;
    std::optional<InitSpec> init_a;
    std::optional<InitSpec> init_b;
    std::optional<EvolveParams> evolve;
    std::vector<double> g_list;  // scaling
    std::optional<ChaosConfig> chaos;
    std::optional<CollapseConfig> collapse;
    OutputConfig output;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Strict parse of a JSON scenario document: unknown keys, missing blocks,
// type errors and invariant violations raise ConfigError naming the dotted
// field path (e.g. "geometry.extent").
Scenario parse_scenario(std::string_view text);
Scenario parse_scenario(const nlohmann::json& doc);

// Canonical document; parse_scenario(scenario_to_json(s)) == s.
nlohmann::ordered_json scenario_to_json(const Scenario& s);

// Sets the value at a dotted path ("evolve.g"), creating intermediate objects.
// The value is read as JSON when it parses as such, else as a string.
void apply_override(nlohmann::json& doc, std::string_view assignment);

}  // namespace ymlab
