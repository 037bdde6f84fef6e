#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "ymlab/field_state.hpp"

namespace ymlab {

struct PhysicalConstants {
    double hbar_ev_s = 6.582119569e-16;  // eV s
    double c_m_s = 2.99792458e8;         // m/s
};

inline constexpr PhysicalConstants kPhysical{};
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class PresetSource { Paper, User };

struct SystemPreset {
    std::string name;
    double e_nl_ev = 0.0;  // 0 means no nonlinear interaction: tau infinite
    double speed_m_s = kPhysical.c_m_s;
    PresetSource source = PresetSource::User;

    friend bool operator==(const SystemPreset&, const SystemPreset&) = default;
};

struct CollapseEstimate {
    double tau_s = kInfinity;
    double hit_rate_hz = 0.0;
    double coherence_length_m = kInfinity;
};

// tau = hbar / E; E = 0 gives an infinite tau. Coherence length uses `speed_m_s`.
// Throws std::invalid_argument for negative or non-finite energy.
CollapseEstimate collapse_time(double e_nl_ev, const PhysicalConstants& k = kPhysical,
                               double speed_m_s = kPhysical.c_m_s);

struct CoherenceRow {
    SystemPreset preset;
    CollapseEstimate estimate;
};

struct CoherenceTable {
    std::vector<CoherenceRow> rows;       // descending tau
    std::vector<bool> strictly_ordered;  // rows[i].tau > rows[i+1].tau
};

// Throws std::invalid_argument for an empty list or an invalid preset.
CoherenceTable coherence_table(const std::vector<SystemPreset>& presets, const PhysicalConstants& k = kPhysical);

// Homogeneous Poisson process of rate 1/tau on [0, horizon]. Reproducible in
// seed; infinite tau yields no hits.
std::vector<double> hit_process(double tau_s, double horizon_s, std::uint64_t seed);

// Surviving two-path visibility when each hit destroys coherence:
// V = exp(-flight_time / tau).
double visibility(double flight_time_s, double tau_s);

// Applies tau = hbar / E_NL to a lattice energy report, converting with
// `energy_scale_ev` eV per lattice energy unit. Nonlinear energies in
// [-1e-10, 0] count as zero; below that InconsistentEnergy is thrown.
CollapseEstimate lattice_collapse_time(const EnergyReport& report, double energy_scale_ev,
                                       const PhysicalConstants& k = kPhysical,
                                       double speed_m_s = kPhysical.c_m_s);

// Preset catalog: a JSON array of {name, e_nl_ev, speed_m_s, source} records,
// source being "paper" or "user". Throws IoError on malformed input.
std::vector<SystemPreset> read_presets(std::istream& in);
std::vector<SystemPreset> load_presets(const std::string& path);
std::string presets_to_text(const std::vector<SystemPreset>& presets);

}  // namespace ymlab
