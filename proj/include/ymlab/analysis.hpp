#pragma once

#include <complex>
#include <compare>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ymlab/field_state.hpp"
#include "ymlab/integrator.hpp"

namespace ymlab {

// Relative size of S_t(a + b) - S_t(a) - S_t(b), observed on the evolve grid.
struct DefectSeries {
    std::vector<double> times;
    std::vector<double> defect;
    std::vector<double> norm_a;
    std::vector<double> norm_b;
    std::vector<double> norm_sum_evolved;
};

// Evolves a, b and a + b under identical parameters. Both inputs must share
// geometry and group and start at t = 0. Throws std::invalid_argument for
// mismatched or degenerate (both-zero) inputs; integrator errors propagate.
DefectSeries superposition_defect(const FieldState& a, const FieldState& b, const StructureConstants& sc,
                                  const EvolveParams& p);

struct DefectScaling {
    std::vector<std::pair<double, double>> points;  // (g, defect at final time)
    // Least-squares log-log slope over g in [g_min, 10 g_min]; empty when any
    // defect there is at roundoff level or fewer than two points qualify.
    std::optional<double> slope;
};

inline constexpr double kDefectFloor = 1e-10;

DefectScaling defect_scaling(const FieldState& a, const FieldState& b, const StructureConstants& sc,
                             const EvolveParams& p, const std::vector<double>& g_list);

inline constexpr double kSpectrumFloor = 1e-12;

struct Mode {
    std::vector<int> k;  // signed mode numbers in (-n/2, n/2]
    int direction = 0;
    int color = 0;
    std::complex<double> amplitude;
};

struct ModeSpectrum {
    std::vector<Mode> modes;   // |amplitude| > kSpectrumFloor, in (k, direction, color) order
    double total_power = 0.0;  // sum of |amplitude|^2 over all modes, floor or not
};

// Unitary DFT of A per direction and color: amplitude = N^{-1/2} sum_x A(x) e^{-ik.x},
// so that the total power equals sum_x A(x)^2.
ModeSpectrum mode_spectrum(const FieldState& state);
// Same transform applied to E.
ModeSpectrum electric_spectrum(const FieldState& state);

// Modes are tracked per (wave vector, color), summing over polarization
// directions: linear evolution preserves this support exactly, whereas it
// can rotate polarization within a wave vector.
struct ModeKey {
    std::vector<int> k;
    int color = 0;
    friend auto operator<=>(const ModeKey&, const ModeKey&) = default;
    friend bool operator==(const ModeKey&, const ModeKey&) = default;
};

struct ModeCouplingReport {
    std::map<ModeKey, double> mode_energy_initial;  // power in A per key, above floor
    std::map<ModeKey, double> mode_energy_final;
    double offdiagonal_transfer = 0.0;  // final power in keys inactive at t = 0
    double total_power_final = 0.0;
    // Keys inactive at t = 0, sorted by final power, largest first.
    std::vector<std::pair<ModeKey, double>> new_modes;
};

ModeCouplingReport mode_coupling(const FieldState& state, const StructureConstants& sc, const EvolveParams& p);

}  // namespace ymlab
