#pragma once

// Shared regression fixtures. Frozen numbers were produced by the oracles in
// tests/oracles and are asserted here, not recomputed.

#include <cmath>
#include <vector>

#include "ymlab/field_state.hpp"
#include "ymlab/integrator.hpp"
#include "ymlab/lattice.hpp"
#include "ymlab/lie_algebra.hpp"

namespace fixtures {

using namespace ymlab;

inline LatticeGeometry square16() { return LatticeGeometry({16, 16}); }

inline InitSpec plane_wave(double amp, std::vector<int> mode, int color, int direction) {
    InitSpec s;
    s.kind = InitKind::PlaneWave;
    s.amplitude = amp;
    s.mode = std::move(mode);
    s.colors = {color};
    s.directions = {direction};
    return s;
}

inline InitSpec gaussian(double amp, std::uint64_t seed, std::vector<int> colors) {
    InitSpec s;
    s.kind = InitKind::RandomGaussian;
    s.amplitude = amp;
    s.colors = std::move(colors);
    s.seed = seed;
    return s;
}

inline std::vector<int> all_colors(GaugeGroup g) {
    std::vector<int> c(static_cast<std::size_t>(g.dim()));
    for (int a = 0; a < g.dim(); ++a) c[a] = a;
    return c;
}

// Two-mode state: e1-polarized wave along x (A_y, k = (1,0)) and
// e2-polarized wave along y (A_x, k = (0,1)).
inline FieldState two_mode_a(GaugeGroup g = kSU2, double amp = 0.1) {
    return make_state(square16(), g, plane_wave(amp, {1, 0}, 0, 1));
}
inline FieldState two_mode_b(GaugeGroup g = kSU2, double amp = 0.1) {
    return make_state(square16(), g, plane_wave(amp, {0, 1}, g.dim() > 1 ? 1 : 0, 0));
}

inline EvolveParams defect_params(double g, double T = 10.0) {
    EvolveParams p;
    p.g = g;
    p.dt = 0.01;
    p.steps = static_cast<std::size_t>(std::lround(T / p.dt));
    p.observe_every = 100;
    return p;
}

// Fine-step (dt = 0.001) RK4 oracle value of defect(T = 10) for the SU2
// two-mode fixture at g = 1.
inline constexpr double kTwoModeDefectOracle = 9.394559788e-02;

inline std::vector<double> scaling_g() { return {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}; }

// Integrator-health fixtures.
inline FieldState u1_random() { return make_state(square16(), kU1, gaussian(0.3, 42, {0})); }
inline FieldState su2_random() { return make_state(square16(), kSU2, gaussian(0.3, 42, all_colors(kSU2))); }

// Lyapunov fixtures.
inline constexpr double kChaosDelta0 = 1e-8;
inline constexpr std::size_t kChaosRenorm = 10;
inline constexpr std::uint64_t kChaosPerturbSeed = 11;
inline FieldState chaos_state(GaugeGroup g, double amp) {
    return make_state(square16(), g, gaussian(amp, 7, all_colors(g)));
}
inline EvolveParams chaos_params(double g, double T) {
    EvolveParams p;
    p.g = g;
    p.dt = 0.01;
    p.steps = static_cast<std::size_t>(std::lround(T / p.dt));
    p.observe_every = p.steps;
    p.energy_drift_threshold = 0.0;
    return p;
}

}  // namespace fixtures
