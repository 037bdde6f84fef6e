#include "ymlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fftw3.h>

namespace ymlab {

namespace {

double residual_norm(const FieldState& sum, const FieldState& a, const FieldState& b) {
    double s = 0.0;
    const auto accumulate = [&s](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double d = x[k] - (y[k] + z[k]);
            s += d * d;
        }
    };
    accumulate(sum.A(), a.A(), b.A());
    accumulate(sum.E(), a.E(), b.E());
    return std::sqrt(s);
}

int signed_mode(int m, int n) { return 2 * m <= n ? m : m - n; }

ModeSpectrum spectrum_of(const FieldState& state, std::span<const double> field) {
    const auto& geo = state.geometry();
    const std::size_t n_sites = geo.sites();
    const int dims = state.dims();
    const int nc = state.colors();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n_sites));

    std::vector<int> extent = geo.extent();
    auto* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_sites));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_sites));
    fftw_plan plan = fftw_plan_dft(dims, extent.data(), in, out, FFTW_FORWARD, FFTW_ESTIMATE);

    // amplitudes[(site_k * dims + d) * nc + a]
    std::vector<std::complex<double>> amp(n_sites * static_cast<std::size_t>(dims * nc));
    for (int d = 0; d < dims; ++d) {
        for (int a = 0; a < nc; ++a) {
            for (std::size_t s = 0; s < n_sites; ++s) {
                in[s][0] = field[state.index(s, d, a)];
                in[s][1] = 0.0;
            }
            fftw_execute(plan);
            for (std::size_t s = 0; s < n_sites; ++s) {
                amp[state.index(s, d, a)] = std::complex<double>(out[s][0] * norm, out[s][1] * norm);
            }
        }
    }
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);

    ModeSpectrum spec;
    for (std::size_t s = 0; s < n_sites; ++s) {
        const auto m = geo.coords(s);
        for (int d = 0; d < dims; ++d) {
            for (int a = 0; a < nc; ++a) {
                const auto z = amp[state.index(s, d, a)];
                spec.total_power += std::norm(z);
                if (std::abs(z) > kSpectrumFloor) {
                    Mode mode;
                    mode.k.resize(static_cast<std::size_t>(dims));
                    for (int q = 0; q < dims; ++q) mode.k[q] = signed_mode(m[q], geo.extent(q));
                    mode.direction = d;
                    mode.color = a;
                    mode.amplitude = z;
                    spec.modes.push_back(std::move(mode));
                }
            }
        }
    }
    return spec;
}

std::map<ModeKey, double> by_key(const ModeSpectrum& spec) {
    std::map<ModeKey, double> out;
    for (const auto& m : spec.modes) out[ModeKey{m.k, m.color}] += std::norm(m.amplitude);
    return out;
}

}  // namespace

DefectSeries superposition_defect(const FieldState& a, const FieldState& b, const StructureConstants& sc,
                                  const EvolveParams& p) {
    require_compatible(a, b);
    validate(p);
    if (a.time() != 0.0 || b.time() != 0.0) throw std::invalid_argument("superposition_defect: states must start at t = 0");
    if (a.norm() + b.norm() < 1e-30) throw std::invalid_argument("superposition_defect: both states are zero");

    LeapfrogStepper sa(a, sc, p.g);
    LeapfrogStepper sb(b, sc, p.g);
    LeapfrogStepper ssum(a + b, sc, p.g);

    DefectSeries out;
    auto observe = [&] {
        const double na = sa.state().norm();
        const double nb = sb.state().norm();
        const double denom = na + nb;
        if (denom < 1e-30) throw std::invalid_argument("superposition_defect: degenerate normalization");
        out.times.push_back(sa.state().time());
        out.norm_a.push_back(na);
        out.norm_b.push_back(nb);
        out.norm_sum_evolved.push_back(ssum.state().norm());
        out.defect.push_back(residual_norm(ssum.state(), sa.state(), sb.state()) / denom);
    };

    observe();
    for (std::size_t k = 1; k <= p.steps; ++k) {
        sa.step(p.dt);
        sb.step(p.dt);
        ssum.step(p.dt);
        if (k % p.observe_every == 0) observe();
    }
    return out;
}

DefectScaling defect_scaling(const FieldState& a, const FieldState& b, const StructureConstants& sc,
                             const EvolveParams& p, const std::vector<double>& g_list) {
    if (g_list.empty()) throw std::invalid_argument("g_list: must be non-empty");
    for (std::size_t i = 0; i < g_list.size(); ++i) {
        if (!(g_list[i] > 0.0)) throw std::invalid_argument("g_list: couplings must be > 0");
        if (i > 0 && !(g_list[i] > g_list[i - 1])) throw std::invalid_argument("g_list: must be strictly ascending");
    }

    DefectScaling out;
    for (double g : g_list) {
        EvolveParams q = p;
        q.g = g;
        const DefectSeries series = superposition_defect(a, b, sc, q);
        out.points.emplace_back(g, series.defect.back());
    }

    const double g_top = 10.0 * g_list.front() * (1.0 + 1e-9);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const auto& [g, d] : out.points) {
        if (g > g_top) break;
        if (!(d > kDefectFloor)) return out;
        const double x = std::log(g);
        const double y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

ModeSpectrum mode_spectrum(const FieldState& state) { return spectrum_of(state, state.A()); }

ModeSpectrum electric_spectrum(const FieldState& state) { return spectrum_of(state, state.E()); }

ModeCouplingReport mode_coupling(const FieldState& state, const StructureConstants& sc, const EvolveParams& p) {
    ModeCouplingReport report;
    report.mode_energy_initial = by_key(mode_spectrum(state));

    std::set<ModeKey> active;
    for (const auto& [key, power] : report.mode_energy_initial) active.insert(key);
    for (const auto& m : electric_spectrum(state).modes) active.insert(ModeKey{m.k, m.color});

    EvolveParams q = p;
    q.observe_every = std::max<std::size_t>(p.steps, 1);
    const TrajectorySummary traj = evolve(state, sc, q);

    const ModeSpectrum final_spec = mode_spectrum(traj.final_state);
    report.total_power_final = final_spec.total_power;
    report.mode_energy_final = by_key(final_spec);
    for (const auto& [key, power] : report.mode_energy_final) {
        if (active.contains(key)) continue;
        report.offdiagonal_transfer += power;
        report.new_modes.emplace_back(key, power);
    }
    std::stable_sort(report.new_modes.begin(), report.new_modes.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    return report;
}

}  // namespace ymlab
