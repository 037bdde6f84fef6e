#include "ymlab/field_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ymlab/rng.hpp"

namespace ymlab {

FieldState::FieldState(LatticeGeometry geometry, GaugeGroup group)
    : geometry_(std::move(geometry)),
      group_(group),
      a_(geometry_.sites() * static_cast<std::size_t>(geometry_.spatial_dim()) *
             static_cast<std::size_t>(group.dim()),
         0.0),
      e_(a_.size(), 0.0) {}

bool FieldState::finite() const noexcept {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    for (double v : e_)
        if (!std::isfinite(v)) return false;
    return true;
}

double FieldState::norm() const noexcept {
    double s = 0.0;
    for (double v : a_) s += v * v;
    for (double v : e_) s += v * v;
    return std::sqrt(s);
}

void require_compatible(const FieldState& x, const FieldState& y) {
    if (!(x.geometry() == y.geometry())) throw std::invalid_argument("field states differ in geometry");
    if (x.group() != y.group()) throw std::invalid_argument("field states differ in gauge group");
}

FieldState& FieldState::operator+=(const FieldState& rhs) {
    require_compatible(*this, rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += rhs.e_[i];
    return *this;
}

FieldState& FieldState::operator-=(const FieldState& rhs) {
    require_compatible(*this, rhs);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= rhs.e_[i];
    return *this;
}

FieldState& FieldState::operator*=(double s) noexcept {
    for (double& v : a_) v *= s;
    for (double& v : e_) v *= s;
    return *this;
}

namespace {

std::vector<int> active_directions(const InitSpec& spec, int dims) {
    if (!spec.directions.empty()) return spec.directions;
    std::vector<int> all(static_cast<std::size_t>(dims));
    for (int d = 0; d < dims; ++d) all[d] = d;
    return all;
}

void check_indices(const std::vector<int>& idx, int bound, const char* field) {
    std::vector<int> sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument(std::string(field) + ": duplicate index");
    }
    for (int v : idx) {
        if (v < 0 || v >= bound) {
            throw std::invalid_argument(std::string(field) + ": index " + std::to_string(v) +
                                        " outside [0, " + std::to_string(bound) + ")");
        }
    }
}

double phase(const LatticeGeometry& geo, const std::vector<int>& mode, std::size_t site) {
    const auto x = geo.coords(site);
    double ph = 0.0;
    for (int d = 0; d < geo.spatial_dim(); ++d) {
        ph += 2.0 * std::numbers::pi * mode[d] * x[d] / geo.extent(d);
    }
    return ph;
}

double envelope(const LatticeGeometry& geo, double width, std::size_t site) {
    const auto x = geo.coords(site);
    double r2 = 0.0;
    for (int d = 0; d < geo.spatial_dim(); ++d) {
        const int n = geo.extent(d);
        double dx = std::fabs(x[d] - 0.5 * n);
        dx = std::min(dx, n - dx);
        r2 += dx * dx;
    }
    return std::exp(-r2 / (2.0 * width * width));
}

}  // namespace

void validate(const InitSpec& spec, const LatticeGeometry& geometry, GaugeGroup group) {
    if (spec.kind == InitKind::Zero) return;
    if (!std::isfinite(spec.amplitude)) throw std::invalid_argument("amplitude: must be finite");
    if (spec.colors.empty()) throw std::invalid_argument("colors: mask must be non-empty");
    check_indices(spec.colors, group.dim(), "colors");
    check_indices(spec.directions, geometry.spatial_dim(), "directions");
    if (spec.kind == InitKind::PlaneWave || spec.kind == InitKind::WavePacket) {
        if (spec.mode.size() != static_cast<std::size_t>(geometry.spatial_dim())) {
            throw std::invalid_argument("mode: expected one mode number per dimension");
        }
        for (int d = 0; d < geometry.spatial_dim(); ++d) {
            const int n = geometry.extent(d);
            // Brillouin range (-n/2, n/2]
            if (2 * spec.mode[d] <= -n || 2 * spec.mode[d] > n) {
                throw std::invalid_argument("mode: mode number " + std::to_string(spec.mode[d]) +
                                            " outside the Brillouin range of extent " + std::to_string(n));
            }
        }
    }
    if (spec.kind == InitKind::WavePacket && !(spec.width > 0.0 && std::isfinite(spec.width))) {
        throw std::invalid_argument("width: must be positive");
    }
}

FieldState make_state(const LatticeGeometry& geometry, GaugeGroup group, const InitSpec& spec) {
    validate(spec, geometry, group);
    FieldState state(geometry, group);
    if (spec.kind == InitKind::Zero) return state;

    const auto dirs = active_directions(spec, geometry.spatial_dim());
    switch (spec.kind) {
        case InitKind::Zero: break;
        case InitKind::PlaneWave:
        case InitKind::WavePacket:
            for (std::size_t s = 0; s < geometry.sites(); ++s) {
                double v = spec.amplitude * std::cos(phase(geometry, spec.mode, s));
                if (spec.kind == InitKind::WavePacket) v *= envelope(geometry, spec.width, s);
                for (int d : dirs)
                    for (int a : spec.colors) state.A(s, d, a) = v;
            }
            break;
        case InitKind::RandomGaussian: {
            CounterRng rng(spec.seed);
            for (std::size_t s = 0; s < geometry.sites(); ++s)
                for (int d : dirs)
                    for (int a : spec.colors) state.A(s, d, a) = spec.amplitude * rng.next_normal();
            for (std::size_t s = 0; s < geometry.sites(); ++s)
                for (int d : dirs)
                    for (int a : spec.colors) state.E(s, d, a) = spec.amplitude * rng.next_normal();
            break;
        }
    }
    return state;
}

FieldStrength::FieldStrength(const LatticeGeometry& geometry, GaugeGroup group)
    : dims_(geometry.spatial_dim()),
      pairs_(geometry.pair_count()),
      colors_(group.dim()),
      f_(geometry.sites() * static_cast<std::size_t>(pairs_) * static_cast<std::size_t>(colors_), 0.0) {}

int FieldStrength::pair_index(int i, int j, int dims) noexcept {
    // (0,1), (0,2), ..., (1,2), ...
    return i * dims - i * (i + 1) / 2 + (j - i - 1);
}

double FieldStrength::at(std::size_t site, int i, int j, int color) const noexcept {
    if (i == j) return 0.0;
    if (i < j) return f_[index(site, pair_index(i, j, dims_), color)];
    return -f_[index(site, pair_index(j, i, dims_), color)];
}

void field_strength_into(const FieldState& state, const StructureConstants& sc, double g,
                         FieldStrength& out) {
    if (sc.group() != state.group()) throw std::invalid_argument("structure constants do not match state group");
    const auto& geo = state.geometry();
    const int dims = state.dims();
    const int nc = state.colors();
    const auto A = state.A();
    auto F = out.data();
    const bool bracket = g != 0.0 && !sc.empty();

    for (std::size_t s = 0; s < geo.sites(); ++s) {
        int p = 0;
        for (int i = 0; i < dims; ++i) {
            const std::size_t si_f = geo.forward(s, i);
            const std::size_t si_b = geo.backward(s, i);
            for (int j = i + 1; j < dims; ++j, ++p) {
                const std::size_t sj_f = geo.forward(s, j);
                const std::size_t sj_b = geo.backward(s, j);
                double* f = &F[out.index(s, p, 0)];
                for (int a = 0; a < nc; ++a) {
                    const double di_aj = 0.5 * (A[state.index(si_f, j, a)] - A[state.index(si_b, j, a)]);
                    const double dj_ai = 0.5 * (A[state.index(sj_f, i, a)] - A[state.index(sj_b, i, a)]);
                    f[a] = di_aj - dj_ai;
                }
                if (bracket) {
                    sc.accumulate_bracket(A.subspan(state.index(s, i, 0), static_cast<std::size_t>(nc)),
                                          A.subspan(state.index(s, j, 0), static_cast<std::size_t>(nc)),
                                          std::span<double>(f, static_cast<std::size_t>(nc)), -g);
                }
            }
        }
    }
}

FieldStrength field_strength(const FieldState& state, const StructureConstants& sc, double g) {
    FieldStrength out(state.geometry(), state.group());
    field_strength_into(state, sc, g, out);
    return out;
}

double magnetic_energy(const FieldState& state, const StructureConstants& sc, double g) {
    const FieldStrength F = field_strength(state, sc, g);
    double s = 0.0;
    for (double v : F.data()) s += v * v;
    return 0.5 * s;
}

double electric_energy(const FieldState& state) noexcept {
    double s = 0.0;
    for (double v : state.E()) s += v * v;
    return 0.5 * s;
}

double gauss_residual(const FieldState& state, const StructureConstants& sc, double g) {
    if (sc.group() != state.group()) throw std::invalid_argument("structure constants do not match state group");
    const auto& geo = state.geometry();
    const int dims = state.dims();
    const int nc = state.colors();
    const auto A = state.A();
    const auto E = state.E();
    const bool bracket = g != 0.0 && !sc.empty();
    std::vector<double> G(static_cast<std::size_t>(nc));
    double total = 0.0;
    for (std::size_t s = 0; s < geo.sites(); ++s) {
        std::fill(G.begin(), G.end(), 0.0);
        for (int i = 0; i < dims; ++i) {
            const std::size_t f = geo.forward(s, i);
            const std::size_t b = geo.backward(s, i);
            for (int a = 0; a < nc; ++a) G[a] += 0.5 * (E[state.index(f, i, a)] - E[state.index(b, i, a)]);
            if (bracket) {
                sc.accumulate_bracket(A.subspan(state.index(s, i, 0), static_cast<std::size_t>(nc)),
                                      E.subspan(state.index(s, i, 0), static_cast<std::size_t>(nc)), G, -g);
            }
        }
        for (double v : G) total += v * v;
    }
    return std::sqrt(total);
}

EnergyReport energy_report(const FieldState& state, const StructureConstants& sc, double g) {
    EnergyReport r;
    r.electric = electric_energy(state);
    const double magnetic_full = magnetic_energy(state, sc, g);
    r.magnetic_linear = magnetic_energy(state, sc, 0.0);
    r.nonlinear = magnetic_full - r.magnetic_linear;
    r.total = r.electric + magnetic_full;
    r.gauss_residual_l2 = gauss_residual(state, sc, g);
    return r;
}

}  // namespace ymlab
