#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ymlab/lattice.hpp"
#include "ymlab/lie_algebra.hpp"

namespace ymlab {

// Gauge potentials A_i^a(x) and electric fields E_i^a(x) = dA_i^a/dt in
// temporal gauge. Storage is site-major, then direction, then color.
class FieldState {
public:
    FieldState(LatticeGeometry geometry, GaugeGroup group);  // all zero, time 0

    const LatticeGeometry& geometry() const noexcept { return geometry_; }
    GaugeGroup group() const noexcept { return group_; }
    int colors() const noexcept { return group_.dim(); }
    int dims() const noexcept { return geometry_.spatial_dim(); }

    std::size_t index(std::size_t site, int dir, int color) const noexcept {
        return (site * static_cast<std::size_t>(dims()) + static_cast<std::size_t>(dir)) *
                   static_cast<std::size_t>(colors()) +
               static_cast<std::size_t>(color);
    }
    std::size_t size() const noexcept { return a_.size(); }

    std::span<double> A() noexcept { return a_; }
    std::span<const double> A() const noexcept { return a_; }
    std::span<double> E() noexcept { return e_; }
    std::span<const double> E() const noexcept { return e_; }

    double& A(std::size_t site, int dir, int color) noexcept { return a_[index(site, dir, color)]; }
    double A(std::size_t site, int dir, int color) const noexcept { return a_[index(site, dir, color)]; }
    double& E(std::size_t site, int dir, int color) noexcept { return e_[index(site, dir, color)]; }
    double E(std::size_t site, int dir, int color) const noexcept { return e_[index(site, dir, color)]; }

    double time() const noexcept { return time_; }
    void set_time(double t) noexcept { time_ = t; }

    bool finite() const noexcept;
    // L2 norm over every A and E component.
    double norm() const noexcept;

    // Componentwise sum of A and E; time is taken from the left operand.
    // Throws std::invalid_argument on geometry or group mismatch.
    FieldState& operator+=(const FieldState& rhs);
    FieldState& operator-=(const FieldState& rhs);
    FieldState& operator*=(double s) noexcept;

    friend FieldState operator+(FieldState x, const FieldState& y) { return x += y; }
    friend FieldState operator-(FieldState x, const FieldState& y) { return x -= y; }
    friend FieldState operator*(double s, FieldState x) { return x *= s; }

    friend bool operator==(const FieldState&, const FieldState&) = default;

private:
    LatticeGeometry geometry_;
    GaugeGroup group_;
    std::vector<double> a_;
    std::vector<double> e_;
    double time_ = 0.0;
};

// Throws std::invalid_argument unless x and y share geometry and group.
void require_compatible(const FieldState& x, const FieldState& y);

enum class InitKind { Zero, PlaneWave, RandomGaussian, WavePacket };

struct InitSpec {
    InitKind kind = InitKind::Zero;
    double amplitude = 0.0;
    std::vector<int> mode;        // integer mode numbers, one per dimension
    std::vector<int> colors;      // active color indices (0-based)
    std::vector<int> directions;  // active polarization directions; empty = all
    double width = 0.0;           // WavePacket envelope width, lattice units
    std::uint64_t seed = 0;       // RandomGaussian only

    friend bool operator==(const InitSpec&, const InitSpec&) = default;
};

// Throws std::invalid_argument naming the offending InitSpec field.
void validate(const InitSpec& spec, const LatticeGeometry& geometry, GaugeGroup group);

// Zero: everything zero. PlaneWave: A = amplitude cos(k.x) on the masked
// colors/directions, E = 0. RandomGaussian: i.i.d. normal A and E entries on
// the mask, scaled by amplitude, reproducible in seed. WavePacket: plane wave
// under a Gaussian envelope centred on the lattice midpoint.
FieldState make_state(const LatticeGeometry& geometry, GaugeGroup group, const InitSpec& spec);

// Spatial field strength F_ij^a for i < j.
class FieldStrength {
public:
    FieldStrength(const LatticeGeometry& geometry, GaugeGroup group);

    int pairs() const noexcept { return pairs_; }
    int colors() const noexcept { return colors_; }
    static int pair_index(int i, int j, int dims) noexcept;

    std::size_t index(std::size_t site, int pair, int color) const noexcept {
        return (site * static_cast<std::size_t>(pairs_) + static_cast<std::size_t>(pair)) *
                   static_cast<std::size_t>(colors_) +
               static_cast<std::size_t>(color);
    }

    std::span<double> data() noexcept { return f_; }
    std::span<const double> data() const noexcept { return f_; }

    // F_ij^a for any i, j: the stored value for i < j, its negative for i > j,
    // and zero on the diagonal.
    double at(std::size_t site, int i, int j, int color) const noexcept;

private:
    int dims_;
    int pairs_;
    int colors_;
    std::vector<double> f_;
};

// F_ij^a = D_i A_j^a - D_j A_i^a - g f_abc A_i^b A_j^c with the periodic
// central difference D f(x) = (f(x+1) - f(x-1)) / 2.
FieldStrength field_strength(const FieldState& state, const StructureConstants& sc, double g);
void field_strength_into(const FieldState& state, const StructureConstants& sc, double g,
                         FieldStrength& out);

struct EnergyReport {
    double total = 0.0;
    double electric = 0.0;
    double magnetic_linear = 0.0;
    double nonlinear = 0.0;  // H(g) - H(0) at identical A, E
    double gauss_residual_l2 = 0.0;
};

EnergyReport energy_report(const FieldState& state, const StructureConstants& sc, double g);

// 1/2 sum of F_ij^a F_ij^a over sites and i < j.
double magnetic_energy(const FieldState& state, const StructureConstants& sc, double g);
double electric_energy(const FieldState& state) noexcept;

// L2 norm of G^a(x) = sum_i [D_i E_i^a - g f_abc A_i^b E_i^c].
double gauss_residual(const FieldState& state, const StructureConstants& sc, double g);

}  // namespace ymlab
