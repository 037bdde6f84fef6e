#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ymlab/field_state.hpp"

namespace ymlab {

inline constexpr double kDefaultDt = 0.01;
inline constexpr double kMaxStableDt = 0.1;
inline constexpr double kDefaultEnergyDriftThreshold = 1e-3;

struct EvolveParams {
    double g = 0.0;
    double dt = kDefaultDt;
    std::size_t steps = 0;
    std::size_t observe_every = 10;
    // evolve() raises EnergyDriftAlarm above this relative drift; <= 0 disables.
    double energy_drift_threshold = kDefaultEnergyDriftThreshold;
    // Lifts the dt <= kMaxStableDt guard.
    bool allow_large_dt = false;

    friend bool operator==(const EvolveParams&, const EvolveParams&) = default;
};

// Throws std::invalid_argument naming the offending field.
void validate(const EvolveParams& p);

// dE_i^a/dt = sum_j [D_j F_ji^a - g f_abc A_j^b F_ji^c], i.e. -dH/dA for the
// central-difference lattice Hamiltonian.
std::vector<double> eom_rhs(const FieldState& state, const StructureConstants& sc, double g);
void eom_rhs_into(const FieldState& state, const StructureConstants& sc, double g, FieldStrength& work,
                  std::span<double> out);

// Kick-drift-kick leapfrog that keeps the force from the closing kick for the
// next opening kick. Stepping with -dt exactly undoes a +dt step up to roundoff.
class LeapfrogStepper {
public:
    LeapfrogStepper(FieldState initial, const StructureConstants& sc, double g);

    // Throws NumericBlowup (carrying the 1-based step count) on non-finite output.
    void step(double dt);

    const FieldState& state() const noexcept { return state_; }
    // Replaces the state and refreshes the cached force.
    void reset(FieldState state);
    std::size_t steps_taken() const noexcept { return steps_; }

private:
    void refresh_force();

    FieldState state_;
    const StructureConstants* sc_;
    double g_;
    FieldStrength work_;
    std::vector<double> force_;
    std::size_t steps_ = 0;
};

enum class TimeDirection { Forward, Backward };

// One leapfrog step of size p.dt (or -p.dt for Backward).
FieldState leapfrog_step(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                         TimeDirection direction = TimeDirection::Forward);

struct TrajectorySummary {
    std::vector<double> times;
    std::vector<double> energy_total;
    std::vector<double> energy_nonlinear;
    std::vector<double> gauss_residual;
    FieldState final_state;
};

// Called with the observation index and the current state at t = 0 and every
// observe_every steps thereafter.
using Observer = std::function<void(std::size_t, const FieldState&)>;

// Runs p.steps leapfrog steps. Series have floor(steps/observe_every) + 1
// entries. Throws NumericBlowup or EnergyDriftAlarm with the step index.
TrajectorySummary evolve(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                         const Observer& observer = {});

}  // namespace ymlab
