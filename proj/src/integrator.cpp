#include "ymlab/integrator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ymlab/errors.hpp"

namespace ymlab {

void validate(const EvolveParams& p) {
    if (!(std::isfinite(p.g) && p.g >= 0.0)) throw std::invalid_argument("g: must be finite and >= 0");
    if (!(std::isfinite(p.dt) && p.dt > 0.0)) throw std::invalid_argument("dt: must be finite and > 0");
    if (p.dt > kMaxStableDt && !p.allow_large_dt) {
        throw std::invalid_argument("dt: " + std::to_string(p.dt) + " exceeds the stability bound " +
                                    std::to_string(kMaxStableDt) + " (set allow_large_dt to override)");
    }
    if (p.observe_every < 1) throw std::invalid_argument("observe_every: must be >= 1");
}

void eom_rhs_into(const FieldState& state, const StructureConstants& sc, double g, FieldStrength& work,
                  std::span<double> out) {
    field_strength_into(state, sc, g, work);
    const auto& geo = state.geometry();
    const int dims = state.dims();
    const int nc = state.colors();
    const auto A = state.A();
    const auto F = work.data();
    const bool bracket = g != 0.0 && !sc.empty();
    std::vector<double> fji(static_cast<std::size_t>(nc));

    for (std::size_t s = 0; s < geo.sites(); ++s) {
        for (int i = 0; i < dims; ++i) {
            double* rhs = &out[state.index(s, i, 0)];
            for (int a = 0; a < nc; ++a) rhs[a] = 0.0;
            for (int j = 0; j < dims; ++j) {
                if (j == i) continue;
                // F_ji = +F[pair(j,i)] if j < i, else -F[pair(i,j)]
                const double sign = j < i ? 1.0 : -1.0;
                const int p = j < i ? FieldStrength::pair_index(j, i, dims) : FieldStrength::pair_index(i, j, dims);
                const std::size_t fwd = geo.forward(s, j);
                const std::size_t bwd = geo.backward(s, j);
                for (int a = 0; a < nc; ++a) {
                    rhs[a] += sign * 0.5 * (F[work.index(fwd, p, a)] - F[work.index(bwd, p, a)]);
                }
                if (bracket) {
                    for (int a = 0; a < nc; ++a) fji[a] = sign * F[work.index(s, p, a)];
                    sc.accumulate_bracket(A.subspan(state.index(s, j, 0), static_cast<std::size_t>(nc)), fji,
                                          std::span<double>(rhs, static_cast<std::size_t>(nc)), -g);
                }
            }
        }
    }
}

std::vector<double> eom_rhs(const FieldState& state, const StructureConstants& sc, double g) {
    FieldStrength work(state.geometry(), state.group());
    std::vector<double> out(state.size());
    eom_rhs_into(state, sc, g, work, out);
    return out;
}

LeapfrogStepper::LeapfrogStepper(FieldState initial, const StructureConstants& sc, double g)
    : state_(std::move(initial)), sc_(&sc), g_(g), work_(state_.geometry(), state_.group()), force_(state_.size()) {
    if (sc.group() != state_.group()) throw std::invalid_argument("structure constants do not match state group");
    refresh_force();
}

void LeapfrogStepper::refresh_force() { eom_rhs_into(state_, *sc_, g_, work_, force_); }

void LeapfrogStepper::reset(FieldState state) {
    require_compatible(state_, state);
    state_ = std::move(state);
    refresh_force();
}

void LeapfrogStepper::step(double dt) {
    const double half = 0.5 * dt;
    auto A = state_.A();
    auto E = state_.E();
    const std::size_t n = A.size();
    for (std::size_t k = 0; k < n; ++k) E[k] += half * force_[k];
    for (std::size_t k = 0; k < n; ++k) A[k] += dt * E[k];
    refresh_force();
    for (std::size_t k = 0; k < n; ++k) E[k] += half * force_[k];
    state_.set_time(state_.time() + dt);
    ++steps_;
    if (!state_.finite()) {
        throw NumericBlowup(steps_, "non-finite field value at step " + std::to_string(steps_));
    }
}

FieldState leapfrog_step(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                         TimeDirection direction) {
    validate(p);
    LeapfrogStepper stepper(state, sc, p.g);
    stepper.step(direction == TimeDirection::Forward ? p.dt : -p.dt);
    return stepper.state();
}

TrajectorySummary evolve(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                         const Observer& observer) {
    validate(p);
    const std::size_t n_obs = p.steps / p.observe_every + 1;
    TrajectorySummary out{{}, {}, {}, {}, state};
    out.times.reserve(n_obs);
    out.energy_total.reserve(n_obs);
    out.energy_nonlinear.reserve(n_obs);
    out.gauss_residual.reserve(n_obs);

    LeapfrogStepper stepper(state, sc, p.g);
    double h0 = 0.0;
    auto record = [&](std::size_t obs) {
        const FieldState& s = stepper.state();
        const EnergyReport r = energy_report(s, sc, p.g);
        if (obs == 0) h0 = r.total;
        out.times.push_back(s.time());
        out.energy_total.push_back(r.total);
        out.energy_nonlinear.push_back(r.nonlinear);
        out.gauss_residual.push_back(r.gauss_residual_l2);
        if (observer) observer(obs, s);
        if (obs > 0 && p.energy_drift_threshold > 0.0) {
            const double drift = h0 > 0.0 ? std::fabs(r.total - h0) / h0 : std::fabs(r.total - h0);
            if (drift > p.energy_drift_threshold) {
                std::ostringstream msg;
                msg << "relative energy drift " << drift << " exceeds threshold " << p.energy_drift_threshold
                    << " at step " << stepper.steps_taken();
                throw EnergyDriftAlarm(stepper.steps_taken(), drift, msg.str());
            }
        }
    };

    record(0);
    for (std::size_t k = 1; k <= p.steps; ++k) {
        stepper.step(p.dt);
        if (k % p.observe_every == 0) record(k / p.observe_every);
    }
    out.final_state = stepper.state();
    return out;
}

}  // namespace ymlab
