#include "ymlab/chaos.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ymlab/errors.hpp"
#include "ymlab/rng.hpp"

namespace ymlab {

namespace {

double separation(const FieldState& x, const FieldState& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double da = y.A()[k] - x.A()[k];
        const double de = y.E()[k] - x.E()[k];
        s += da * da + de * de;
    }
    return std::sqrt(s);
}

// perturbed <- fiducial + (perturbed - fiducial) * scale
FieldState rescaled(const FieldState& fiducial, const FieldState& perturbed, double scale) {
    FieldState out = fiducial;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out.A()[k] += (perturbed.A()[k] - fiducial.A()[k]) * scale;
        out.E()[k] += (perturbed.E()[k] - fiducial.E()[k]) * scale;
    }
    return out;
}

}  // namespace

LyapunovEstimate lyapunov_benettin(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                                   double delta0, std::size_t renorm_interval, std::uint64_t perturb_seed) {
    validate(p);
    if (!(delta0 >= 1e-10 && delta0 <= 1e-4)) throw std::invalid_argument("delta0: must lie in [1e-10, 1e-4]");
    if (renorm_interval < 1) throw std::invalid_argument("renorm_interval: must be >= 1");
    if (state.norm() == 0.0) throw std::invalid_argument("lyapunov_benettin: state is zero");
    const std::size_t intervals = p.steps / renorm_interval;
    if (intervals == 0) throw std::invalid_argument("steps: fewer than one renormalization interval");

    FieldState perturbed = state;
    {
        CounterRng rng(perturb_seed);
        FieldState dir(state.geometry(), state.group());
        for (double& v : dir.A()) v = rng.next_normal();
        for (double& v : dir.E()) v = rng.next_normal();
        const double n = dir.norm();
        if (n == 0.0) throw DegeneratePerturbation("perturbation direction is zero");
        dir *= delta0 / n;
        perturbed += dir;
    }

    LeapfrogStepper fiducial(state, sc, p.g);
    LeapfrogStepper shadow(perturbed, sc, p.g);

    LyapunovEstimate est;
    est.delta0 = delta0;
    est.renorm_interval = renorm_interval;
    est.dt = p.dt;
    est.per_interval_logs.reserve(intervals);

    for (std::size_t n = 0; n < intervals; ++n) {
        for (std::size_t k = 0; k < renorm_interval; ++k) {
            fiducial.step(p.dt);
            shadow.step(p.dt);
        }
        const double d = separation(fiducial.state(), shadow.state());
        if (d == 0.0) throw DegeneratePerturbation("trajectories coincided after interval " + std::to_string(n + 1));
        est.per_interval_logs.push_back(std::log(d / delta0));
        shadow.reset(rescaled(fiducial.state(), shadow.state(), delta0 / d));
    }

    const auto& logs = est.per_interval_logs;
    const double mean = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(logs.size());
    est.lambda = mean / (static_cast<double>(renorm_interval) * p.dt);

    const std::size_t tail = std::max<std::size_t>(1, logs.size() / 4);
    const double tail_mean =
        std::accumulate(logs.end() - static_cast<std::ptrdiff_t>(tail), logs.end(), 0.0) / static_cast<double>(tail);
    est.converged = std::fabs(tail_mean - mean) < 0.1 * std::fabs(mean);
    return est;
}

}  // namespace ymlab
