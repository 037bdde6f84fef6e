#pragma once

#include <cstdint>
#include <vector>

#include "ymlab/field_state.hpp"
#include "ymlab/integrator.hpp"

namespace ymlab {

struct LyapunovEstimate {
    double lambda = 0.0;  // inverse lattice time
    std::vector<double> per_interval_logs;
    double delta0 = 0.0;
    std::size_t renorm_interval = 0;
    double dt = 0.0;
    // Mean over the last quarter of intervals within 10% of the full mean.
    bool converged = false;
};

// Two-trajectory Benettin estimate of the leading Lyapunov exponent over
// p.steps steps. The initial separation is an i.i.d. Gaussian vector over
// all A and E components scaled to delta0, drawn from perturb_seed.
// Requires delta0 in [1e-10, 1e-4], renorm_interval >= 1, a nonzero state and
// at least one full interval. Throws DegeneratePerturbation if the
// trajectories coincide; integrator errors propagate.
LyapunovEstimate lyapunov_benettin(const FieldState& state, const StructureConstants& sc, const EvolveParams& p,
                                   double delta0, std::size_t renorm_interval, std::uint64_t perturb_seed);

}  // namespace ymlab
