#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "ymlab/chaos.hpp"
#include "ymlab/errors.hpp"

using namespace ymlab;

TEST_CASE("lambda is the mean log growth per unit time") {
    const auto sc = structure_constants(kSU2);
    const auto st = fixtures::chaos_state(kSU2, 0.075);
    const auto p = fixtures::chaos_params(2.0, 20.0);
    const auto e = lyapunov_benettin(st, sc, p, 1e-8, 10, 3);
    REQUIRE(e.per_interval_logs.size() == 200);
    double sum = 0.0;
    for (double v : e.per_interval_logs) sum += v;
    const double expect = sum / static_cast<double>(e.per_interval_logs.size()) / (10 * 0.01);
    CHECK(std::abs(e.lambda - expect) <= 1e-12 * std::abs(expect));
    CHECK(e.delta0 == 1e-8);
    CHECK(e.renorm_interval == 10);
    CHECK(e.dt == 0.01);
}

TEST_CASE("estimates are reproducible in the perturbation seed") {
    const auto sc = structure_constants(kSU2);
    const auto st = fixtures::chaos_state(kSU2, 0.075);
    const auto p = fixtures::chaos_params(2.0, 5.0);
    const auto a = lyapunov_benettin(st, sc, p, 1e-8, 10, 5);
    const auto b = lyapunov_benettin(st, sc, p, 1e-8, 10, 5);
    const auto c = lyapunov_benettin(st, sc, p, 1e-8, 10, 6);
    CHECK(a.per_interval_logs == b.per_interval_logs);
    CHECK(a.per_interval_logs != c.per_interval_logs);
}

TEST_CASE("linear dynamics has a near-zero exponent") {
    // Short horizon keeps this quick; the acceptance run uses T = 2000.
    for (auto g : {kU1, kSU2}) {
        const auto sc = structure_constants(g);
        const auto e = lyapunov_benettin(fixtures::chaos_state(g, 0.3), sc, fixtures::chaos_params(0.0, 300.0),
                                         fixtures::kChaosDelta0, fixtures::kChaosRenorm, fixtures::kChaosPerturbSeed);
        CHECK(std::abs(e.lambda) <= 0.03);
    }
}

TEST_CASE("input validation") {
    const auto sc = structure_constants(kSU2);
    const auto st = fixtures::chaos_state(kSU2, 0.1);
    const auto p = fixtures::chaos_params(1.0, 1.0);
    CHECK_THROWS_AS(lyapunov_benettin(st, sc, p, 1e-11, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_benettin(st, sc, p, 1e-3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_benettin(st, sc, p, 1e-8, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_benettin(st, sc, p, 1e-8, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(lyapunov_benettin(FieldState(st.geometry(), kSU2), sc, p, 1e-8, 10, 1), std::invalid_argument);
}

TEST_CASE("coincident trajectories are degenerate") {
    // A perturbation of 1e-10 is lost entirely when added to entries of order 1e10.
    const auto sc = structure_constants(kU1);
    auto st = make_state(LatticeGeometry({4, 4}), kU1, fixtures::gaussian(1.0, 1, {0}));
    for (double& v : st.A()) v = 1e10;
    for (double& v : st.E()) v = 1e10;
    EvolveParams p;
    p.steps = 1;
    CHECK_THROWS_AS(lyapunov_benettin(st, sc, p, 1e-10, 1, 1), DegeneratePerturbation);
}
