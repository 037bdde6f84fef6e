#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles/naive_lattice.hpp"
#include "ymlab/errors.hpp"
#include "ymlab/integrator.hpp"

using namespace ymlab;
using fixtures::all_colors;
using fixtures::gaussian;
using fixtures::plane_wave;

namespace {

oracle::NaiveLattice naive_for(const FieldState& s) {
    const auto sc = structure_constants(s.group());
    const int n = s.colors();
    std::vector<double> f(static_cast<std::size_t>(n * n * n), 0.0);
    for (const auto& e : sc.entries()) f[(e.a * n + e.b) * n + e.c] = e.f;
    return {s.geometry().extent(), n, f};
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

double relative_distance(const FieldState& x, const FieldState& y) { return (x - y).norm() / y.norm(); }

FieldState run(const FieldState& s, const StructureConstants& sc, double g, double dt, std::size_t steps) {
    LeapfrogStepper stepper(s, sc, g);
    for (std::size_t k = 0; k < steps; ++k) stepper.step(dt);
    return stepper.state();
}

}  // namespace

TEST_CASE("parameter validation") {
    EvolveParams p;
    CHECK_NOTHROW(validate(p));
    p.dt = 0.5;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p.allow_large_dt = true;
    CHECK_NOTHROW(validate(p));
    p = EvolveParams{};
    p.g = -1.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = EvolveParams{};
    p.dt = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = EvolveParams{};
    p.observe_every = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("zero state stays zero") {
    const auto sc = structure_constants(kSU2);
    const FieldState zero(fixtures::square16(), kSU2);
    for (double v : eom_rhs(zero, sc, 1.0)) CHECK(v == 0.0);
    EvolveParams p;
    p.g = 1.0;
    const auto next = leapfrog_step(zero, sc, p);
    CHECK(next.time() == doctest::Approx(0.01));
    CHECK(next.norm() == 0.0);
}

TEST_CASE("U1 rhs equals the discrete Maxwell operator") {
    for (const auto& extent : {std::vector<int>{8, 6}, std::vector<int>{4, 5, 6}, std::vector<int>{9}}) {
        const LatticeGeometry geo(extent);
        const auto s = make_state(geo, kU1, gaussian(1.0, 13, {0}));
        const auto L = naive_for(s);
        const auto ref = L.maxwell(to_vec(s.A()));
        const auto rhs = eom_rhs(s, structure_constants(kU1), 2.0);
        for (std::size_t q = 0; q < rhs.size(); ++q) CHECK(std::abs(rhs[q] - ref[q]) <= 1e-12);
    }
}

TEST_CASE("rhs matches the naive direct-summation rhs") {
    const LatticeGeometry geo({5, 4, 6});
    for (auto g : {kSU2, kSU3}) {
        const auto s = make_state(geo, g, gaussian(0.7, 14, all_colors(g)));
        const auto ref = naive_for(s).rhs(to_vec(s.A()), 1.3);
        const auto rhs = eom_rhs(s, structure_constants(g), 1.3);
        for (std::size_t q = 0; q < rhs.size(); ++q) CHECK(std::abs(rhs[q] - ref[q]) <= 1e-12);
    }
}

TEST_CASE("rhs is minus the gradient of the lattice Hamiltonian") {
    const LatticeGeometry geo({4, 4});
    const auto s = make_state(geo, kSU2, gaussian(0.8, 15, all_colors(kSU2)));
    const auto L = naive_for(s);
    const double g = 1.0, h = 1e-5;
    const auto rhs = eom_rhs(s, structure_constants(kSU2), g);
    auto A = to_vec(s.A());
    for (std::size_t q = 0; q < A.size(); ++q) {
        const double keep = A[q];
        A[q] = keep + h;
        const double up = L.magnetic(A, g);
        A[q] = keep - h;
        const double down = L.magnetic(A, g);
        A[q] = keep;
        CHECK(std::abs(rhs[q] + (up - down) / (2.0 * h)) <= 1e-8);
    }
}

TEST_CASE("single step is reversible") {
    const auto sc = structure_constants(kSU2);
    const auto s = make_state(fixtures::square16(), kSU2, gaussian(0.5, 16, all_colors(kSU2)));
    EvolveParams p;
    p.g = 1.0;
    const auto fwd = leapfrog_step(s, sc, p);
    const auto back = leapfrog_step(fwd, sc, p, TimeDirection::Backward);
    CHECK(relative_distance(back, s) <= 1e-10);
    CHECK(std::abs(back.time()) <= 1e-15);
}

TEST_CASE("forward then backward 1000 steps returns the initial state") {
    const auto sc = structure_constants(kSU2);
    const auto s = make_state(fixtures::square16(), kSU2, gaussian(0.3, 42, all_colors(kSU2)));
    LeapfrogStepper stepper(s, sc, 1.0);
    for (int k = 0; k < 1000; ++k) stepper.step(0.005);
    for (int k = 0; k < 1000; ++k) stepper.step(-0.005);
    CHECK(relative_distance(stepper.state(), s) <= 1e-8);
    CHECK(stepper.steps_taken() == 2000);
}

TEST_CASE("U1 plane wave returns after one period with O(dt^2) error") {
    // Transverse wave A_y cos(2 pi x / L): D_x D_x has eigenvalue -sin^2(2 pi / L).
    // The exact normal mode returns to (A, E) = (A0, 0); E / omega measures the
    // phase error to first order.
    const auto geo = fixtures::square16();
    const auto sc = structure_constants(kU1);
    const auto s = make_state(geo, kU1, plane_wave(1.0, {1, 0}, 0, 1));
    const double omega = std::sin(2.0 * std::numbers::pi / 16.0);
    const double period = 2.0 * std::numbers::pi / omega;
    double err[2];
    const std::size_t steps[2] = {200, 400};
    for (int r = 0; r < 2; ++r) {
        const auto end = run(s, sc, 0.0, period / static_cast<double>(steps[r]), steps[r]);
        double d = 0.0, n = 0.0;
        for (std::size_t q = 0; q < s.size(); ++q) {
            d += (end.A()[q] - s.A()[q]) * (end.A()[q] - s.A()[q]);
            d += (end.E()[q] / omega) * (end.E()[q] / omega);
            n += s.A()[q] * s.A()[q];
        }
        err[r] = std::sqrt(d / n);
    }
    CHECK(err[0] < 0.05);
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("evolve series lengths and steps = 0") {
    const auto sc = structure_constants(kSU2);
    const auto s = make_state(fixtures::square16(), kSU2, gaussian(0.2, 17, all_colors(kSU2)));
    EvolveParams p;
    p.g = 1.0;
    p.steps = 0;
    auto t = evolve(s, sc, p);
    CHECK(t.times.size() == 1);
    CHECK(t.energy_total.size() == 1);
    CHECK(t.energy_nonlinear.size() == 1);
    CHECK(t.gauss_residual.size() == 1);
    CHECK(t.final_state == s);
    CHECK(t.energy_total[0] == energy_report(s, sc, 1.0).total);

    p.steps = 25;
    p.observe_every = 10;
    std::size_t calls = 0;
    t = evolve(s, sc, p, [&](std::size_t, const FieldState&) { ++calls; });
    CHECK(t.times.size() == 3);
    CHECK(calls == 3);
    CHECK(t.times[2] == doctest::Approx(0.2));
    CHECK(t.final_state.time() == doctest::Approx(0.25));
}

TEST_CASE("evolve is deterministic") {
    const auto sc = structure_constants(kSU3);
    const auto s = make_state(LatticeGeometry({6, 6}), kSU3, gaussian(0.3, 18, all_colors(kSU3)));
    EvolveParams p;
    p.g = 1.5;
    p.steps = 200;
    const auto a = evolve(s, sc, p);
    const auto b = evolve(s, sc, p);
    CHECK(a.final_state == b.final_state);
    CHECK(a.energy_total == b.energy_total);
    CHECK(a.gauss_residual == b.gauss_residual);
}

TEST_CASE("evolution is linear at g = 0") {
    const LatticeGeometry geo({8, 8});
    for (auto g : {kU1, kSU2, kSU3}) {
        const auto sc = structure_constants(g);
        const auto x = make_state(geo, g, gaussian(0.5, 19, all_colors(g)));
        const auto y = make_state(geo, g, gaussian(0.5, 20, all_colors(g)));
        const double alpha = 0.6, beta = -2.1;
        const auto lhs = run(alpha * x + beta * y, sc, 0.0, 0.01, 500);
        const auto rhs = alpha * run(x, sc, 0.0, 0.01, 500) + beta * run(y, sc, 0.0, 0.01, 500);
        CHECK(relative_distance(lhs, rhs) <= 1e-10);
    }
}

TEST_CASE("U1 fixture: energy drift over 1e4 steps at dt = 0.01") {
    const auto sc = structure_constants(kU1);
    EvolveParams p;
    p.g = 1.0;
    p.dt = 0.01;
    p.steps = 10000;
    p.observe_every = 100;
    p.energy_drift_threshold = 0.0;
    const auto t = evolve(fixtures::u1_random(), sc, p);
    double drift = 0.0;
    for (double h : t.energy_total) drift = std::max(drift, std::abs(h - t.energy_total[0]) / t.energy_total[0]);
    CHECK(drift <= 1e-5);
    for (double r : t.gauss_residual) CHECK(r <= 10.0 * t.gauss_residual[0]);
}

TEST_CASE("SU2 fixture: energy drift and Gauss residual over 1e4 steps at dt = 0.005") {
    const auto sc = structure_constants(kSU2);
    EvolveParams p;
    p.g = 1.0;
    p.dt = 0.005;
    p.steps = 10000;
    p.observe_every = 100;
    p.energy_drift_threshold = 0.0;
    const auto t = evolve(fixtures::su2_random(), sc, p);
    double drift = 0.0;
    for (double h : t.energy_total) drift = std::max(drift, std::abs(h - t.energy_total[0]) / t.energy_total[0]);
    CHECK(drift <= 1e-4);
    for (double r : t.gauss_residual) CHECK(r <= 10.0 * t.gauss_residual[0]);
}

TEST_CASE("blowup and drift alarms carry the step index") {
    const auto sc = structure_constants(kSU2);
    auto s = make_state(LatticeGeometry({4, 4}), kSU2, gaussian(1.0, 22, all_colors(kSU2)));
    s *= 1e120;
    LeapfrogStepper stepper(s, sc, 1.0);
    try {
        stepper.step(0.01);
        FAIL("expected NumericBlowup");
    } catch (const NumericBlowup& e) {
        CHECK(e.step() == 1);
    }

    const auto calm = make_state(LatticeGeometry({4, 4}), kSU2, gaussian(0.5, 23, all_colors(kSU2)));
    EvolveParams p;
    p.g = 1.0;
    p.steps = 100;
    p.observe_every = 5;
    p.energy_drift_threshold = 1e-14;
    try {
        evolve(calm, sc, p);
        FAIL("expected EnergyDriftAlarm");
    } catch (const EnergyDriftAlarm& e) {
        CHECK(e.step() == 5);
        CHECK(e.drift() > 1e-14);
    }
}
