#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "fixtures.hpp"
#include "ymlab/collapse.hpp"
#include "ymlab/errors.hpp"

using namespace ymlab;

TEST_CASE("collapse time arithmetic") {
    const auto qcd = collapse_time(0.2e9);
    CHECK(qcd.tau_s == doctest::Approx(3.291059785e-24).epsilon(1e-9));
    CHECK(qcd.tau_s >= 1e-24);
    CHECK(qcd.tau_s <= 1e-23);
    CHECK(qcd.tau_s * qcd.hit_rate_hz == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(qcd.coherence_length_m == doctest::Approx(kPhysical.c_m_s * qcd.tau_s));

    CHECK(collapse_time(1.0).tau_s == 6.582119569e-16);

    const auto photon = collapse_time(0.0);
    CHECK(std::isinf(photon.tau_s));
    CHECK(photon.hit_rate_hz == 0.0);
    CHECK(std::isinf(photon.coherence_length_m));

    CHECK_THROWS_AS(collapse_time(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(collapse_time(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST_CASE("tau E = hbar and monotonicity") {
    double prev = kInfinity;
    for (double e = 1e-6; e < 1e12; e *= 3.7) {
        const auto est = collapse_time(e);
        CHECK(std::abs(est.tau_s * e / kPhysical.hbar_ev_s - 1.0) <= 1e-12);
        CHECK(est.tau_s < prev);
        prev = est.tau_s;
    }
}

TEST_CASE("coherence table ordering") {
    const std::vector<SystemPreset> presets{
        {"c60", 4.0, 200.0, PresetSource::User},
        {"photon", 0.0, kPhysical.c_m_s, PresetSource::Paper},
        {"neutron", 3.0, 2000.0, PresetSource::User},
        {"electron", 1.0, 1e6, PresetSource::User},
    };
    const auto t = coherence_table(presets);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].preset.name == "photon");
    CHECK(t.rows[1].preset.name == "electron");
    CHECK(t.rows[2].preset.name == "neutron");
    CHECK(t.rows[3].preset.name == "c60");
    REQUIRE(t.strictly_ordered.size() == 3);
    for (bool b : t.strictly_ordered) CHECK(b);
    CHECK(std::isinf(t.rows[0].estimate.tau_s));
    CHECK(std::isinf(t.rows[0].estimate.coherence_length_m));
    CHECK(t.rows[1].estimate.coherence_length_m == doctest::Approx(1e6 * kPhysical.hbar_ev_s));

    const auto tie = coherence_table({{"a", 1.0, 1.0, PresetSource::User}, {"b", 1.0, 1.0, PresetSource::User}});
    CHECK_FALSE(tie.strictly_ordered[0]);
    CHECK_THROWS_AS(coherence_table({}), std::invalid_argument);
    CHECK_THROWS_AS(coherence_table({{"bad", -1.0, 1.0, PresetSource::User}}), std::invalid_argument);
    CHECK_THROWS_AS(coherence_table({{"fast", 1.0, 4e8, PresetSource::User}}), std::invalid_argument);
}

TEST_CASE("hit process statistics and determinism") {
    CHECK(hit_process(kInfinity, 1e4, 1).empty());
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto hits = hit_process(1.0, 1e4, seed);
        total += static_cast<double>(hits.size());
        for (std::size_t i = 1; i < hits.size(); ++i) CHECK(hits[i] > hits[i - 1]);
        if (!hits.empty()) {
            CHECK(hits.front() >= 0.0);
            CHECK(hits.back() <= 1e4);
        }
    }
    CHECK(std::abs(total / 100.0 - 1e4) <= 3.0 * 100.0);
    CHECK(hit_process(2.0, 100.0, 9) == hit_process(2.0, 100.0, 9));
    CHECK(hit_process(2.0, 100.0, 9) != hit_process(2.0, 100.0, 10));
}

TEST_CASE("visibility") {
    CHECK(visibility(0.0, 1.0) == 1.0);
    CHECK(visibility(5.0, kInfinity) == 1.0);
    CHECK(visibility(2.0, 2.0) == doctest::Approx(0.3678794412).epsilon(1e-9));
    CHECK(visibility(1.0, 1.0) > visibility(2.0, 1.0));
    CHECK(visibility(1.0, 2.0) > visibility(1.0, 1.0));
    CHECK_THROWS_AS(visibility(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("lattice collapse time") {
    EnergyReport r;
    CHECK(std::isinf(lattice_collapse_time(r, 1.0).tau_s));
    r.nonlinear = 1.0;
    CHECK(lattice_collapse_time(r, 1.0).tau_s == 6.582119569e-16);
    r.nonlinear = -5e-11;
    CHECK(std::isinf(lattice_collapse_time(r, 1.0).tau_s));
    r.nonlinear = -1e-6;
    CHECK_THROWS_AS(lattice_collapse_time(r, 1.0), InconsistentEnergy);
    r.nonlinear = 1.0;
    CHECK_THROWS_AS(lattice_collapse_time(r, 0.0), std::invalid_argument);

    const auto u1 = energy_report(fixtures::u1_random(), structure_constants(kU1), 2.0);
    CHECK(std::isinf(lattice_collapse_time(u1, 1e9).tau_s));

    const auto st = fixtures::chaos_state(kSU2, 0.3);
    const auto rep = energy_report(st, structure_constants(kSU2), 2.0);
    REQUIRE(rep.nonlinear > 0.0);
    const double scale = 1e6;
    CHECK(lattice_collapse_time(rep, scale).tau_s == collapse_time(rep.nonlinear * scale).tau_s);
}

TEST_CASE("preset catalog io") {
    const std::vector<SystemPreset> presets{
        {"photon", 0.0, kPhysical.c_m_s, PresetSource::Paper},
        {"electron", 1e-3, 1e6, PresetSource::User},
    };
    std::istringstream in(presets_to_text(presets));
    CHECK(read_presets(in) == presets);

    std::istringstream unknown(R"([{"name":"x","e_nl_ev":1,"speed_m_s":1,"source":"user","extra":1}])");
    CHECK_THROWS_AS(read_presets(unknown), IoError);
    std::istringstream bad_source(R"([{"name":"x","e_nl_ev":1,"speed_m_s":1,"source":"folklore"}])");
    CHECK_THROWS_AS(read_presets(bad_source), IoError);
    std::istringstream garbage("{");
    CHECK_THROWS_AS(read_presets(garbage), IoError);
    CHECK_THROWS_AS(load_presets("/nonexistent/presets.json"), IoError);
}

TEST_CASE("shipped default presets reproduce the ordering") {
    const auto presets = load_presets(std::string(YMLAB_SOURCE_DIR) + "/presets/default_presets.json");
    REQUIRE(presets.size() == 4);
    CHECK(presets[0].name == "photon");
    CHECK(presets[0].e_nl_ev == 0.0);
    CHECK(presets[0].source == PresetSource::Paper);
    for (std::size_t i = 1; i < presets.size(); ++i) {
        CHECK(presets[i].source == PresetSource::User);
        CHECK(presets[i].e_nl_ev > presets[i - 1].e_nl_ev);
    }
    const auto t = coherence_table(presets);
    for (bool b : t.strictly_ordered) CHECK(b);
    CHECK(t.rows[0].preset.name == "photon");
    CHECK(t.rows[1].preset.name == "electron");
    CHECK(t.rows[2].preset.name == "neutron");
    CHECK(t.rows[3].preset.name == "C60");
}
