#include "ymlab/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ymlab/errors.hpp"
#include "ymlab/rng.hpp"

namespace ymlab {

namespace {

void check_speed(double speed, const PhysicalConstants& k) {
    if (!(speed > 0.0 && speed <= k.c_m_s)) throw std::invalid_argument("speed_m_s: must lie in (0, c]");
}

CollapseEstimate from_tau(double tau, double speed) {
    CollapseEstimate est;
    est.tau_s = tau;
    if (std::isinf(tau)) {
        est.hit_rate_hz = 0.0;
        est.coherence_length_m = kInfinity;
    } else {
        est.hit_rate_hz = 1.0 / tau;
        est.coherence_length_m = speed * tau;
    }
    return est;
}

}  // namespace

CollapseEstimate collapse_time(double e_nl_ev, const PhysicalConstants& k, double speed_m_s) {
    if (!std::isfinite(e_nl_ev) || e_nl_ev < 0.0) throw std::invalid_argument("e_nl_ev: must be finite and >= 0");
    check_speed(speed_m_s, k);
    if (e_nl_ev == 0.0) return from_tau(kInfinity, speed_m_s);
    return from_tau(k.hbar_ev_s / e_nl_ev, speed_m_s);
}

CoherenceTable coherence_table(const std::vector<SystemPreset>& presets, const PhysicalConstants& k) {
    if (presets.empty()) throw std::invalid_argument("coherence_table: preset list is empty");
    CoherenceTable table;
    for (const auto& p : presets) table.rows.push_back({p, collapse_time(p.e_nl_ev, k, p.speed_m_s)});
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const CoherenceRow& x, const CoherenceRow& y) { return x.estimate.tau_s > y.estimate.tau_s; });
    for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
        table.strictly_ordered.push_back(table.rows[i].estimate.tau_s > table.rows[i + 1].estimate.tau_s);
    }
    return table;
}

std::vector<double> hit_process(double tau_s, double horizon_s, std::uint64_t seed) {
    if (!(horizon_s > 0.0)) throw std::invalid_argument("horizon_s: must be > 0");
    if (!(tau_s > 0.0)) throw std::invalid_argument("tau_s: must be > 0");
    std::vector<double> hits;
    if (std::isinf(tau_s)) return hits;
    CounterRng rng(seed);
    double t = 0.0;
    for (;;) {
        t += -tau_s * std::log(rng.next_uniform());
        if (t > horizon_s) break;
        hits.push_back(t);
    }
    return hits;
}

double visibility(double flight_time_s, double tau_s) {
    if (!(flight_time_s >= 0.0)) throw std::invalid_argument("flight_time_s: must be >= 0");
    if (!(tau_s > 0.0)) throw std::invalid_argument("tau_s: must be > 0");
    if (std::isinf(tau_s)) return 1.0;
    return std::exp(-flight_time_s / tau_s);
}

CollapseEstimate lattice_collapse_time(const EnergyReport& report, double energy_scale_ev, const PhysicalConstants& k,
                                       double speed_m_s) {
    if (!(energy_scale_ev > 0.0 && std::isfinite(energy_scale_ev))) {
        throw std::invalid_argument("energy_scale_ev: must be finite and > 0");
    }
    if (report.nonlinear < -1e-10) {
        throw InconsistentEnergy("nonlinear energy " + std::to_string(report.nonlinear) +
                                 " is negative beyond roundoff");
    }
    const double e_nl = report.nonlinear > 0.0 ? report.nonlinear : 0.0;
    return collapse_time(e_nl * energy_scale_ev, k, speed_m_s);
}

std::vector<SystemPreset> read_presets(std::istream& in) {
    std::vector<SystemPreset> out;
    try {
        const auto doc = nlohmann::json::parse(in);
        if (!doc.is_array()) throw IoError("preset catalog must be an array of records");
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const auto& rec = doc[i];
            const std::string where = "preset[" + std::to_string(i) + "]";
            for (const auto& [key, value] : rec.items()) {
                if (key != "name" && key != "e_nl_ev" && key != "speed_m_s" && key != "source") {
                    throw IoError(where + ": unknown key '" + key + "'");
                }
            }
            SystemPreset p;
            p.name = rec.at("name").get<std::string>();
            p.e_nl_ev = rec.at("e_nl_ev").get<double>();
            p.speed_m_s = rec.at("speed_m_s").get<double>();
            const auto src = rec.at("source").get<std::string>();
            if (src == "paper") {
                p.source = PresetSource::Paper;
            } else if (src == "user") {
                p.source = PresetSource::User;
            } else {
                throw IoError(where + ": source must be 'paper' or 'user'");
            }
            if (!(p.e_nl_ev >= 0.0) || !std::isfinite(p.e_nl_ev)) throw IoError(where + ": e_nl_ev must be >= 0");
            if (!(p.speed_m_s > 0.0 && p.speed_m_s <= kPhysical.c_m_s)) {
                throw IoError(where + ": speed_m_s must lie in (0, c]");
            }
            out.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed preset catalog: ") + e.what());
    }
    return out;
}

std::vector<SystemPreset> load_presets(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open preset catalog '" + path + "'");
    return read_presets(in);
}

std::string presets_to_text(const std::vector<SystemPreset>& presets) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& p : presets) {
        doc.push_back({{"name", p.name},
                       {"e_nl_ev", p.e_nl_ev},
                       {"speed_m_s", p.speed_m_s},
                       {"source", p.source == PresetSource::Paper ? "paper" : "user"}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace ymlab
