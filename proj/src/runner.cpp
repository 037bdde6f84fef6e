#include "ymlab/runner.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ymlab/csv.hpp"
#include "ymlab/errors.hpp"
#include "ymlab/serialization.hpp"

namespace ymlab {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

ojson series(const std::vector<double>& v) {
    ojson arr = ojson::array();
    for (double x : v) arr.push_back(number(x));
    return arr;
}

std::string k_header(std::size_t i) { return "k" + std::to_string(i); }

FieldState initial_state(const Scenario& s) {
    FieldState state = make_state(*s.geometry, s.group, *s.init_a);
    // mode coupling / lattice collapse: a second init block adds a component
    if (s.init_b && s.command != Command::Defect && s.command != Command::Scaling) {
        state += make_state(*s.geometry, s.group, *s.init_b);
    }
    return state;
}

void require_format(const Scenario& s, std::initializer_list<OutputFormat> allowed) {
    for (auto f : allowed)
        if (f == s.output.format) return;
    throw ConfigError("output.format", std::string("format '") + std::string(format_name(s.output.format)) +
                                           "' is not supported by command " + std::string(command_name(s.command)));
}

std::string emit(const Scenario& s, const std::string& content) {
    if (s.output.path.empty()) return "-";
    write_file_atomic(s.output.path, content);
    return s.output.path;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

std::string collapse_row_csv(const std::string& name, double e_nl_ev, const CollapseEstimate& est) {
    CsvTable t({"name", "e_nl_ev", "tau_s", "hit_rate_hz", "coherence_length_m"});
    t.add_row({name, format_double(e_nl_ev), format_double(est.tau_s), format_double(est.hit_rate_hz),
               format_double(est.coherence_length_m)});
    return t.str();
}

ojson estimate_json(const CollapseEstimate& est) {
    return {{"tau_s", number(est.tau_s)},
            {"hit_rate_hz", number(est.hit_rate_hz)},
            {"coherence_length_m", number(est.coherence_length_m)}};
}

RunResult run_evolve(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Binary});
    const auto sc = structure_constants(s.group);
    const TrajectorySummary traj = evolve(initial_state(s), sc, *s.evolve);
    std::string content;
    switch (s.output.format) {
        case OutputFormat::Csv: content = trajectory_csv(traj); break;
        case OutputFormat::Json: content = state_to_text(traj.final_state, s.evolve->g); break;
        case OutputFormat::Binary: {
            std::ostringstream bin(std::ios::binary);
            write_state_binary(bin, traj.final_state, s.evolve->g);
            content = bin.str();
            break;
        }
    }
    const double h0 = traj.energy_total.front();
    const double drift = h0 > 0.0 ? std::fabs(traj.energy_total.back() - h0) / h0 : 0.0;
    const std::string path = emit(s, content);
    return {"evolve energy_total=" + format_double(traj.energy_total.back()) +
                " energy_nonlinear=" + format_double(traj.energy_nonlinear.back()) +
                " relative_drift=" + format_double(drift) + " out=" + path,
            s.output.path};
}

RunResult run_defect(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto sc = structure_constants(s.group);
    const FieldState a = make_state(*s.geometry, s.group, *s.init_a);
    const FieldState b = make_state(*s.geometry, s.group, *s.init_b);
    const DefectSeries d = superposition_defect(a, b, sc, *s.evolve);
    double max_defect = 0.0;
    for (double v : d.defect) max_defect = std::max(max_defect, v);
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = defect_csv(d);
    } else {
        content = dump({{"command", "defect"},
                        {"name", s.name},
                        {"g", s.evolve->g},
                        {"max_defect", max_defect},
                        {"t", series(d.times)},
                        {"defect", series(d.defect)},
                        {"norm_a", series(d.norm_a)},
                        {"norm_b", series(d.norm_b)},
                        {"norm_sum", series(d.norm_sum_evolved)}});
    }
    const std::string path = emit(s, content);
    return {"defect max_defect=" + format_double(max_defect) + " final_defect=" + format_double(d.defect.back()) +
                " out=" + path,
            s.output.path};
}

RunResult run_scaling(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto sc = structure_constants(s.group);
    const FieldState a = make_state(*s.geometry, s.group, *s.init_a);
    const FieldState b = make_state(*s.geometry, s.group, *s.init_b);
    const DefectScaling r = defect_scaling(a, b, sc, *s.evolve, s.g_list);
    const std::string slope = r.slope ? format_double(*r.slope) : "undefined";
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = scaling_csv(r);
    } else {
        ojson pts = ojson::array();
        for (const auto& [g, d] : r.points) pts.push_back({{"g", g}, {"defect", d}});
        content = dump({{"command", "scaling"},
                        {"name", s.name},
                        {"points", pts},
                        {"slope", r.slope ? ojson(*r.slope) : ojson("undefined")}});
    }
    const std::string path = emit(s, content);
    return {"scaling slope=" + slope + " out=" + path, s.output.path};
}

RunResult run_spectrum(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const ModeSpectrum spec = mode_spectrum(initial_state(s));
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = spectrum_csv(spec);
    } else {
        ojson modes = ojson::array();
        for (const auto& m : spec.modes) {
            modes.push_back({{"k", m.k},
                             {"direction", m.direction},
                             {"color", m.color},
                             {"re", m.amplitude.real()},
                             {"im", m.amplitude.imag()}});
        }
        content = dump({{"command", "spectrum"}, {"name", s.name}, {"total_power", spec.total_power}, {"modes", modes}});
    }
    const std::string path = emit(s, content);
    return {"spectrum modes=" + std::to_string(spec.modes.size()) + " total_power=" + format_double(spec.total_power) +
                " out=" + path,
            s.output.path};
}

RunResult run_mode_coupling(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto sc = structure_constants(s.group);
    const ModeCouplingReport r = mode_coupling(initial_state(s), sc, *s.evolve);
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = mode_coupling_csv(r);
    } else {
        ojson fresh = ojson::array();
        for (const auto& [key, power] : r.new_modes) {
            fresh.push_back({{"k", key.k}, {"color", key.color}, {"power", power}});
        }
        content = dump({{"command", "modecoupling"},
                        {"name", s.name},
                        {"offdiagonal_transfer", r.offdiagonal_transfer},
                        {"total_power_final", r.total_power_final},
                        {"new_modes", fresh}});
    }
    const std::string path = emit(s, content);
    return {"modecoupling offdiagonal_transfer=" + format_double(r.offdiagonal_transfer) +
                " new_modes=" + std::to_string(r.new_modes.size()) + " out=" + path,
            s.output.path};
}

RunResult run_lyapunov(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto sc = structure_constants(s.group);
    const auto& c = *s.chaos;
    const LyapunovEstimate l =
        lyapunov_benettin(initial_state(s), sc, *s.evolve, c.delta0, c.renorm_interval, c.perturb_seed);
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = lyapunov_csv(l);
    } else {
        content = dump({{"command", "lyapunov"},
                        {"name", s.name},
                        {"lambda", l.lambda},
                        {"converged", l.converged},
                        {"delta0", l.delta0},
                        {"renorm_interval", l.renorm_interval},
                        {"per_interval_logs", series(l.per_interval_logs)}});
    }
    const std::string path = emit(s, content);
    return {"lyapunov lambda=" + format_double(l.lambda) + " converged=" + (l.converged ? "true" : "false") +
                " out=" + path,
            s.output.path};
}

RunResult run_collapse(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto& c = *s.collapse;
    double e_nl_ev = 0.0;
    CollapseEstimate est;
    if (c.e_nl_ev) {
        e_nl_ev = *c.e_nl_ev;
        est = collapse_time(e_nl_ev, kPhysical, c.speed_m_s);
    } else {
        const auto sc = structure_constants(s.group);
        FieldState state = initial_state(s);
        if (s.evolve->steps > 0) state = evolve(state, sc, *s.evolve).final_state;
        const EnergyReport report = energy_report(state, sc, s.evolve->g);
        est = lattice_collapse_time(report, *c.energy_scale_ev, kPhysical, c.speed_m_s);
        e_nl_ev = std::max(report.nonlinear, 0.0) * *c.energy_scale_ev;
    }
    std::vector<double> hits;
    if (c.horizon_s) hits = hit_process(est.tau_s, *c.horizon_s, c.seed);

    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = collapse_row_csv(s.name, e_nl_ev, est);
    } else {
        ojson j = {{"command", "collapse"}, {"name", s.name}, {"e_nl_ev", e_nl_ev}};
        j["estimate"] = estimate_json(est);
        if (c.horizon_s) {
            j["horizon_s"] = *c.horizon_s;
            j["seed"] = c.seed;
            j["hits"] = hits;
        }
        content = dump(j);
    }
    const std::string path = emit(s, content);
    std::string summary = "collapse tau_s=" + format_double(est.tau_s) + " hit_rate_hz=" +
                          format_double(est.hit_rate_hz) + " coherence_length_m=" +
                          format_double(est.coherence_length_m);
    if (c.horizon_s) summary += " hits=" + std::to_string(hits.size());
    return {summary + " out=" + path, s.output.path};
}

RunResult run_table(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const CoherenceTable t = coherence_table(load_presets(s.collapse->presets_path));
    bool ordered = true;
    for (bool b : t.strictly_ordered) ordered = ordered && b;
    std::string content;
    if (s.output.format == OutputFormat::Csv) {
        content = coherence_csv(t);
    } else {
        ojson rows = ojson::array();
        for (const auto& r : t.rows) {
            ojson row = {{"name", r.preset.name},
                         {"e_nl_ev", r.preset.e_nl_ev},
                         {"source", r.preset.source == PresetSource::Paper ? "paper" : "user"}};
            row.update(estimate_json(r.estimate));
            rows.push_back(row);
        }
        content = dump({{"command", "table"}, {"rows", rows}, {"strictly_ordered", t.strictly_ordered}});
    }
    const std::string path = emit(s, content);
    return {"table rows=" + std::to_string(t.rows.size()) + " strictly_ordered=" + (ordered ? "true" : "false") +
                " first=" + t.rows.front().preset.name + " out=" + path,
            s.output.path};
}

RunResult run_visibility(const Scenario& s) {
    require_format(s, {OutputFormat::Csv, OutputFormat::Json});
    const auto& c = *s.collapse;
    const CollapseEstimate est = collapse_time(*c.e_nl_ev, kPhysical, c.speed_m_s);
    CsvTable t({"flight_time_s", "tau_s", "visibility"});
    ojson rows = ojson::array();
    for (double ft : c.flight_times_s) {
        const double v = visibility(ft, est.tau_s);
        t.add_row({format_double(ft), format_double(est.tau_s), format_double(v)});
        rows.push_back({{"flight_time_s", ft}, {"visibility", v}});
    }
    const std::string content = s.output.format == OutputFormat::Csv
                                    ? t.str()
                                    : dump({{"command", "visibility"},
                                            {"name", s.name},
                                            {"tau_s", number(est.tau_s)},
                                            {"rows", rows}});
    const std::string path = emit(s, content);
    return {"visibility tau_s=" + format_double(est.tau_s) +
                " visibility_last=" + format_double(visibility(c.flight_times_s.back(), est.tau_s)) + " out=" + path,
            s.output.path};
}

}  // namespace

std::string trajectory_csv(const TrajectorySummary& t) {
    CsvTable csv({"t", "energy_total", "energy_nonlinear", "gauss_residual"});
    for (std::size_t i = 0; i < t.times.size(); ++i) {
        csv.add_row({format_double(t.times[i]), format_double(t.energy_total[i]), format_double(t.energy_nonlinear[i]),
                     format_double(t.gauss_residual[i])});
    }
    return csv.str();
}

std::string defect_csv(const DefectSeries& d) {
    CsvTable csv({"t", "defect", "norm_a", "norm_b", "norm_sum"});
    for (std::size_t i = 0; i < d.times.size(); ++i) {
        csv.add_row({format_double(d.times[i]), format_double(d.defect[i]), format_double(d.norm_a[i]),
                     format_double(d.norm_b[i]), format_double(d.norm_sum_evolved[i])});
    }
    return csv.str();
}

std::string scaling_csv(const DefectScaling& s) {
    CsvTable csv({"g", "defect"});
    for (const auto& [g, d] : s.points) csv.add_row({format_double(g), format_double(d)});
    return csv.str();
}

std::string spectrum_csv(const ModeSpectrum& s) {
    const std::size_t dims = s.modes.empty() ? 0 : s.modes.front().k.size();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < dims; ++i) header.push_back(k_header(i));
    for (const char* h : {"direction", "color", "re", "im", "power"}) header.emplace_back(h);
    CsvTable csv(header);
    for (const auto& m : s.modes) {
        std::vector<std::string> row;
        for (int k : m.k) row.push_back(std::to_string(k));
        row.push_back(std::to_string(m.direction));
        row.push_back(std::to_string(m.color));
        row.push_back(format_double(m.amplitude.real()));
        row.push_back(format_double(m.amplitude.imag()));
        row.push_back(format_double(std::norm(m.amplitude)));
        csv.add_row(std::move(row));
    }
    return csv.str();
}

std::string mode_coupling_csv(const ModeCouplingReport& r) {
    std::map<ModeKey, std::pair<double, double>> merged;
    for (const auto& [k, p] : r.mode_energy_initial) merged[k].first = p;
    for (const auto& [k, p] : r.mode_energy_final) merged[k].second = p;
    const std::size_t dims = merged.empty() ? 0 : merged.begin()->first.k.size();
    std::vector<std::string> header;
    for (std::size_t i = 0; i < dims; ++i) header.push_back(k_header(i));
    for (const char* h : {"color", "initial_power", "final_power", "new"}) header.emplace_back(h);
    CsvTable csv(header);
    for (const auto& [key, pp] : merged) {
        bool fresh = false;
        for (const auto& [nk, np] : r.new_modes) fresh = fresh || nk == key;
        std::vector<std::string> row;
        for (int k : key.k) row.push_back(std::to_string(k));
        row.push_back(std::to_string(key.color));
        row.push_back(format_double(pp.first));
        row.push_back(format_double(pp.second));
        row.push_back(fresh ? "1" : "0");
        csv.add_row(std::move(row));
    }
    return csv.str();
}

std::string lyapunov_csv(const LyapunovEstimate& l) {
    CsvTable csv({"interval", "t", "log_growth"});
    const double span = static_cast<double>(l.renorm_interval) * l.dt;
    for (std::size_t i = 0; i < l.per_interval_logs.size(); ++i) {
        csv.add_row({std::to_string(i + 1), format_double(static_cast<double>(i + 1) * span),
                     format_double(l.per_interval_logs[i])});
    }
    return csv.str();
}

std::string coherence_csv(const CoherenceTable& t) {
    CsvTable csv({"name", "e_nl_ev", "tau_s", "hit_rate_hz", "coherence_length_m"});
    for (const auto& r : t.rows) {
        csv.add_row({r.preset.name, format_double(r.preset.e_nl_ev), format_double(r.estimate.tau_s),
                     format_double(r.estimate.hit_rate_hz), format_double(r.estimate.coherence_length_m)});
    }
    return csv.str();
}

RunResult run_scenario(const Scenario& s) {
    switch (s.command) {
        case Command::Evolve: return run_evolve(s);
        case Command::Defect: return run_defect(s);
        case Command::Scaling: return run_scaling(s);
        case Command::Spectrum: return run_spectrum(s);
        case Command::ModeCoupling: return run_mode_coupling(s);
        case Command::Lyapunov: return run_lyapunov(s);
        case Command::Collapse: return run_collapse(s);
        case Command::Table: return run_table(s);
        case Command::Visibility: return run_visibility(s);
    }
    throw ConfigError("command", "unhandled command");
}

namespace {

Scenario load_scenario(const std::string& command, const std::string& config_path,
                       const std::vector<std::string>& overrides, const std::optional<std::uint64_t>& seed) {
    std::ifstream in(config_path);
    if (!in) throw IoError("cannot read scenario file '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("", config_path + ": malformed scenario document: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("", config_path + ": scenario must be an object");
    if (doc.contains("command") && doc["command"] != command) {
        throw ConfigError("command", "config declares '" + doc["command"].dump() + "' but '" + command +
                                         "' was requested");
    }
    doc["command"] = command;
    parse_scenario(doc);  // validate before edits

    for (const auto& o : overrides) apply_override(doc, o);
    if (seed) {
        if (doc.contains("init_a") && doc["init_a"].value("kind", "") == "RandomGaussian") doc["init_a"]["seed"] = *seed;
        if (doc.contains("init_b") && doc["init_b"].value("kind", "") == "RandomGaussian") {
            doc["init_b"]["seed"] = *seed + 1;
        }
        if (doc.contains("chaos")) doc["chaos"]["perturb_seed"] = *seed + 2;
        if (doc.contains("collapse")) doc["collapse"]["seed"] = *seed;
    }
    return parse_scenario(doc);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Real-time lattice gauge dynamics and self-collapse estimates"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed_value = 0;
    std::vector<std::string> overrides;

    for (const auto& [cmd, name] : {std::pair{Command::Evolve, "evolve"}, std::pair{Command::Defect, "defect"},
                                    std::pair{Command::Scaling, "scaling"}, std::pair{Command::Spectrum, "spectrum"},
                                    std::pair{Command::ModeCoupling, "modecoupling"},
                                    std::pair{Command::Lyapunov, "lyapunov"}, std::pair{Command::Collapse, "collapse"},
                                    std::pair{Command::Table, "table"},
                                    std::pair{Command::Visibility, "visibility"}}) {
        (void)cmd;
        auto* sub = app.add_subcommand(name, std::string("run the ") + name + " analysis");
        sub->add_option("--config", config_path, "scenario file (JSON)")->required();
        sub->add_option("--out", out_path, "output path (overrides output.path)");
        sub->add_option("--format", format, "csv, json or bin")->check(CLI::IsMember({"csv", "json", "bin"}));
        sub->add_option("--seed", seed_value, "seed applied to every seeded block");
        sub->add_option("--override", overrides, "dotted key=value edit, re-validated")->take_all();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const bool seed_given = app.get_subcommands().front()->count("--seed") > 0;

    try {
        Scenario s = load_scenario(command, config_path, overrides,
                                   seed_given ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
        if (s.collapse && !s.collapse->presets_path.empty() &&
            std::filesystem::path(s.collapse->presets_path).is_relative()) {
            // Relative catalog paths are relative to the scenario file.
            s.collapse->presets_path =
                (std::filesystem::path(config_path).parent_path() / s.collapse->presets_path).string();
        }
        if (!out_path.empty()) s.output.path = out_path;
        if (!format.empty()) s.output.format = *parse_format(format);
        const RunResult r = run_scenario(s);
        out << r.summary << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericBlowup& e) {
        err << "numeric failure at step " << e.step() << ": " << e.what() << "\n";
        return kExitNumeric;
    } catch (const EnergyDriftAlarm& e) {
        err << "numeric failure at step " << e.step() << ": " << e.what() << "\n";
        return kExitNumeric;
    } catch (const DegeneratePerturbation& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const InconsistentEnergy& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace ymlab
