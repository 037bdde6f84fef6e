#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ymlab/analysis.hpp"
#include "ymlab/chaos.hpp"
#include "ymlab/collapse.hpp"
#include "ymlab/scenario.hpp"

namespace ymlab {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitNumeric = 3,
    kExitIo = 4,
};

struct RunResult {
    std::string summary;      // one line: command, key scalar, output path
    std::string output_path;  // empty when nothing was written
};

// Dispatches the scenario to its analysis and writes the output atomically.
// Throws ConfigError, NumericBlowup, EnergyDriftAlarm, DegeneratePerturbation,
// InconsistentEnergy or IoError.
RunResult run_scenario(const Scenario& s);

// `<binary> <command> --config <path> [--out <path>] [--format csv|json|bin]
//  [--seed <u64>] [--override key=value ...]`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Tabular emitters (CSV with a header row).
std::string trajectory_csv(const TrajectorySummary& t);
std::string defect_csv(const DefectSeries& d);
std::string scaling_csv(const DefectScaling& s);
std::string spectrum_csv(const ModeSpectrum& s);
std::string mode_coupling_csv(const ModeCouplingReport& r);
std::string lyapunov_csv(const LyapunovEstimate& l);
std::string coherence_csv(const CoherenceTable& t);

}  // namespace ymlab
