#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ymlab {

// Non-finite value produced while stepping; `step` is the 1-based step index.
class NumericBlowup : public std::runtime_error {
public:
    NumericBlowup(std::size_t step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// |H(t) - H(0)| / H(0) exceeded the configured threshold at an observation.
class EnergyDriftAlarm : public std::runtime_error {
public:
    EnergyDriftAlarm(std::size_t step, double drift, const std::string& what)
        : std::runtime_error(what), step_(step), drift_(drift) {}
    std::size_t step() const noexcept { return step_; }
    double drift() const noexcept { return drift_; }

private:
    std::size_t step_;
    double drift_;
};

// Fiducial and perturbed trajectories coincided exactly.
class DegeneratePerturbation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Energy bookkeeping produced a value that cannot be physical (e.g. E_NL < 0).
class InconsistentEnergy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message),
          field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ymlab
