#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cwlab/params.hpp"
#include "cwlab/solver.hpp"

namespace cwlab {

enum class ScenarioKind {
    WaveDecay,      // decay laws of the profile + kernel comparison
    OracleCheck,    // linear diffusion run against the half-line kernel
    KappaSweep,     // inviscid limit along a kappa ladder
    Stability,      // coupled run with perturbed initial data
    BoundaryOde,    // boundary relaxation against the exact exponential
    FullAcceptance, // orchestrates every acceptance criterion
};

const char* scenario_name(ScenarioKind kind);
// Throws config_error for names outside the six kinds.
ScenarioKind scenario_from_name(const std::string& name);

// Fully resolved run description: defaults for the scenario kind, overlaid
// with the config file and then any command-line overrides.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::Stability;
    GasParams gas;
    WaveParams wave;

    double grid_length = 0.0;
    int grid_n = 0;

    double horizon = 0.0;
    std::vector<double> snapshot_times; // sorted, starts at 0, ends at horizon
    StepControl ctl;
    double dt0 = 0.0; // profile solver step; 0 means "one grid spacing"

    PerturbationSpec pert;
    std::vector<double> kappa_values; // kappa-sweep ladder, given order kept

    // fit windows (log-log) for decay slopes and cumulative growth exponents
    double decay_fit_lo = 10.0, decay_fit_hi = 100.0;
    double growth_fit_lo = 1.0, growth_fit_hi = 100.0;

    std::string out_dir;
    std::uint64_t seed = 0;

    // every key after resolution, for the report echo (sorted by key)
    std::map<std::string, std::string> resolved;
};

// Scenario defaults as schema key -> value text, the same shape a config
// file produces, so file and override values merge uniformly.
std::map<std::string, std::string> scenario_default_map(ScenarioKind kind);

// Parse a flat-section key = value file. Unknown keys and sections, type
// mismatches, and constraint violations all raise config_error naming the
// offending line. `overrides` entries look like "run.T=5" and win over the
// file; an empty path means defaults + overrides only.
ScenarioConfig parse_config(ScenarioKind kind, const std::string& path,
                            const std::vector<std::string>& overrides = {});

// All schema keys in deterministic order (used for CLI flag registration).
std::vector<std::string> schema_keys();

} // namespace cwlab
