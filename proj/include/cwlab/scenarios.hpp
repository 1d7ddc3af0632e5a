#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cwlab/config.hpp"

namespace cwlab {

/// One verdict or measurement in a run report. Gated checks decide the exit
/// status; ungated ones only record a measured value. A vacuous pass means
/// the premise was empty (zero perturbation, no samples in a fit window).
struct Check {
    std::string name;
    bool gated = true;
    bool pass = true;
    bool vacuous = false;
    double measured = 0.0;
    double bound = 0.0;
    std::string note;
};

struct RunReport {
    std::string scenario;
    std::string version;
    std::vector<Check> checks;
    double wall_seconds = 0.0;

    bool overall() const;
    const Check* find(const std::string& name) const;
};

/// Execute the scenario and write series.csv, profile_final.csv and
/// report.txt into cfg.out_dir. The full-acceptance kind additionally prints
/// one pass/fail line per criterion to `criterion_lines` when given.
RunReport run_scenario(const ScenarioConfig& cfg, std::ostream* criterion_lines = nullptr);

/// Independent reruns of the base scenario with `axis` (a dotted config key)
/// set to each value in order, each in its own subdirectory; the merged
/// report keeps the given order. A delta0 axis over runs that report a
/// weighted-Poincare ratio gains a strict-monotonicity gate.
RunReport sweep(const ScenarioConfig& base, const std::string& axis,
                const std::vector<double>& values);

/// Shortest-width float text that round-trips a double exactly (%.17g).
std::string format17(double x);

/// Comma-separated table with a header row, every float printed to 17
/// significant digits (the shared format of series.csv files).
void write_series_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

/// Final-state table: x, gas state, profile, and their difference.
void write_profile_csv(const std::string& path, const Grid1D& g, const GasState& s,
                       const WaveProfile& p);

} // namespace cwlab
