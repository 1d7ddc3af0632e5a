#pragma once

#include <iosfwd>

#include "cwlab/config.hpp"
#include "cwlab/scenarios.hpp"

namespace cwlab {

/// The full acceptance suite: every numbered criterion as one gated check,
/// backed by sub-scenario runs in subdirectories of cfg.out_dir. Prints one
/// pass/fail line per criterion to `lines` when given. A numerical abort
/// inside one criterion fails that criterion and the suite moves on.
RunReport run_full_acceptance(const ScenarioConfig& cfg, std::ostream* lines);

} // namespace cwlab
