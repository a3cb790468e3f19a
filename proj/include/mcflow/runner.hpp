#pragma once

#include <optional>
#include <string>

#include "mcflow/presets.hpp"
#include "mcflow/trace_io.hpp"

namespace mcflow {

// Exit codes shared by the library runner and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailedChecks = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInstability = 3;

struct RunOutcome {
    int exit_code = kExitOk;
    std::string message;
    std::string out_dir;
    EstimateReport report;
    bool converged = false;
};

// Solve + harness + artifact writing. Artifacts: manifest.json, trace.csv,
// fields.txt, estimate_report.json, summary.txt under config.output_dir.
// Throws on configuration/datum/instability errors.
RunOutcome run_scenario(const RunConfig& config);

// Same, with exceptions mapped onto exit codes (2 = config, 3 = instability).
RunOutcome run_scenario_guarded(const RunConfig& config);

// Reads a config file (JSON) and runs it; maps errors to exit codes.
RunOutcome run_scenario_file(const std::string& config_path,
                             const std::optional<std::string>& out_override,
                             const std::optional<std::uint64_t>& seed_override,
                             bool override_compatibility, bool reference_mode);

struct ReplayOutcome {
    int exit_code = kExitOk;
    bool identical = false;
    std::string message;
};

// Recomputes the estimate report from a stored trace (no re-solve) and
// compares it byte-for-byte against the stored report. Optional toggle
// overrides produce a differing report on purpose; the exit code then follows
// the new result.
ReplayOutcome replay_harness(const std::string& trace_path,
                             const std::string& report_path,
                             const std::optional<HarnessConfig>& toggles,
                             const std::string& recomputed_out_path);

}  // namespace mcflow
