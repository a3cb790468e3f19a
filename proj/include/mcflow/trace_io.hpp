#pragma once

#include <string>
#include <vector>

#include "mcflow/estimates.hpp"
#include "mcflow/presets.hpp"
#include "mcflow/stepper.hpp"

namespace mcflow {

// Deterministic shortest-round-trip formatting for doubles; every artifact
// writes numbers through this so that replaying reproduces bytes exactly.
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);  // SchemaError if missing

// trace.csv: schema line, header, one row per time step.
std::string trace_csv_to_string(const SolverTrace& trace);
void read_trace_csv(const std::string& path, SolverTrace& trace);

// fields.txt: plain-text grid dumps of the recorded snapshots.
std::string fields_to_string(const SolverTrace& trace, const Grid& grid);
void read_fields(const std::string& path, const Grid& grid, SolverTrace& trace);

// manifest.json: config echo plus derived run data (structural reports,
// compatibility, convergence, monitors). Needed to replay a trace.
std::string manifest_to_string(const RunConfig& config, const Grid& grid,
                               const SolverTrace& trace,
                               const StructuralReport& structural,
                               const DatumProbe& datum_probe,
                               const CompatibilityReport& compat,
                               bool compat_overridden, double resolved_c0);

// Parses the manifest back into the pieces replay needs.
struct ManifestData {
    RunConfig config;
    double dt = 0.0;
    HopfMonitor hopf;
    bool converged = false;
    double final_mean = 0.0;
    double mean_drift_rate = 0.0;
    double resolved_c0 = 0.0;
    bool fz_monotone_declared = true;
    bool psi_monotone_declared = true;
};
ManifestData read_manifest(const std::string& path);

std::string report_to_string(const EstimateReport& report);
std::string summary_to_string(const EstimateReport& report,
                              const std::string& scenario);

}  // namespace mcflow
