#include "mcflow/runner.hpp"

#include <filesystem>

#include "mcflow/errors.hpp"

namespace mcflow {

namespace fs = std::filesystem;

RunOutcome run_scenario(const RunConfig& config) {
    RunOutcome oc;
    oc.out_dir = config.output_dir;

    Domain domain = config.domain;
    domain.validate();
    const Grid grid = build_grid(domain, config.h);

    const Forcing forcing = make_forcing(config.forcing);
    const BoundaryDatum datum = make_datum(config.boundary, domain);
    const DatumProbe probe = probe_datum(grid, datum, config.m0);
    if (datum.is_contact()) {
        if (probe.sup_abs >= 1.0)
            throw DatumError("sampled sup|phi| >= 1; contact-angle datum invalid");
        if (datum.phi0 > 0.0 && probe.sup_abs > datum.phi0 + 1e-12)
            throw DatumError("sampled sup|phi| exceeds the declared bound phi0");
    } else if (datum.bound_L > 0.0 && probe.sup_abs > datum.bound_L + 1e-12) {
        throw DatumError("sampled sup|psi| exceeds the declared bound L");
    }

    const Field u0 = make_initial(config.initial, grid, datum);
    const StructuralReport structural =
        check_structural(forcing, domain, config.m0, config.solver.seed);

    FlowProblem problem;
    problem.forcing = forcing;
    problem.datum = datum;
    problem.initial = u0;
    problem.m0 = config.m0;
    problem.declared_fz_monotone =
        forcing.declared_z_monotone && structural.z_monotone_pass;
    problem.declared_psi_monotone = probe.psi_monotone;

    const CompatibilityReport compat = check_compatibility(grid, u0, datum);

    const SolverTrace trace = run(grid, problem, config.solver);

    EstimateReport report = run_harness(grid, trace, problem, config.harness);
    report.scenario = config.scenario;
    report.seed = config.solver.seed;

    const double resolved_c0 =
        config.harness.c0 < 0.0 ? observed_sup_dgamma(grid) : config.harness.c0;

    fs::create_directories(config.output_dir);
    const fs::path dir(config.output_dir);
    write_text_file((dir / "trace.csv").string(), trace_csv_to_string(trace));
    write_text_file((dir / "fields.txt").string(), fields_to_string(trace, grid));
    write_text_file((dir / "manifest.json").string(),
                    manifest_to_string(config, grid, trace, structural, probe,
                                       compat, config.solver.override_compatibility,
                                       resolved_c0));
    write_text_file((dir / "estimate_report.json").string(),
                    report_to_string(report));
    write_text_file((dir / "summary.txt").string(),
                    summary_to_string(report, config.scenario));

    oc.report = report;
    oc.converged = trace.converged;
    oc.exit_code = report.all_required_pass() ? kExitOk : kExitFailedChecks;
    oc.message = report.all_required_pass() ? "all required checks passed"
                                            : "one or more required checks failed";
    return oc;
}

RunOutcome run_scenario_guarded(const RunConfig& config) {
    RunOutcome oc;
    try {
        return run_scenario(config);
    } catch (const InstabilityError& e) {
        oc.exit_code = kExitInstability;
        oc.message = std::string("instability: ") + e.what() + " (node " +
                     std::to_string(e.node_index) + ", t=" +
                     std::to_string(e.time) + ")";
    } catch (const Error& e) {
        oc.exit_code = kExitConfig;
        oc.message = e.what();
    }
    return oc;
}

RunOutcome run_scenario_file(const std::string& config_path,
                             const std::optional<std::string>& out_override,
                             const std::optional<std::uint64_t>& seed_override,
                             bool override_compatibility, bool reference_mode) {
    RunOutcome oc;
    RunConfig config;
    try {
        config = config_from_json(read_text_file(config_path));
    } catch (const Error& e) {
        oc.exit_code = kExitConfig;
        oc.message = std::string(e.what()) + " [" + config_path + "]";
        return oc;
    }
    if (out_override) config.output_dir = *out_override;
    if (seed_override) config.solver.seed = *seed_override;
    if (override_compatibility) config.solver.override_compatibility = true;
    config.solver.reference_mode = reference_mode;
    return run_scenario_guarded(config);
}

ReplayOutcome replay_harness(const std::string& trace_path,
                             const std::string& report_path,
                             const std::optional<HarnessConfig>& toggles,
                             const std::string& recomputed_out_path) {
    ReplayOutcome oc;
    try {
        const fs::path dir = fs::path(trace_path).parent_path();
        const ManifestData m = read_manifest((dir / "manifest.json").string());

        Domain domain = m.config.domain;
        domain.validate();
        const Grid grid = build_grid(domain, m.config.h);

        SolverTrace trace;
        read_trace_csv(trace_path, trace);
        read_fields((dir / "fields.txt").string(), grid, trace);
        trace.h = grid.h;
        trace.dt = m.dt;
        trace.mu0 = domain.band();
        trace.interior_margin = m.config.solver.interior_margin > 0.0
                                    ? m.config.solver.interior_margin
                                    : trace.mu0;
        trace.hopf = m.hopf;
        trace.converged = m.converged;
        trace.final_mean = m.final_mean;
        trace.mean_drift_rate = m.mean_drift_rate;

        FlowProblem problem;
        problem.forcing = make_forcing(m.config.forcing);
        problem.datum = make_datum(m.config.boundary, domain);
        problem.initial = trace.snapshots.front();
        problem.m0 = m.config.m0;
        problem.declared_fz_monotone = m.fz_monotone_declared;
        problem.declared_psi_monotone = m.psi_monotone_declared;

        const HarnessConfig hc = toggles ? *toggles : m.config.harness;
        EstimateReport report = run_harness(grid, trace, problem, hc);
        report.scenario = m.config.scenario;
        report.seed = m.config.solver.seed;

        const std::string fresh = report_to_string(report);
        const std::string stored = read_text_file(report_path);
        oc.identical = fresh == stored;
        if (!recomputed_out_path.empty()) write_text_file(recomputed_out_path, fresh);
        oc.exit_code = report.all_required_pass() ? kExitOk : kExitFailedChecks;
        oc.message = oc.identical ? "recomputed report identical to the stored one"
                                  : "recomputed report differs from the stored one";
    } catch (const Error& e) {
        oc.exit_code = kExitConfig;
        oc.message = e.what();
    }
    return oc;
}

}  // namespace mcflow
