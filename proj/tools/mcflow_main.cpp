#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mcflow/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"mcflow: graph mean curvature flow with Neumann/contact-angle "
                 "boundary data - solver and estimate verification harness"};
    app.require_subcommand(1);

    // run
    std::string config_arg;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool override_compat = false;
    bool reference_mode = true;
    auto* run_cmd = app.add_subcommand(
        "run", "solve a scenario from a config file (or preset:<name>) and run "
               "the estimate harness");
    run_cmd->add_option("config", config_arg,
                        "path to a JSON config, or preset:<name>")
        ->required();
    run_cmd->add_option("--out", out_dir, "output directory override");
    run_cmd->add_option("--seed", seed, "probe-set seed override")
        ->each([&](const std::string&) { seed_given = true; });
    run_cmd->add_flag("--override-compatibility", override_compat,
                      "proceed despite an incompatible initial datum (warns)");
    run_cmd->add_flag("--reference-mode,!--no-reference-mode", reference_mode,
                      "single-worker bitwise-deterministic mode (default on)");

    // presets
    auto* presets_cmd =
        app.add_subcommand("presets", "list scenario presets and what they exercise");

    // print-config
    std::string preset_name;
    auto* print_cmd = app.add_subcommand(
        "print-config", "print the JSON config of a scenario preset");
    print_cmd->add_option("name", preset_name, "preset name")->required();

    // replay
    std::string trace_path, report_path, replay_out;
    bool no_ut = false, no_mt = false, no_band = false, no_interior = false,
         no_aux = false, no_case1 = false;
    double c0 = -1.0;
    bool c0_given = false;
    auto* replay_cmd = app.add_subcommand(
        "replay", "recompute the estimate report from a stored trace and compare "
                  "it byte-for-byte");
    replay_cmd->add_option("trace", trace_path, "path to trace.csv")->required();
    replay_cmd->add_option("report", report_path, "path to the stored report")
        ->required();
    replay_cmd->add_option("--out", replay_out, "write the recomputed report here");
    replay_cmd->add_flag("--no-ut-max", no_ut, "disable the u_t check");
    replay_cmd->add_flag("--no-mt-linear", no_mt, "disable the drift bound check");
    replay_cmd->add_flag("--no-band-gradient", no_band, "disable the band check");
    replay_cmd->add_flag("--no-interior-gradient", no_interior,
                         "disable the interior check");
    replay_cmd->add_flag("--no-auxiliary", no_aux, "disable the auxiliary evaluator");
    replay_cmd->add_flag("--no-case1", no_case1, "disable the case-1 bound check");
    replay_cmd->add_option("--c0", c0, "override the C0 constant")
        ->each([&](const std::string&) { c0_given = true; });

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        std::optional<std::string> out;
        if (!out_dir.empty()) {
            out = out_dir;
        } else if (const char* env = std::getenv("MCFLOW_OUT")) {
            out = std::string(env);
        }
        std::optional<std::uint64_t> seed_opt;
        if (seed_given) seed_opt = seed;

        mcflow::RunOutcome oc;
        if (config_arg.rfind("preset:", 0) == 0) {
            try {
                mcflow::RunConfig c = mcflow::preset_config(config_arg.substr(7));
                if (out) c.output_dir = *out;
                if (seed_opt) c.solver.seed = *seed_opt;
                if (override_compat) c.solver.override_compatibility = true;
                c.solver.reference_mode = reference_mode;
                oc = mcflow::run_scenario_guarded(c);
            } catch (const mcflow::Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return mcflow::kExitConfig;
            }
        } else {
            oc = mcflow::run_scenario_file(config_arg, out, seed_opt,
                                           override_compat, reference_mode);
        }
        if (oc.exit_code == mcflow::kExitOk || oc.exit_code == mcflow::kExitFailedChecks)
            std::cout << oc.message << "\nartifacts: " << oc.out_dir << "\n";
        else
            std::cerr << "error: " << oc.message << "\n";
        return oc.exit_code;
    }

    if (presets_cmd->parsed()) {
        for (const auto& name : mcflow::preset_names())
            std::cout << name << "\n    " << mcflow::preset_description(name)
                      << "\n";
        return 0;
    }

    if (print_cmd->parsed()) {
        try {
            std::cout << mcflow::config_to_json(mcflow::preset_config(preset_name));
        } catch (const mcflow::Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return mcflow::kExitConfig;
        }
        return 0;
    }

    if (replay_cmd->parsed()) {
        std::optional<mcflow::HarnessConfig> toggles;
        if (no_ut || no_mt || no_band || no_interior || no_aux || no_case1 ||
            c0_given) {
            mcflow::HarnessConfig hc;
            hc.ut_max_principle = !no_ut;
            hc.mt_linear = !no_mt;
            hc.band_gradient = !no_band;
            hc.interior_gradient = !no_interior;
            hc.auxiliary = !no_aux;
            hc.case1 = !no_case1;
            if (c0_given) hc.c0 = c0;
            toggles = hc;
        }
        const mcflow::ReplayOutcome oc =
            mcflow::replay_harness(trace_path, report_path, toggles, replay_out);
        if (oc.exit_code == mcflow::kExitConfig)
            std::cerr << "error: " << oc.message << "\n";
        else
            std::cout << oc.message << "\n";
        return oc.exit_code;
    }

    return 0;
}
