#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcflow/estimates.hpp"
#include "mcflow/stepper.hpp"

namespace mcflow {

struct ForcingSpec {
    std::string preset = "zero";  // zero | linear-in-u | graph-forced
    double c = 0.0;               // linear-in-u coefficient
    double a = 0.0, b = 0.0;      // graph-forced coefficients
};

struct BoundarySpec {
    std::string preset = "zero";  // zero | constant | capillary-like | contact-angle
    double c = 0.0;               // constant value or capillary coefficient
    double a0 = 0.0;              // contact-angle Fourier data
    std::vector<double> cos_coeff;
    std::vector<double> sin_coeff;
    double phi0 = 0.0;
    double bound_L = 1.0;
};

struct InitialSpec {
    // constant | plateau-bump | radial-bump | cosine-1d | ramp-x | paraboloid
    // | sine-product | contact-compatible
    std::string preset = "constant";
    double value = 0.0;
    double amplitude = 0.0;
    double epsilon = 1e-3;
    double slope = 1.0;
    double scale = 1.0;
    double freq_x = 1.0, freq_y = 1.0, phase = 0.0;
    bool project_compatible = false;
};

struct RunConfig {
    std::string scenario = "custom";
    Domain domain = Domain::disk({0.0, 0.0}, 1.0);
    double h = 0.05;
    SolverConfig solver;
    ForcingSpec forcing;
    BoundarySpec boundary;
    InitialSpec initial;
    double m0 = 1.0;
    HarnessConfig harness;
    std::string output_dir = "out";
};

Forcing make_forcing(const ForcingSpec& spec);
BoundaryDatum make_datum(const BoundarySpec& spec, const Domain& domain);
Field make_initial(const InitialSpec& spec, const Grid& grid,
                   const BoundaryDatum& datum);

// Scenario presets bundle a complete RunConfig; ConfigError for unknown names.
std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);
std::string preset_description(const std::string& name);

// Lossless JSON round trip for configs.
std::string config_to_json(const RunConfig& config);
RunConfig config_from_json(const std::string& text);  // throws ConfigError

}  // namespace mcflow
