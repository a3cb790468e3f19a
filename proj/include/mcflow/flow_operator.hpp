#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcflow/field.hpp"
#include "mcflow/geometry.hpp"

namespace mcflow {

// a^ij(p) = delta_ij - p_i p_j / (1 + |p|^2). Symmetric, eigenvalues in
// [1/(1+|p|^2), 1], identity at p = 0. Total in p.
Mat2 coefficient_matrix(Vec2 p);

// Forcing term f(x, z, p) with closed-form first derivatives. Presets carry
// exact derivatives; enable_fd_derivatives() installs a central-difference
// fallback (relative step 1e-6) for custom forcings.
struct Forcing {
    std::string name = "zero";
    std::function<double(Vec2, double, Vec2)> f;
    std::function<Vec2(Vec2, double, Vec2)> fx;   // gradient in x
    std::function<double(Vec2, double, Vec2)> fz;
    std::function<Vec2(Vec2, double, Vec2)> fp;   // gradient in p
    bool declared_z_monotone = true;   // f_z >= 0 declared
    bool declared_log_growth = true;   // sub-log growth declared

    bool is_zero() const { return !static_cast<bool>(f); }
    bool has_derivatives() const;
    void enable_fd_derivatives();

    double eval(Vec2 x, double z, Vec2 p) const { return f ? f(x, z, p) : 0.0; }

    static Forcing zero();
    // f = c * z * sqrt(1 + |p|^2)
    static Forcing linear_in_u(double c);
    // f = (a*z + b) * sqrt(1 + |p|^2)
    static Forcing graph_forced(double a, double b);
};

// Centered gradient using ghost values. All 9-stencil neighbors of an inside
// node are valued (inside or ghost), so no fallback is needed here.
Vec2 gradient(const Grid& g, const Field& u, const GhostLayer& ghosts, int node);

// Ghost-free gradient used by the monitoring/harness path: centered where
// both axis neighbors are inside, second-order one-sided otherwise. A pure
// function of the stored field, so replaying a trace reproduces it exactly.
Vec2 gradient_one_sided(const Grid& g, const std::vector<double>& values, int node);

// Spatial operator L(u) = sum_ij a^ij(Du) u_ij - f(x, u, Du) on every inside
// node. Throws StateError when the ghost layer is missing or mismatched.
void apply_operator_into(const Grid& g, const Field& u, const GhostLayer& ghosts,
                         const Forcing& forcing, std::vector<double>& out);
Field apply_operator(const Grid& g, const Field& u, const GhostLayer& ghosts,
                     const Forcing& forcing);

// Structural condition probe results. Sampling cannot decide an asymptotic
// bound, so the growth check is advisory by construction.
struct StructuralReport {
    bool z_monotone_declared = false;
    double min_fz = 0.0;           // over the probe set
    bool z_monotone_pass = false;  // min_fz >= -1e-10
    bool log_growth_declared = false;
    std::vector<double> p_magnitudes;   // {1e1 ... 1e6}
    std::vector<double> growth_ratio;   // max expression / log|p|
    bool ratio_decreasing = false;
    bool ratio_vanishing = false;  // last < half of first (or all ~ 0)
};

StructuralReport check_structural(const Forcing& forcing, const Domain& domain,
                                  double m0, std::uint64_t seed);

}  // namespace mcflow
