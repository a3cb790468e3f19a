#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcflow/boundary.hpp"
#include "mcflow/field.hpp"
#include "mcflow/flow_operator.hpp"

namespace mcflow {

// Bundle of the evolution data: forcing, boundary datum, initial data, and
// the structural declarations the estimate harness keys on.
struct FlowProblem {
    Forcing forcing;
    BoundaryDatum datum;
    Field initial;
    double m0 = 1.0;             // declared sup bound for |u|
    bool declared_fz_monotone = true;
    bool declared_psi_monotone = true;
};

struct SolverConfig {
    double cfl_sigma = 0.9;      // dt = sigma * h^2 / (2n)
    double final_time = 1.0;
    int snapshot_stride = 32;    // full-field dumps and convergence checks
    double osc_tol = 1e-4;
    double grad_tol = 1e-4;
    double interior_margin = 0.0;  // 0 selects mu0
    std::uint64_t seed = 1;
    bool reference_mode = true;  // single-worker deterministic mode
    bool override_compatibility = false;
    bool dump_all_snapshots = false;  // keep every stride field, not just ends
};

// Per-step scalar monitors; these form the trace CSV rows.
struct StepScalars {
    double t = 0.0;
    double osc = 0.0;
    double sup_du_global = 0.0;
    double sup_du_interior = 0.0;
    double sup_du_band = 0.0;
    double sup_ut = 0.0;
    double m_t = 0.0;
    double bdry_residual = 0.0;
};

// Monitor for the boundary behavior of u_t at steps where its signed max sits
// on a boundary-adjacent node: the discrete normal derivative there should
// stay >= -O(h). Reported, never asserted.
struct HopfMonitor {
    int events = 0;
    double min_normal_derivative = 0.0;
    double at_time = 0.0;
};

struct SolverTrace {
    double h = 0.0;
    double dt = 0.0;
    double mu0 = 0.0;
    double interior_margin = 0.0;
    std::vector<StepScalars> series;     // one entry per time step (incl. t=0)
    std::vector<Field> snapshots;        // initial + final (+ stride dumps if on)
    HopfMonitor hopf;
    bool converged = false;
    double final_mean = 0.0;
    double mean_drift_rate = 0.0;        // least-squares slope of mean(u) vs t

    void append(const StepScalars& s);   // enforces trace invariants
    const StepScalars& back() const { return series.back(); }
};

// CFL-admissible step size for the grid (Lambda = 1).
double cfl_dt(const Grid& g, double sigma);

// One forward Euler step: u_new = u + dt * L(u), ghosts re-enforced on the
// result. Throws InstabilityError (with the offending node) when a non-finite
// value appears, and ConfigError when dt exceeds the CFL bound.
std::pair<Field, GhostLayer> step(const Grid& g, const Field& u,
                                  const GhostLayer& ghosts,
                                  const Forcing& forcing,
                                  const BoundaryDatum& datum, double dt);

// Full run: compatibility gate, time loop with per-step monitors, snapshot
// recording, convergence detection (osc and gradient below tolerance on 10
// consecutive snapshot checks).
SolverTrace run(const Grid& g, const FlowProblem& problem,
                const SolverConfig& config);

// u_t as the instantaneous spatial operator value (not a difference
// quotient), so the time-derivative maximum principle is tested on the
// semi-discrete system.
Field u_t_field(const Grid& g, const Field& u, const GhostLayer& ghosts,
                const Forcing& forcing);

}  // namespace mcflow
