#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mcflow/boundary.hpp"
#include "mcflow/stepper.hpp"

namespace mcflow {

// One verified estimate. `claim` is the stable identifier of the analytic
// statement being exercised; `recipe` says how the numbers were measured so
// the record can be reproduced from the same trace.
struct EstimateRecord {
    std::string name;
    std::string claim;
    std::string status;  // pass | fail | advisory | not-applicable | degenerate
    std::string recipe;
    std::map<std::string, double> measured;
    std::map<std::string, double> fitted;
    std::map<std::string, double> tolerances;
    std::vector<std::string> notes;

    bool is_required_fail() const { return status == "fail"; }
};

struct EstimateReport {
    std::string scenario;
    std::uint64_t seed = 0;
    std::vector<EstimateRecord> records;
    bool all_required_pass() const;
};

// sup|u_t|(t) <= sup|u_t|(0) * (1 + 1e-4) for all steps. Advisory when the
// monotonicity hypotheses (f_z >= 0 and psi_u >= 0) were not declared/met.
EstimateRecord check_ut_maximum_principle(const SolverTrace& trace,
                                          bool hypotheses_declared);

// M_T(t) <= (sup|u_t|(0) + 1e-4) * t at every step; reports C1 = sup M_T/t.
EstimateRecord check_mt_linear_bound(const SolverTrace& trace);

// Band gradient: no blow-up (<= 10x initial, finite) plus a least-squares fit
// of log sup_band|Du| <= log C2 + C3 * M_T with the max residual reported.
EstimateRecord check_band_gradient_bound(const SolverTrace& trace);

// Interior gradient: empirical sup over {d >= margin} x [0,T]; pass iff
// finite and <= 10x its initial value.
EstimateRecord check_interior_gradient(const SolverTrace& trace);

// Auxiliary test quantity on the band:
//   w = u - psi(x, u) d,  phi = loglog|Dw|^2 + h(u) + g(d),
//   h(u) = 1 + M0 + u,    g(d) = alpha0 d,
// with alpha0 = sup|psi| + C0 + 1. Nodes with |Dw|^2 <= e are excluded from
// the argmax (keeps loglog positive; the large-gradient regime is where the
// classification means something).
struct AuxiliaryState {
    double m0 = 0.0;
    double c0 = 0.0;
    double alpha0 = 0.0;
    std::vector<int> nodes;          // band nodes
    std::vector<double> w;
    std::vector<double> dw_sq;       // |Dw|^2
    std::vector<double> phi;         // valid where !excluded
    std::vector<bool> excluded;
    int argmax_node = -1;            // lattice index, -1 if all excluded
    double argmax_phi = 0.0;
    // Case 1: boundary-adjacent; Case 2: band inner edge |d - mu0| <= h;
    // Case 3: strict band interior.
    int argmax_case = 0;             // 0 = none
};

AuxiliaryState evaluate_auxiliary(const Grid& g, const Field& u,
                                  const BoundaryDatum& datum, double m0,
                                  double c0);

EstimateRecord record_auxiliary(const AuxiliaryState& aux);

// Case-1 boundary bound |Du|(argmax) <= sqrt(100 + 2 sup|psi|^2) plus the
// boundary identity |Dw|^2 = |Du|^2 - psi^2 checked at the feet. Advisory.
EstimateRecord check_case1_bound(const Grid& g, const Field& u,
                                 const AuxiliaryState& aux,
                                 const BoundaryDatum& datum, double m0);

// Harness toggles (all on by default).
struct HarnessConfig {
    bool ut_max_principle = true;
    bool mt_linear = true;
    bool band_gradient = true;
    bool interior_gradient = true;
    bool auxiliary = true;
    bool case1 = true;
    double c0 = -1.0;  // < 0 selects the observed sup|Dgamma| on the band
};

// Full harness over a finished trace: pure function of the stored data, so
// replaying a trace reproduces the report bit for bit.
EstimateReport run_harness(const Grid& g, const SolverTrace& trace,
                           const FlowProblem& problem,
                           const HarnessConfig& config);

// Observed sup|Dgamma| over band nodes (the default C0 and the empirical
// curvature constant of the domain).
double observed_sup_dgamma(const Grid& g);

}  // namespace mcflow
