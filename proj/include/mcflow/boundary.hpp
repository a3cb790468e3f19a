#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mcflow/field.hpp"
#include "mcflow/geometry.hpp"

namespace mcflow {

// Boundary datum: either an oblique Neumann value u_gamma = psi(x, u) or a
// contact angle u_gamma = phi(x) * sqrt(1 + |Du|^2).
struct BoundaryDatum {
    enum class Kind { NeumannPsi, ContactAngle };

    Kind kind = Kind::NeumannPsi;
    std::string name = "zero";
    std::function<double(Vec2, double)> psi;    // psi(x, z)
    std::function<double(Vec2, double)> psi_z;
    std::function<double(Vec2)> phi;            // phi(x) via foot point
    double phi0 = 0.0;     // declared sup bound for |phi|, < 1
    double bound_L = 1.0;  // declared C^3-type bound for psi

    bool is_contact() const { return kind == Kind::ContactAngle; }

    static BoundaryDatum zero();
    static BoundaryDatum constant(double c);
    // psi = c * z with c >= 0
    static BoundaryDatum capillary(double c);
    // phi given as a truncated Fourier series in the boundary parameter
    static BoundaryDatum contact_fourier(const Domain& domain, double a0,
                                         std::vector<double> cos_coeff,
                                         std::vector<double> sin_coeff,
                                         double phi0);
};

// Closed-form resolution of u_gamma = phi * sqrt(1 + |D'u|^2 + u_gamma^2):
//   u_gamma = phi * sqrt((1 + |D'u|^2) / (1 - phi^2)).
// Throws DatumError when |phi| >= 1 (the solve degenerates).
double contact_normal_slope(double phi, double tangential_grad_sq);

// Target normal derivative at a foot point, given interior-extrapolated foot
// value and tangential gradient.
double datum_target(const BoundaryDatum& datum, Vec2 foot, double u_foot,
                    double tangential_grad_sq);

// Sets every ghost value so the quadratic normal-line collocation at the
// ghost's foot point equals the datum there. Single pass: the right-hand side
// uses interior nodes only, so the solve is exact and idempotent.
GhostLayer enforce(const Grid& g, const Field& u, const BoundaryDatum& datum);

// Sup-norm of the enforcement-stencil residual (~ machine precision right
// after enforce()).
double boundary_flux_residual(const Grid& g, const Field& u,
                              const GhostLayer& ghosts,
                              const BoundaryDatum& datum);

// Residual measured with the next-order (cubic, interior-only) stencil at the
// boundary-adjacent feet; decays O(h^2) under refinement for enforced fields.
double boundary_flux_residual_next_order(const Grid& g, const Field& u,
                                         const BoundaryDatum& datum);

struct CompatibilityReport {
    double max_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    int worst_node = -1;
};

// Initial-data compatibility: max over boundary feet of |discrete u_gamma -
// datum| using the interior-only stencil. Default tol = 10 h^2 (1 + c2_bound).
CompatibilityReport check_compatibility(const Grid& g, const Field& u0,
                                        const BoundaryDatum& datum,
                                        double tol = 0.0,
                                        double c2_bound = 1.0);

// Adds beta(foot(x)) * q(d(x)) with q(0) = 0, q'(0) = 1, supported in the
// band, where beta makes the discrete normal derivative match the datum.
// Two correction sweeps absorb the datum's dependence on the field itself.
Field project_compatible(const Grid& g, const Field& u0,
                         const BoundaryDatum& datum);

// Sampled datum statistics (deterministic probe set).
struct DatumProbe {
    double sup_abs = 0.0;   // sup |psi| (or sup |phi|) over the probe set
    double min_psi_z = 0.0; // min psi_u; 0 for contact data
    bool psi_monotone = false;
};
DatumProbe probe_datum(const Grid& g, const BoundaryDatum& datum, double m0);

}  // namespace mcflow
