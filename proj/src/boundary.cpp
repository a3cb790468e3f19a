#include "mcflow/boundary.hpp"

#include <cmath>
#include <limits>

#include "mcflow/errors.hpp"

namespace mcflow {

BoundaryDatum BoundaryDatum::zero() {
    BoundaryDatum d;
    d.name = "zero";
    d.psi = [](Vec2, double) { return 0.0; };
    d.psi_z = [](Vec2, double) { return 0.0; };
    d.bound_L = 0.0;
    return d;
}

BoundaryDatum BoundaryDatum::constant(double c) {
    BoundaryDatum d;
    d.name = "constant";
    d.psi = [c](Vec2, double) { return c; };
    d.psi_z = [](Vec2, double) { return 0.0; };
    d.bound_L = std::abs(c);
    return d;
}

BoundaryDatum BoundaryDatum::capillary(double c) {
    BoundaryDatum d;
    d.name = "capillary-like";
    d.psi = [c](Vec2, double z) { return c * z; };
    d.psi_z = [c](Vec2, double) { return c; };
    d.bound_L = std::abs(c);
    return d;
}

BoundaryDatum BoundaryDatum::contact_fourier(const Domain& domain, double a0,
                                             std::vector<double> cos_coeff,
                                             std::vector<double> sin_coeff,
                                             double phi0) {
    if (!(phi0 < 1.0) || phi0 < 0.0)
        throw DatumError("contact-angle bound phi0 must lie in [0, 1)");
    BoundaryDatum d;
    d.kind = Kind::ContactAngle;
    d.name = "contact-angle";
    d.phi0 = phi0;
    d.phi = [domain, a0, cos_coeff, sin_coeff](Vec2 x) {
        const double th = domain.boundary_parameter(domain.foot_point(x));
        double s = a0;
        for (std::size_t k = 0; k < cos_coeff.size(); ++k)
            s += cos_coeff[k] * std::cos((k + 1) * th);
        for (std::size_t k = 0; k < sin_coeff.size(); ++k)
            s += sin_coeff[k] * std::sin((k + 1) * th);
        return s;
    };
    return d;
}

double contact_normal_slope(double phi, double tangential_grad_sq) {
    if (!(std::abs(phi) < 1.0))
        throw DatumError("contact angle datum |phi| >= 1; the closed-form solve degenerates");
    return phi * std::sqrt((1.0 + tangential_grad_sq) / (1.0 - phi * phi));
}

double datum_target(const BoundaryDatum& datum, Vec2 foot, double u_foot,
                    double tangential_grad_sq) {
    if (datum.is_contact())
        return contact_normal_slope(datum.phi(foot), tangential_grad_sq);
    return datum.psi(foot, u_foot);
}

namespace {

// Target normal derivative for one ghost stencil; every ingredient comes from
// interior nodes, so the ghost solve stays a single linear pass.
double ghost_target(const GhostGeometry& gg, const BoundaryDatum& datum,
                    const std::vector<double>& values) {
    if (datum.is_contact()) {
        const Vec2 grad_f = gg.foot_patch.gradient(values);
        const Vec2 t = gg.tangential.apply(grad_f);
        return contact_normal_slope(datum.phi(gg.foot), t.norm2());
    }
    const double u_f = gg.foot_patch.value(values);
    return datum.psi(gg.foot, u_f);
}

}  // namespace

GhostLayer enforce(const Grid& g, const Field& u, const BoundaryDatum& datum) {
    GhostLayer layer;
    layer.values.resize(g.ghosts.size());
    for (std::size_t k = 0; k < g.ghosts.size(); ++k) {
        const GhostGeometry& gg = g.ghosts[k];
        const double s1 = gg.sample1.value(u.values);
        const double s2 = gg.sample2.value(u.values);
        const double tau = ghost_target(gg, datum, u.values);
        layer.values[k] = (tau - gg.w1 * s1 - gg.w2 * s2) / gg.w0;
    }
    return layer;
}

double boundary_flux_residual(const Grid& g, const Field& u,
                              const GhostLayer& ghosts,
                              const BoundaryDatum& datum) {
    if (ghosts.values.size() != g.ghosts.size())
        throw StateError("ghost layer missing or mismatched");
    double worst = 0.0;
    for (std::size_t k = 0; k < g.ghosts.size(); ++k) {
        const GhostGeometry& gg = g.ghosts[k];
        const double s1 = gg.sample1.value(u.values);
        const double s2 = gg.sample2.value(u.values);
        const double tau = ghost_target(gg, datum, u.values);
        const double r = gg.w0 * ghosts.values[k] + gg.w1 * s1 + gg.w2 * s2 - tau;
        worst = std::max(worst, std::abs(r));
    }
    return worst;
}

namespace {

struct FootProbe {
    double slope = 0.0;         // discrete u_gamma at the foot
    double u_foot = 0.0;        // cubic extrapolation of u to the foot
    double tangential_sq = 0.0; // |D'u|^2 at the foot
};

FootProbe probe_precomputed(const BoundaryNodeGeometry& bg,
                            const std::vector<double>& values) {
    FootProbe fp;
    for (int k = 0; k < 4; ++k) {
        const double s = bg.samples[k].value(values);
        fp.slope += bg.dw[k] * s;
        fp.u_foot += bg.vw[k] * s;
    }
    const Vec2 t = bg.tangential.apply(bg.foot_patch.gradient(values));
    fp.tangential_sq = t.norm2();
    return fp;
}

}  // namespace

double boundary_flux_residual_next_order(const Grid& g, const Field& u,
                                         const BoundaryDatum& datum) {
    double worst = 0.0;
    for (const auto& bg : g.boundary_nodes) {
        const FootProbe fp = probe_precomputed(bg, u.values);
        const double tau = datum_target(datum, bg.foot, fp.u_foot, fp.tangential_sq);
        worst = std::max(worst, std::abs(fp.slope - tau));
    }
    return worst;
}

CompatibilityReport check_compatibility(const Grid& g, const Field& u0,
                                        const BoundaryDatum& datum, double tol,
                                        double c2_bound) {
    CompatibilityReport rep;
    rep.tol = tol > 0.0 ? tol : 10.0 * g.h * g.h * (1.0 + c2_bound);
    for (const auto& bg : g.boundary_nodes) {
        const FootProbe fp = probe_precomputed(bg, u0.values);
        const double tau = datum_target(datum, bg.foot, fp.u_foot, fp.tangential_sq);
        const double r = std::abs(fp.slope - tau);
        if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst_node = bg.node;
        }
    }
    rep.pass = rep.max_residual <= rep.tol;
    return rep;
}

Field project_compatible(const Grid& g, const Field& u0,
                         const BoundaryDatum& datum) {
    const double mu0 = g.domain.band();
    // Odd in d with q(0)=0, q'(0)=1, compactly supported in the band; odd
    // parity keeps the foot-point collocation of the correction clean.
    auto q = [mu0](double d) {
        if (d <= 0.0 || d >= mu0) return 0.0;
        const double s = 1.0 - (d / mu0) * (d / mu0);
        return d * s * s * s;
    };

    LatticeView lat;
    lat.origin = g.origin;
    lat.h = g.h;
    lat.nx = g.nx;
    lat.ny = g.ny;
    lat.usable = [&g](int i, int j) {
        return g.node_class[g.index(i, j)] != NodeClass::Exterior;
    };

    // Lattice samples of the raw profile; beta is solved against the profile's
    // measured discrete slope at each foot, so the correction lands exactly on
    // the stencil the compatibility check uses.
    std::vector<double> qvals(g.size(), 0.0);
    for (int id : g.inside_nodes) qvals[id] = q(g.depth[id]);

    Field result = u0;
    // Two sweeps: the second absorbs the datum's dependence on the corrected
    // field (foot value for psi(x,u), tangential gradient for contact data).
    for (int sweep = 0; sweep < 2; ++sweep) {
        std::vector<double> correction(g.size(), 0.0);
        for (int id : g.band_nodes) {
            const double d = g.depth[id];
            const double qd = q(d);
            if (qd == 0.0 && d > 0.0) continue;
            const Vec2 pos = g.position(id);
            const Vec2 gamma_here = g.domain.inward_normal(pos);
            const Vec2 foot = pos - gamma_here * d;
            const NormalFrame ff = g.domain.frame_unchecked(foot);

            double pts[4], vw[4], dw[4];
            FootProbe fp;
            double q_slope = 0.0;
            for (int k = 0; k < 4; ++k) pts[k] = (k + 1) * g.h;
            collocation_at_zero(pts, 4, vw, dw);
            for (int k = 0; k < 4; ++k) {
                const Patch patch = make_patch(lat, foot + ff.gamma * pts[k], 4);
                const double s = patch.value(result.values);
                fp.slope += dw[k] * s;
                fp.u_foot += vw[k] * s;
                q_slope += dw[k] * patch.value(qvals);
            }
            const Patch foot_patch = make_patch(lat, foot, 3);
            const Vec2 t = ff.tangential.apply(foot_patch.gradient(result.values));
            fp.tangential_sq = t.norm2();

            const double tau = datum_target(datum, foot, fp.u_foot, fp.tangential_sq);
            if (std::abs(q_slope) < 0.1) continue;  // profile invisible here
            const double beta = (tau - fp.slope) / q_slope;
            correction[id] = beta * qd;
        }
        for (int id : g.band_nodes) result.values[id] += correction[id];
    }
    result.validate();
    return result;
}

DatumProbe probe_datum(const Grid& g, const BoundaryDatum& datum, double m0) {
    DatumProbe probe;
    probe.min_psi_z = std::numeric_limits<double>::infinity();
    constexpr int kZSamples = 21;
    for (const auto& bg : g.boundary_nodes) {
        if (datum.is_contact()) {
            probe.sup_abs = std::max(probe.sup_abs, std::abs(datum.phi(bg.foot)));
            probe.min_psi_z = std::min(probe.min_psi_z, 0.0);
            continue;
        }
        for (int k = 0; k < kZSamples; ++k) {
            const double z = -m0 + 2.0 * m0 * k / (kZSamples - 1);
            probe.sup_abs = std::max(probe.sup_abs, std::abs(datum.psi(bg.foot, z)));
            probe.min_psi_z = std::min(probe.min_psi_z, datum.psi_z(bg.foot, z));
        }
    }
    if (!std::isfinite(probe.min_psi_z)) probe.min_psi_z = 0.0;
    probe.psi_monotone = probe.min_psi_z >= -1e-12;
    return probe;
}

}  // namespace mcflow
