#include "mcflow/estimates.hpp"

#include <cmath>
#include <limits>

#include "mcflow/errors.hpp"

namespace mcflow {

bool EstimateReport::all_required_pass() const {
    for (const auto& r : records)
        if (r.is_required_fail()) return false;
    return true;
}

EstimateRecord check_ut_maximum_principle(const SolverTrace& trace,
                                          bool hypotheses_declared) {
    EstimateRecord rec;
    rec.name = "ut-max-principle";
    rec.claim = "time-derivative maximum principle: sup|u_t|(t) <= sup|u_t|(0)";
    rec.recipe = "per-step sup of |spatial operator|; each value compared to the "
                 "t=0 value times (1 + 1e-4)";
    const double slack = 1e-4;
    rec.tolerances["relative_slack"] = slack;
    const double initial = trace.series.front().sup_ut;
    double worst_ratio = 0.0;
    bool ok = true;
    for (const auto& s : trace.series) {
        if (initial > 0.0) worst_ratio = std::max(worst_ratio, s.sup_ut / initial);
        if (s.sup_ut > initial * (1.0 + slack) + 1e-300) ok = false;
    }
    rec.measured["sup_ut_initial"] = initial;
    rec.measured["worst_ratio"] = worst_ratio;
    if (!hypotheses_declared) {
        rec.status = "advisory";
        rec.notes.push_back("monotonicity hypotheses (f_z >= 0 and psi_u >= 0) not "
                            "declared; violation is not an error");
        rec.measured["monotone"] = ok ? 1.0 : 0.0;
    } else {
        rec.status = ok ? "pass" : "fail";
    }
    return rec;
}

EstimateRecord check_mt_linear_bound(const SolverTrace& trace) {
    EstimateRecord rec;
    rec.name = "mt-linear-bound";
    rec.claim = "linear drift bound: M_T(t) <= C1 * t with C1 = sup|u_t|(0)";
    rec.recipe = "cumulative max|u - u0| per step compared to "
                 "(sup|u_t|(0) + 1e-4) * t";
    const double slack = 1e-4;
    rec.tolerances["absolute_slack"] = slack;
    const double c1_bound = trace.series.front().sup_ut + slack;
    bool ok = true;
    double c1_observed = 0.0;
    for (const auto& s : trace.series) {
        if (s.t <= 0.0) continue;
        c1_observed = std::max(c1_observed, s.m_t / s.t);
        if (s.m_t > c1_bound * s.t) ok = false;
    }
    rec.measured["sup_ut_initial"] = trace.series.front().sup_ut;
    rec.fitted["c1_observed"] = c1_observed;
    rec.status = ok ? "pass" : "fail";
    return rec;
}

namespace {

struct LinearFit {
    bool degenerate = true;
    double intercept = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit fit;
    const std::size_t n = x.size();
    if (n < 2) return fit;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) return fit;
    fit.degenerate = false;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < n; ++i)
        fit.max_residual = std::max(
            fit.max_residual, std::abs(y[i] - fit.intercept - fit.slope * x[i]));
    return fit;
}

}  // namespace

EstimateRecord check_band_gradient_bound(const SolverTrace& trace) {
    EstimateRecord rec;
    rec.name = "band-gradient-bound";
    rec.claim = "band gradient bound of the form |Du| <= C2 * exp(C3 * M_T) on "
                "the boundary band";
    rec.recipe = "per-step sup of |Du| over the band; no-blow-up gate at 10x the "
                 "initial value; least-squares fit of log sup|Du| against M_T";
    const double initial = trace.series.front().sup_du_band;
    double sup_all = 0.0;
    bool finite = true;
    std::vector<double> mt, logdu;
    for (const auto& s : trace.series) {
        sup_all = std::max(sup_all, s.sup_du_band);
        if (!std::isfinite(s.sup_du_band)) finite = false;
        if (s.sup_du_band > 0.0) {
            mt.push_back(s.m_t);
            logdu.push_back(std::log(s.sup_du_band));
        }
    }
    rec.measured["sup_band_du_initial"] = initial;
    rec.measured["sup_band_du_run"] = sup_all;
    rec.tolerances["blowup_factor"] = 10.0;
    const LinearFit fit = fit_line(mt, logdu);
    if (fit.degenerate) {
        rec.notes.push_back("fit degenerate (constant or empty gradient series)");
        rec.fitted["fit_degenerate"] = 1.0;
    } else {
        rec.fitted["c2"] = std::exp(fit.intercept);
        rec.fitted["c3"] = fit.slope;
        rec.fitted["fit_max_residual"] = fit.max_residual;
    }
    const bool ok = finite && sup_all <= 10.0 * initial + 1e-9;
    rec.status = ok ? "pass" : "fail";
    return rec;
}

EstimateRecord check_interior_gradient(const SolverTrace& trace) {
    EstimateRecord rec;
    rec.name = "interior-gradient";
    rec.claim = "interior gradient bound: sup over {d >= margin} x [0,T] of |Du| "
                "stays finite (empirical M1)";
    rec.recipe = "per-step sup of |Du| over nodes with depth >= margin; pass iff "
                 "finite and <= 10x the initial value";
    rec.tolerances["blowup_factor"] = 10.0;
    rec.measured["margin"] = trace.interior_margin;
    const double initial = trace.series.front().sup_du_interior;
    double sup_all = 0.0;
    bool finite = true;
    for (const auto& s : trace.series) {
        sup_all = std::max(sup_all, s.sup_du_interior);
        if (!std::isfinite(s.sup_du_interior)) finite = false;
    }
    rec.measured["sup_interior_du_initial"] = initial;
    rec.measured["m1_empirical"] = sup_all;
    rec.status = (finite && sup_all <= 10.0 * initial + 1e-9) ? "pass" : "fail";
    return rec;
}

AuxiliaryState evaluate_auxiliary(const Grid& g, const Field& u,
                                  const BoundaryDatum& datum, double m0,
                                  double c0) {
    if (datum.is_contact())
        throw ConfigError("auxiliary function is defined for Neumann-psi data only");
    if (m0 < u.max_abs())
        throw ConfigError("declared M0 is below sup|u|");

    AuxiliaryState aux;
    aux.m0 = m0;
    aux.c0 = c0;
    aux.alpha0 = probe_datum(g, datum, m0).sup_abs + c0 + 1.0;

    // w = u - psi(x, u) d on every inside node; gradients stay ghost-free.
    std::vector<double> w(g.size(), 0.0);
    for (int id : g.inside_nodes) {
        const double d = g.depth[id];
        w[id] = u.values[id] - datum.psi(g.position(id), u.values[id]) * d;
    }

    const double mu0 = g.domain.band();
    const double threshold = std::exp(1.0);
    double best = -std::numeric_limits<double>::infinity();
    for (int id : g.band_nodes) {
        aux.nodes.push_back(id);
        aux.w.push_back(w[id]);
        const double dw2 = gradient_one_sided(g, w, id).norm2();
        aux.dw_sq.push_back(dw2);
        const bool excl = !(dw2 > threshold);
        aux.excluded.push_back(excl);
        double phi = 0.0;
        if (!excl)
            phi = std::log(std::log(dw2)) + (1.0 + m0 + u.values[id]) +
                  aux.alpha0 * g.depth[id];
        aux.phi.push_back(phi);
        if (!excl && phi > best) {
            best = phi;
            aux.argmax_node = id;
        }
    }
    if (aux.argmax_node >= 0) {
        aux.argmax_phi = best;
        const double d = g.depth[aux.argmax_node];
        if (g.node_class[aux.argmax_node] == NodeClass::BoundaryAdjacent)
            aux.argmax_case = 1;
        else if (std::abs(d - mu0) <= g.h)
            aux.argmax_case = 2;
        else
            aux.argmax_case = 3;
    }
    return aux;
}

EstimateRecord record_auxiliary(const AuxiliaryState& aux) {
    EstimateRecord rec;
    rec.name = "aux-argmax-classification";
    rec.claim = "argmax of loglog|Dw|^2 + h(u) + g(d) over the band, classified "
                "boundary / inner-edge / band-interior";
    rec.recipe = "w = u - psi(x,u) d; nodes with |Dw|^2 <= e excluded; argmax "
                 "location classified by node class and |d - mu0| <= h";
    rec.status = "advisory";
    rec.measured["alpha0"] = aux.alpha0;
    rec.measured["c0"] = aux.c0;
    std::size_t excluded = 0;
    for (bool e : aux.excluded) excluded += e ? 1 : 0;
    rec.measured["band_nodes"] = static_cast<double>(aux.nodes.size());
    rec.measured["excluded_nodes"] = static_cast<double>(excluded);
    rec.measured["argmax_case"] = static_cast<double>(aux.argmax_case);
    if (aux.argmax_node >= 0) {
        rec.measured["argmax_phi"] = aux.argmax_phi;
        rec.measured["argmax_node"] = static_cast<double>(aux.argmax_node);
    } else {
        rec.notes.push_back("all band nodes below the loglog threshold; no argmax");
    }
    return rec;
}

EstimateRecord check_case1_bound(const Grid& g, const Field& u,
                                 const AuxiliaryState& aux,
                                 const BoundaryDatum& datum, double m0) {
    EstimateRecord rec;
    rec.name = "case1-boundary-bound";
    rec.claim = "boundary-argmax gradient bound |Du| <= sqrt(100 + 2 sup|psi|^2), "
                "with the boundary identity |Dw|^2 = |Du|^2 - psi^2";
    rec.recipe = "evaluated at the auxiliary argmax when it lies on a "
                 "boundary-adjacent node; identity residual measured over all "
                 "boundary-adjacent band nodes";
    if (aux.argmax_case != 1) {
        rec.status = "not-applicable";
        rec.notes.push_back("auxiliary argmax not on the boundary (case != 1)");
        return rec;
    }
    const double sup_psi = probe_datum(g, datum, m0).sup_abs;
    const double bound = std::sqrt(100.0 + 2.0 * sup_psi * sup_psi);
    const double du = gradient_one_sided(g, u.values, aux.argmax_node).norm();
    rec.measured["bound"] = bound;
    rec.measured["du_at_argmax"] = du;
    rec.measured["bound_satisfied"] = du <= bound ? 1.0 : 0.0;

    // Boundary identity at the feet: |Dw|^2 - (|Du|^2 - psi^2) = O(h).
    std::vector<double> w(g.size(), 0.0);
    for (int id : g.inside_nodes) {
        const double d = g.depth[id];
        w[id] = u.values[id] - datum.psi(g.position(id), u.values[id]) * d;
    }
    double worst = 0.0;
    for (const auto& bg : g.boundary_nodes) {
        const double dw2 = gradient_one_sided(g, w, bg.node).norm2();
        const double du2 = gradient_one_sided(g, u.values, bg.node).norm2();
        const double psi = datum.psi(g.position(bg.node), u.values[bg.node]);
        worst = std::max(worst, std::abs(dw2 - (du2 - psi * psi)));
    }
    rec.measured["boundary_identity_residual"] = worst;
    rec.status = "advisory";
    return rec;
}

double observed_sup_dgamma(const Grid& g) {
    double sup = 0.0;
    for (int id : g.band_nodes) {
        const Mat2 dg = g.domain.normal_jacobian(g.position(id));
        sup = std::max(sup, dg.max_abs());
    }
    return sup;
}

EstimateReport run_harness(const Grid& g, const SolverTrace& trace,
                           const FlowProblem& problem,
                           const HarnessConfig& config) {
    if (trace.series.empty()) throw StateError("empty trace");
    EstimateReport report;
    const bool hypotheses = problem.declared_fz_monotone && problem.declared_psi_monotone;

    if (config.ut_max_principle)
        report.records.push_back(check_ut_maximum_principle(trace, hypotheses));
    if (config.mt_linear)
        report.records.push_back(check_mt_linear_bound(trace));
    if (config.band_gradient)
        report.records.push_back(check_band_gradient_bound(trace));
    if (config.interior_gradient)
        report.records.push_back(check_interior_gradient(trace));

    if (config.auxiliary) {
        const double c0 = config.c0 < 0.0 ? observed_sup_dgamma(g) : config.c0;
        const Field& last = trace.snapshots.back();
        try {
            const AuxiliaryState aux =
                evaluate_auxiliary(g, last, problem.datum, problem.m0, c0);
            report.records.push_back(record_auxiliary(aux));
            if (config.case1)
                report.records.push_back(
                    check_case1_bound(g, last, aux, problem.datum, problem.m0));
        } catch (const ConfigError& e) {
            EstimateRecord rec;
            rec.name = "aux-argmax-classification";
            rec.claim = "argmax of loglog|Dw|^2 + h(u) + g(d) over the band";
            rec.status = "not-applicable";
            rec.notes.push_back(e.what());
            report.records.push_back(rec);
        }
    }

    EstimateRecord hopf;
    hopf.name = "hopf-boundary-monitor";
    hopf.claim = "at steps where the signed max of u_t sits on the boundary, its "
                 "discrete normal derivative stays >= -O(h)";
    hopf.recipe = "interior-only normal-derivative stencil applied to the u_t "
                  "field at the argmax node's foot; minimum over the run";
    hopf.status = "advisory";
    hopf.measured["events"] = static_cast<double>(trace.hopf.events);
    hopf.measured["min_normal_derivative"] = trace.hopf.min_normal_derivative;
    hopf.measured["at_time"] = trace.hopf.at_time;
    hopf.tolerances["order_h_scale"] = trace.h;
    report.records.push_back(hopf);

    return report;
}

}  // namespace mcflow
