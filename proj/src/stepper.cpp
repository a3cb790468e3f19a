#include "mcflow/stepper.hpp"

#include <cmath>
#include <limits>

#include "mcflow/errors.hpp"

namespace mcflow {

void SolverTrace::append(const StepScalars& s) {
    if (!series.empty() && !(s.t > series.back().t))
        throw StateError("trace time stamps must be strictly increasing");
    const double* vals = &s.t;
    for (int k = 0; k < 8; ++k)
        if (!std::isfinite(vals[k]))
            throw StateError("non-finite trace scalar recorded");
    series.push_back(s);
}

double cfl_dt(const Grid& g, double sigma) {
    return sigma * g.h * g.h / (2.0 * g.domain.dim());
}

std::pair<Field, GhostLayer> step(const Grid& g, const Field& u,
                                  const GhostLayer& ghosts,
                                  const Forcing& forcing,
                                  const BoundaryDatum& datum, double dt) {
    if (dt > cfl_dt(g, 1.0) * (1.0 + 1e-12))
        throw ConfigError("time step exceeds the parabolic stability bound h^2/(2n)");
    std::vector<double> L;
    apply_operator_into(g, u, ghosts, forcing, L);
    Field next = Field::zeros(g, u.time + dt);
    for (int id : g.inside_nodes) {
        const double v = u.values[id] + dt * L[id];
        if (!std::isfinite(v))
            throw InstabilityError("time step produced a non-finite value", id, u.time);
        next.values[id] = v;
    }
    GhostLayer gl = enforce(g, next, datum);
    return {std::move(next), std::move(gl)};
}

Field u_t_field(const Grid& g, const Field& u, const GhostLayer& ghosts,
                const Forcing& forcing) {
    return apply_operator(g, u, ghosts, forcing);
}

namespace {

struct GradientSups {
    double global = 0.0;
    double interior = 0.0;
    double band = 0.0;
};

GradientSups gradient_sups(const Grid& g, const std::vector<double>& values,
                           double margin) {
    GradientSups s;
    for (int id : g.inside_nodes) {
        const double mag = gradient_one_sided(g, values, id).norm();
        s.global = std::max(s.global, mag);
        if (g.depth[id] >= margin) s.interior = std::max(s.interior, mag);
        if (g.depth[id] < g.domain.band()) s.band = std::max(s.band, mag);
    }
    return s;
}

}  // namespace

SolverTrace run(const Grid& g, const FlowProblem& problem,
                const SolverConfig& config) {
    SolverTrace trace;
    trace.h = g.h;
    trace.mu0 = g.domain.band();
    trace.interior_margin =
        config.interior_margin > 0.0 ? config.interior_margin : trace.mu0;
    trace.dt = cfl_dt(g, config.cfl_sigma);
    if (!(config.final_time > 0.0)) throw ConfigError("final_time must be positive");
    if (config.snapshot_stride < 1) throw ConfigError("snapshot_stride must be >= 1");
    if (!(config.cfl_sigma > 0.0 && config.cfl_sigma <= 1.0))
        throw ConfigError("cfl_sigma must lie in (0, 1]");

    const CompatibilityReport compat =
        check_compatibility(g, problem.initial, problem.datum);
    if (!compat.pass && !config.override_compatibility)
        throw ConfigError("initial data violates the compatibility condition (residual " +
                          std::to_string(compat.max_residual) + " > tol " +
                          std::to_string(compat.tol) + "); pass the override to proceed");

    // Lookup for the boundary-node stencil used by the u_t monitor.
    std::vector<int> bg_of_node(g.size(), -1);
    for (std::size_t k = 0; k < g.boundary_nodes.size(); ++k)
        bg_of_node[g.boundary_nodes[k].node] = static_cast<int>(k);

    Field u = problem.initial;
    u.time = 0.0;
    GhostLayer ghosts = enforce(g, u, problem.datum);

    const std::vector<double> u0 = u.values;
    std::vector<double> L;
    std::vector<double> mean_series, mean_times;
    trace.hopf.min_normal_derivative = std::numeric_limits<double>::infinity();

    double m_t = 0.0;
    int consecutive_ok = 0;
    bool converged = false;

    const long max_steps =
        static_cast<long>(std::ceil(config.final_time / trace.dt - 1e-9));

    for (long k = 0;; ++k) {
        apply_operator_into(g, u, ghosts, problem.forcing, L);

        StepScalars s;
        s.t = u.time;
        s.osc = u.oscillation();
        double sup_ut = 0.0;
        int argmax_node = -1;
        double ut_max_signed = -std::numeric_limits<double>::infinity();
        double diff_max = 0.0;
        for (int id : g.inside_nodes) {
            sup_ut = std::max(sup_ut, std::abs(L[id]));
            if (L[id] > ut_max_signed) {
                ut_max_signed = L[id];
                argmax_node = id;
            }
            diff_max = std::max(diff_max, std::abs(u.values[id] - u0[id]));
        }
        m_t = std::max(m_t, diff_max);
        const GradientSups gs = gradient_sups(g, u.values, trace.interior_margin);
        s.sup_du_global = gs.global;
        s.sup_du_interior = gs.interior;
        s.sup_du_band = gs.band;
        s.sup_ut = sup_ut;
        s.m_t = m_t;
        s.bdry_residual = boundary_flux_residual(g, u, ghosts, problem.datum);
        trace.append(s);

        mean_series.push_back(u.mean());
        mean_times.push_back(u.time);

        // Boundary behavior of u_t where its signed max sits on the boundary.
        if (argmax_node >= 0 && ut_max_signed > 0.0 &&
            bg_of_node[argmax_node] >= 0) {
            const auto& bg = g.boundary_nodes[bg_of_node[argmax_node]];
            double slope = 0.0;
            for (int q = 0; q < 4; ++q) slope += bg.dw[q] * bg.samples[q].value(L);
            ++trace.hopf.events;
            if (slope < trace.hopf.min_normal_derivative) {
                trace.hopf.min_normal_derivative = slope;
                trace.hopf.at_time = u.time;
            }
        }

        const bool at_stride = (k % config.snapshot_stride) == 0;
        if (at_stride && config.dump_all_snapshots && k > 0)
            trace.snapshots.push_back(u);
        if (k == 0) trace.snapshots.push_back(u);

        // Convergence detector: both criteria on 10 consecutive stride checks.
        if (at_stride) {
            if (s.osc < config.osc_tol && s.sup_du_global < config.grad_tol)
                ++consecutive_ok;
            else
                consecutive_ok = 0;
        }
        const double scale = 1.0 + u.max_abs();
        if (k == 0 && s.osc <= 1e-15 * scale && s.sup_du_global <= 1e-14) {
            converged = true;  // identically constant data: nothing to evolve
            break;
        }
        if (consecutive_ok >= 10) {
            converged = true;
            break;
        }
        if (k >= max_steps) break;

        Field next = Field::zeros(g, u.time + trace.dt);
        for (int id : g.inside_nodes) {
            const double v = u.values[id] + trace.dt * L[id];
            if (!std::isfinite(v))
                throw InstabilityError("time step produced a non-finite value", id,
                                       u.time);
            next.values[id] = v;
        }
        u = std::move(next);
        ghosts = enforce(g, u, problem.datum);
    }

    if (trace.snapshots.empty() ||
        trace.snapshots.back().time != u.time)
        trace.snapshots.push_back(u);
    trace.converged = converged;
    trace.final_mean = u.mean();
    if (!std::isfinite(trace.hopf.min_normal_derivative))
        trace.hopf.min_normal_derivative = 0.0;

    // Least-squares slope of mean(u) over time (vertical translation rate).
    if (mean_times.size() >= 2 && mean_times.back() > 0.0) {
        double st = 0.0, sm = 0.0, stt = 0.0, stm = 0.0;
        const double n = static_cast<double>(mean_times.size());
        for (std::size_t i = 0; i < mean_times.size(); ++i) {
            st += mean_times[i];
            sm += mean_series[i];
            stt += mean_times[i] * mean_times[i];
            stm += mean_times[i] * mean_series[i];
        }
        const double denom = n * stt - st * st;
        trace.mean_drift_rate = denom > 0.0 ? (n * stm - st * sm) / denom : 0.0;
    }
    return trace;
}

}  // namespace mcflow
