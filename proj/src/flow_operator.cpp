#include "mcflow/flow_operator.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mcflow/errors.hpp"

namespace mcflow {

Mat2 coefficient_matrix(Vec2 p) {
    const double v2 = 1.0 + p.norm2();
    return {1.0 - p.x * p.x / v2, -p.x * p.y / v2, 1.0 - p.y * p.y / v2};
}

bool Forcing::has_derivatives() const {
    if (is_zero()) return true;
    return static_cast<bool>(fx) && static_cast<bool>(fz) && static_cast<bool>(fp);
}

void Forcing::enable_fd_derivatives() {
    if (is_zero() || has_derivatives()) return;
    auto fn = f;
    fx = [fn](Vec2 x, double z, Vec2 p) {
        const double hx = 1e-6 * (1.0 + std::abs(x.x));
        const double hy = 1e-6 * (1.0 + std::abs(x.y));
        return Vec2{(fn({x.x + hx, x.y}, z, p) - fn({x.x - hx, x.y}, z, p)) / (2 * hx),
                    (fn({x.x, x.y + hy}, z, p) - fn({x.x, x.y - hy}, z, p)) / (2 * hy)};
    };
    fz = [fn](Vec2 x, double z, Vec2 p) {
        const double hz = 1e-6 * (1.0 + std::abs(z));
        return (fn(x, z + hz, p) - fn(x, z - hz, p)) / (2 * hz);
    };
    fp = [fn](Vec2 x, double z, Vec2 p) {
        const double hx = 1e-6 * (1.0 + std::abs(p.x));
        const double hy = 1e-6 * (1.0 + std::abs(p.y));
        return Vec2{(fn(x, z, {p.x + hx, p.y}) - fn(x, z, {p.x - hx, p.y})) / (2 * hx),
                    (fn(x, z, {p.x, p.y + hy}) - fn(x, z, {p.x, p.y - hy})) / (2 * hy)};
    };
}

Forcing Forcing::zero() {
    Forcing f;
    f.name = "zero";
    return f;
}

Forcing Forcing::linear_in_u(double c) {
    Forcing f;
    f.name = "linear-in-u";
    f.f = [c](Vec2, double z, Vec2 p) { return c * z * std::sqrt(1.0 + p.norm2()); };
    f.fx = [](Vec2, double, Vec2) { return Vec2{0.0, 0.0}; };
    f.fz = [c](Vec2, double, Vec2 p) { return c * std::sqrt(1.0 + p.norm2()); };
    f.fp = [c](Vec2, double z, Vec2 p) {
        const double v = std::sqrt(1.0 + p.norm2());
        return Vec2{c * z * p.x / v, c * z * p.y / v};
    };
    f.declared_z_monotone = c >= 0.0;
    f.declared_log_growth = true;
    return f;
}

Forcing Forcing::graph_forced(double a, double b) {
    Forcing f;
    f.name = "graph-forced";
    f.f = [a, b](Vec2, double z, Vec2 p) {
        return (a * z + b) * std::sqrt(1.0 + p.norm2());
    };
    f.fx = [](Vec2, double, Vec2) { return Vec2{0.0, 0.0}; };
    f.fz = [a](Vec2, double, Vec2 p) { return a * std::sqrt(1.0 + p.norm2()); };
    f.fp = [a, b](Vec2, double z, Vec2 p) {
        const double v = std::sqrt(1.0 + p.norm2());
        return Vec2{(a * z + b) * p.x / v, (a * z + b) * p.y / v};
    };
    f.declared_z_monotone = a >= 0.0;
    f.declared_log_growth = true;
    return f;
}

namespace {

// Full-lattice buffer with ghost slots filled; stencils index it directly.
void fill_work_buffer(const Grid& g, const Field& u, const GhostLayer& ghosts,
                      std::vector<double>& work) {
    if (ghosts.values.size() != g.ghosts.size())
        throw StateError("ghost layer missing or mismatched; enforce the boundary first");
    work = u.values;
    for (std::size_t k = 0; k < g.ghosts.size(); ++k)
        work[g.ghosts[k].node] = ghosts.values[k];
}

}  // namespace

Vec2 gradient(const Grid& g, const Field& u, const GhostLayer& ghosts, int node) {
    if (ghosts.values.size() != g.ghosts.size())
        throw StateError("ghost layer missing or mismatched; enforce the boundary first");
    auto val = [&](int id) {
        const int gid = g.ghost_of_node[id];
        return gid >= 0 ? ghosts.values[gid] : u.values[id];
    };
    const int i = node % g.nx, j = node / g.nx;
    Vec2 p;
    p.x = (val(g.index(i + 1, j)) - val(g.index(i - 1, j))) / (2.0 * g.h);
    if (g.ny > 1)
        p.y = (val(g.index(i, j + 1)) - val(g.index(i, j - 1))) / (2.0 * g.h);
    return p;
}

Vec2 gradient_one_sided(const Grid& g, const std::vector<double>& values, int node) {
    const int i = node % g.nx, j = node / g.nx;
    auto inside = [&](int ii, int jj) {
        return g.in_lattice(ii, jj) && g.is_inside(g.index(ii, jj));
    };
    auto axis = [&](int di, int dj) -> double {
        const bool plus = inside(i + di, j + dj);
        const bool minus = inside(i - di, j - dj);
        const double u0 = values[node];
        if (plus && minus)
            return (values[g.index(i + di, j + dj)] - values[g.index(i - di, j - dj)]) /
                   (2.0 * g.h);
        if (minus) {
            if (inside(i - 2 * di, j - 2 * dj))
                return (3.0 * u0 - 4.0 * values[g.index(i - di, j - dj)] +
                        values[g.index(i - 2 * di, j - 2 * dj)]) /
                       (2.0 * g.h);
            return (u0 - values[g.index(i - di, j - dj)]) / g.h;
        }
        if (plus) {
            if (inside(i + 2 * di, j + 2 * dj))
                return (-3.0 * u0 + 4.0 * values[g.index(i + di, j + dj)] -
                        values[g.index(i + 2 * di, j + 2 * dj)]) /
                       (2.0 * g.h);
            return (values[g.index(i + di, j + dj)] - u0) / g.h;
        }
        return 0.0;
    };
    Vec2 p;
    p.x = axis(1, 0);
    if (g.ny > 1) p.y = axis(0, 1);
    return p;
}

void apply_operator_into(const Grid& g, const Field& u, const GhostLayer& ghosts,
                         const Forcing& forcing, std::vector<double>& out) {
    static thread_local std::vector<double> work;
    fill_work_buffer(g, u, ghosts, work);
    out.assign(g.size(), 0.0);
    const double h2 = g.h * g.h;
    const bool one_d = g.ny == 1;
    const bool has_f = !forcing.is_zero();

    for (int id : g.inside_nodes) {
        const int i = id % g.nx, j = id / g.nx;
        const double c = work[id];
        const double xp = work[g.index(i + 1, j)];
        const double xm = work[g.index(i - 1, j)];
        Vec2 p{(xp - xm) / (2.0 * g.h), 0.0};
        const double uxx = (xp - 2.0 * c + xm) / h2;
        double uyy = 0.0, uxy = 0.0;
        if (!one_d) {
            const double yp = work[g.index(i, j + 1)];
            const double ym = work[g.index(i, j - 1)];
            p.y = (yp - ym) / (2.0 * g.h);
            uyy = (yp - 2.0 * c + ym) / h2;
            uxy = (work[g.index(i + 1, j + 1)] - work[g.index(i - 1, j + 1)] -
                   work[g.index(i + 1, j - 1)] + work[g.index(i - 1, j - 1)]) /
                  (4.0 * h2);
        }
        const Mat2 a = coefficient_matrix(p);
        double L = a.xx * uxx + 2.0 * a.xy * uxy + a.yy * uyy;
        if (has_f) L -= forcing.f(g.position(i, j), c, p);
        out[id] = L;
    }
}

Field apply_operator(const Grid& g, const Field& u, const GhostLayer& ghosts,
                     const Forcing& forcing) {
    Field r = Field::zeros(g, u.time);
    apply_operator_into(g, u, ghosts, forcing, r.values);
    return r;
}

StructuralReport check_structural(const Forcing& forcing, const Domain& domain,
                                  double m0, std::uint64_t seed) {
    StructuralReport rep;
    rep.z_monotone_declared = forcing.declared_z_monotone;
    rep.log_growth_declared = forcing.declared_log_growth;
    if (forcing.is_zero()) {
        rep.min_fz = 0.0;
        rep.z_monotone_pass = true;
        rep.p_magnitudes = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
        rep.growth_ratio.assign(6, 0.0);
        rep.ratio_decreasing = true;
        rep.ratio_vanishing = true;
        return rep;
    }
    if (!forcing.has_derivatives())
        throw ConfigError("forcing derivative evaluators missing; enable the fd fallback");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto bb = domain.bounding_box();
    auto sample_x = [&]() {
        for (int tries = 0; tries < 1000; ++tries) {
            Vec2 p{bb[0].x + (bb[1].x - bb[0].x) * unit(rng),
                   domain.dim() == 1 ? 0.0
                                     : bb[0].y + (bb[1].y - bb[0].y) * unit(rng)};
            if (domain.signed_distance(p) >= 0.0) return p;
        }
        return domain.center;
    };

    constexpr int kProbes = 200;
    rep.min_fz = std::numeric_limits<double>::infinity();
    rep.p_magnitudes = {1e1, 1e2, 1e3, 1e4, 1e5, 1e6};
    for (double mag : rep.p_magnitudes) {
        double worst = 0.0;
        for (int k = 0; k < kProbes; ++k) {
            const Vec2 x = sample_x();
            const double z = (2.0 * unit(rng) - 1.0) * m0;
            const double ang = 2.0 * 3.14159265358979323846 * unit(rng);
            const Vec2 p = domain.dim() == 1
                               ? Vec2{(unit(rng) < 0.5 ? -1.0 : 1.0) * mag, 0.0}
                               : Vec2{mag * std::cos(ang), mag * std::sin(ang)};
            const Vec2 gx = forcing.fx(x, z, p);
            const Vec2 gp = forcing.fp(x, z, p);
            const double fv = forcing.f(x, z, p);
            const double expr = gx.norm() / p.norm() + std::abs(gp.x) + std::abs(gp.y) +
                                std::abs(fv - gp.dot(p));
            worst = std::max(worst, expr);
            rep.min_fz = std::min(rep.min_fz, forcing.fz(x, z, p));
            // Also probe f_z at moderate gradients.
            const Vec2 small_p{(2.0 * unit(rng) - 1.0) * 5.0,
                               domain.dim() == 1 ? 0.0 : (2.0 * unit(rng) - 1.0) * 5.0};
            rep.min_fz = std::min(rep.min_fz, forcing.fz(x, z, small_p));
        }
        rep.growth_ratio.push_back(worst / std::log(mag));
    }
    rep.z_monotone_pass = rep.min_fz >= -1e-10;
    rep.ratio_decreasing = true;
    for (std::size_t k = 1; k < rep.growth_ratio.size(); ++k)
        if (rep.growth_ratio[k] > rep.growth_ratio[k - 1] * (1.0 + 1e-6) + 1e-12)
            rep.ratio_decreasing = false;
    const double first = rep.growth_ratio.front();
    const double last = rep.growth_ratio.back();
    rep.ratio_vanishing = first <= 1e-12 ? last <= 1e-12 : last < 0.5 * first;
    return rep;
}

}  // namespace mcflow
