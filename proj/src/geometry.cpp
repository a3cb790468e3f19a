#include "mcflow/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "mcflow/errors.hpp"

namespace mcflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::Disk: return "disk";
        case DomainKind::Annulus: return "annulus";
        case DomainKind::RoundedRectangle: return "rounded-rectangle";
        case DomainKind::Interval1D: return "interval-1d";
    }
    return "disk";
}

DomainKind domain_kind_from_string(const std::string& s) {
    if (s == "disk") return DomainKind::Disk;
    if (s == "annulus") return DomainKind::Annulus;
    if (s == "rounded-rectangle") return DomainKind::RoundedRectangle;
    if (s == "interval-1d") return DomainKind::Interval1D;
    throw ConfigError("unknown domain kind: " + s);
}

Domain Domain::disk(Vec2 c, double R, double mu0) {
    Domain d;
    d.kind = DomainKind::Disk;
    d.center = c;
    d.radius = R;
    d.band_width = mu0;
    d.validate();
    return d;
}

Domain Domain::annulus(Vec2 c, double r_in, double r_out, double mu0) {
    Domain d;
    d.kind = DomainKind::Annulus;
    d.center = c;
    d.inner_radius = r_in;
    d.outer_radius = r_out;
    d.band_width = mu0;
    d.validate();
    return d;
}

Domain Domain::rounded_rectangle(Vec2 c, double hw, double hh, double rho,
                                 double mu0) {
    Domain d;
    d.kind = DomainKind::RoundedRectangle;
    d.center = c;
    d.half_width = hw;
    d.half_height = hh;
    d.corner_radius = rho;
    d.band_width = mu0;
    d.validate();
    return d;
}

Domain Domain::interval(double a, double b, double mu0) {
    Domain d;
    d.kind = DomainKind::Interval1D;
    d.x0 = a;
    d.x1 = b;
    d.center = {0.5 * (a + b), 0.0};
    d.band_width = mu0;
    d.validate();
    return d;
}

double Domain::smoothness_radius() const {
    switch (kind) {
        case DomainKind::Disk: return radius;
        case DomainKind::Annulus: return 0.5 * (outer_radius - inner_radius);
        case DomainKind::RoundedRectangle: return corner_radius;
        case DomainKind::Interval1D: return 0.5 * (x1 - x0);
    }
    return radius;
}

double Domain::band() const {
    return band_width > 0.0 ? band_width : 0.5 * smoothness_radius();
}

void Domain::validate() const {
    switch (kind) {
        case DomainKind::Disk:
            if (!(radius > 0.0)) throw ConfigError("disk radius must be positive");
            break;
        case DomainKind::Annulus:
            if (!(inner_radius > 0.0) || !(outer_radius > inner_radius))
                throw ConfigError("annulus requires 0 < inner_radius < outer_radius");
            break;
        case DomainKind::RoundedRectangle:
            if (!(corner_radius > 0.0))
                throw ConfigError("rounded-rectangle corner radius must be positive");
            if (!(half_width > corner_radius) || !(half_height > corner_radius))
                throw ConfigError("rounded-rectangle half sides must exceed the corner radius");
            break;
        case DomainKind::Interval1D:
            if (!(x1 > x0)) throw ConfigError("interval requires x1 > x0");
            break;
    }
    if (band_width > 0.0 && band_width > 0.5 * smoothness_radius() + 1e-15)
        throw ConfigError("band width mu0 must satisfy mu0 <= mu1/2");
}

double Domain::signed_distance(Vec2 p) const {
    switch (kind) {
        case DomainKind::Disk:
            return radius - (p - center).norm();
        case DomainKind::Annulus: {
            const double r = (p - center).norm();
            return std::min(r - inner_radius, outer_radius - r);
        }
        case DomainKind::RoundedRectangle: {
            const double ax = std::abs(p.x - center.x);
            const double ay = std::abs(p.y - center.y);
            const double qx = ax - (half_width - corner_radius);
            const double qy = ay - (half_height - corner_radius);
            if (qx > 0.0 && qy > 0.0)
                return corner_radius - std::sqrt(qx * qx + qy * qy);
            if (qx >= qy) return half_width - ax;
            return half_height - ay;
        }
        case DomainKind::Interval1D:
            return std::min(p.x - x0, x1 - p.x);
    }
    return 0.0;
}

double Domain::distance(Vec2 p) const {
    const double sd = signed_distance(p);
    if (sd < 0.0) throw DomainError("point outside the closure of the domain");
    return sd;
}

Vec2 Domain::inward_normal(Vec2 p) const {
    switch (kind) {
        case DomainKind::Disk: {
            const Vec2 rel = p - center;
            const double r = rel.norm();
            if (r < 1e-14) throw BandError("inward normal undefined at the disk center");
            return rel * (-1.0 / r);
        }
        case DomainKind::Annulus: {
            const Vec2 rel = p - center;
            const double r = rel.norm();
            if (r < 1e-14) throw BandError("inward normal undefined at the annulus center");
            const double mid = 0.5 * (inner_radius + outer_radius);
            return rel * (r < mid ? 1.0 / r : -1.0 / r);
        }
        case DomainKind::RoundedRectangle: {
            const Vec2 rel = p - center;
            const double sx = rel.x < 0.0 ? -1.0 : 1.0;
            const double sy = rel.y < 0.0 ? -1.0 : 1.0;
            const double qx = std::abs(rel.x) - (half_width - corner_radius);
            const double qy = std::abs(rel.y) - (half_height - corner_radius);
            if (qx > 0.0 && qy > 0.0) {
                const double r = std::sqrt(qx * qx + qy * qy);
                if (r < 1e-14) throw BandError("inward normal undefined at a corner center");
                return {-sx * qx / r, -sy * qy / r};
            }
            if (qx >= qy) return {-sx, 0.0};
            return {0.0, -sy};
        }
        case DomainKind::Interval1D: {
            const double mid = 0.5 * (x0 + x1);
            return {p.x < mid ? 1.0 : -1.0, 0.0};
        }
    }
    return {1.0, 0.0};
}

namespace {

// D(-(u/|u|)) = -(I - uu^T/|u|^2)/|u|, the Jacobian of a unit radial field.
Mat2 radial_normal_jacobian(Vec2 u, double sign) {
    const double r = u.norm();
    const double nx = u.x / r, ny = u.y / r;
    Mat2 m{1.0 - nx * nx, -nx * ny, 1.0 - ny * ny};
    return m * (sign / r);
}

}  // namespace

Mat2 Domain::normal_jacobian(Vec2 p) const {
    switch (kind) {
        case DomainKind::Disk:
            return radial_normal_jacobian(p - center, -1.0);
        case DomainKind::Annulus: {
            const double r = (p - center).norm();
            const double mid = 0.5 * (inner_radius + outer_radius);
            return radial_normal_jacobian(p - center, r < mid ? 1.0 : -1.0);
        }
        case DomainKind::RoundedRectangle: {
            const Vec2 rel = p - center;
            const double sx = rel.x < 0.0 ? -1.0 : 1.0;
            const double sy = rel.y < 0.0 ? -1.0 : 1.0;
            const double qx = std::abs(rel.x) - (half_width - corner_radius);
            const double qy = std::abs(rel.y) - (half_height - corner_radius);
            if (qx > 0.0 && qy > 0.0) {
                // Distance field to the arc center; signs fold into the vector.
                const Vec2 u{sx * qx, sy * qy};
                return radial_normal_jacobian(u, -1.0);
            }
            return Mat2{0.0, 0.0, 0.0};
        }
        case DomainKind::Interval1D:
            return Mat2{0.0, 0.0, 0.0};
    }
    return Mat2{0.0, 0.0, 0.0};
}

NormalFrame Domain::frame_unchecked(Vec2 p) const {
    NormalFrame f;
    f.d = signed_distance(p);
    f.gamma = inward_normal(p);
    f.dgamma = normal_jacobian(p);
    f.tangential = Mat2{1.0 - f.gamma.x * f.gamma.x, -f.gamma.x * f.gamma.y,
                        1.0 - f.gamma.y * f.gamma.y};
    if (dim() == 1) f.tangential = Mat2{0.0, 0.0, 0.0};
    return f;
}

NormalFrame Domain::normal_frame(Vec2 p) const {
    const double sd = signed_distance(p);
    if (std::abs(sd) >= band())
        throw BandError("normal frame requested outside the boundary band");
    return frame_unchecked(p);
}

Vec2 Domain::foot_point(Vec2 p) const {
    const double sd = signed_distance(p);
    return p - inward_normal(p) * sd;
}

double Domain::boundary_parameter(Vec2 foot) const {
    if (kind == DomainKind::Interval1D)
        return std::abs(foot.x - x0) < std::abs(foot.x - x1) ? 0.0 : kPi;
    const Vec2 rel = foot - center;
    double a = std::atan2(rel.y, rel.x);
    if (a < 0.0) a += 2.0 * kPi;
    return a;
}

std::array<Vec2, 2> Domain::bounding_box() const {
    switch (kind) {
        case DomainKind::Disk:
            return {Vec2{center.x - radius, center.y - radius},
                    Vec2{center.x + radius, center.y + radius}};
        case DomainKind::Annulus:
            return {Vec2{center.x - outer_radius, center.y - outer_radius},
                    Vec2{center.x + outer_radius, center.y + outer_radius}};
        case DomainKind::RoundedRectangle:
            return {Vec2{center.x - half_width, center.y - half_height},
                    Vec2{center.x + half_width, center.y + half_height}};
        case DomainKind::Interval1D:
            return {Vec2{x0, 0.0}, Vec2{x1, 0.0}};
    }
    return {Vec2{}, Vec2{}};
}

Grid build_grid(const Domain& domain, double h) {
    domain.validate();
    if (!(h > 0.0)) throw ConfigError("grid spacing h must be positive");
    const double mu0 = domain.band();
    if (!(h < mu0 / 4.0))
        throw ResolutionError("grid spacing must satisfy h < mu0/4 to resolve the band");

    Grid g;
    g.domain = domain;
    g.h = h;

    const auto bb = domain.bounding_box();
    const bool one_d = domain.dim() == 1;
    const double pad = 2.0 * h;
    const int steps_xn = static_cast<int>(std::ceil((domain.center.x - bb[0].x + pad) / h));
    const int steps_xp = static_cast<int>(std::ceil((bb[1].x - domain.center.x + pad) / h));
    g.origin.x = domain.center.x - steps_xn * h;
    g.nx = steps_xn + steps_xp + 1;
    if (one_d) {
        g.origin.y = domain.center.y;
        g.ny = 1;
    } else {
        const int steps_yn = static_cast<int>(std::ceil((domain.center.y - bb[0].y + pad) / h));
        const int steps_yp = static_cast<int>(std::ceil((bb[1].y - domain.center.y + pad) / h));
        g.origin.y = domain.center.y - steps_yn * h;
        g.ny = steps_yn + steps_yp + 1;
    }

    const std::size_t n = static_cast<std::size_t>(g.nx) * g.ny;
    g.node_class.assign(n, NodeClass::Exterior);
    g.depth.assign(n, 0.0);
    g.ghost_of_node.assign(n, -1);

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.index(i, j);
            g.depth[id] = domain.signed_distance(g.position(i, j));
        }
    }

    auto exterior_at = [&](int i, int j) {
        if (!g.in_lattice(i, j)) return true;
        return g.depth[g.index(i, j)] < 0.0;
    };

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.index(i, j);
            if (g.depth[id] < 0.0) continue;  // exterior
            bool adj = exterior_at(i - 1, j) || exterior_at(i + 1, j);
            if (!one_d) adj = adj || exterior_at(i, j - 1) || exterior_at(i, j + 1);
            if (adj)
                g.node_class[id] = NodeClass::BoundaryAdjacent;
            else if (g.depth[id] < mu0)
                g.node_class[id] = NodeClass::Band;
            else
                g.node_class[id] = NodeClass::Interior;
        }
    }

    // Ghosts: exterior nodes in the 9-point neighborhood of any inside node.
    std::vector<int> ghost_nodes;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.index(i, j);
            if (g.node_class[id] != NodeClass::Exterior) continue;
            bool near_inside = false;
            for (int dj = -1; dj <= 1 && !near_inside; ++dj) {
                if (one_d && dj != 0) continue;
                for (int di = -1; di <= 1 && !near_inside; ++di) {
                    if (di == 0 && dj == 0) continue;
                    if (!g.in_lattice(i + di, j + dj)) continue;
                    if (g.node_class[g.index(i + di, j + dj)] != NodeClass::Exterior)
                        near_inside = true;
                }
            }
            if (near_inside) ghost_nodes.push_back(id);
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        switch (g.node_class[k]) {
            case NodeClass::Interior: ++g.n_interior; break;
            case NodeClass::Band: ++g.n_band; break;
            case NodeClass::BoundaryAdjacent: ++g.n_badj; break;
            case NodeClass::Exterior: ++g.n_exterior; break;
        }
        if (g.node_class[k] != NodeClass::Exterior) {
            g.inside_nodes.push_back(static_cast<int>(k));
            if (g.depth[k] < mu0) g.band_nodes.push_back(static_cast<int>(k));
        }
    }

    LatticeView lat;
    lat.origin = g.origin;
    lat.h = h;
    lat.nx = g.nx;
    lat.ny = g.ny;
    lat.usable = [&g](int i, int j) {
        return g.node_class[g.index(i, j)] != NodeClass::Exterior;
    };

    g.ghosts.reserve(ghost_nodes.size());
    for (int id : ghost_nodes) {
        GhostGeometry gg;
        gg.node = id;
        gg.pos = g.position(id);
        const double sd = g.depth[id];
        gg.delta = -sd;
        const Vec2 gamma_here = domain.inward_normal(gg.pos);
        gg.foot = gg.pos - gamma_here * sd;
        const NormalFrame ff = domain.frame_unchecked(gg.foot);
        gg.gamma = ff.gamma;
        gg.tangential = ff.tangential;

        // Quadratic collocation along the normal: ghost at -delta plus two
        // interior samples. The first sample sits at max(delta, h/2) so the
        // derivative weights stay O(1/h) even for grazing ghosts.
        const double a = std::max(gg.delta, 0.5 * h);
        gg.t1 = a;
        gg.t2 = a + h;
        const double pts[3] = {-gg.delta, gg.t1, gg.t2};
        double val[3], der[3];
        collocation_at_zero(pts, 3, val, der);
        gg.w0 = der[0];
        gg.w1 = der[1];
        gg.w2 = der[2];
        gg.sample1 = make_patch(lat, gg.foot + gg.gamma * gg.t1, 3);
        gg.sample2 = make_patch(lat, gg.foot + gg.gamma * gg.t2, 3);
        gg.foot_patch = make_patch(lat, gg.foot, 3);
        g.ghost_of_node[id] = static_cast<int>(g.ghosts.size());
        g.ghosts.push_back(std::move(gg));
    }

    // Interior-only one-sided stencils at the feet of boundary-adjacent nodes.
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int id = g.index(i, j);
            if (g.node_class[id] != NodeClass::BoundaryAdjacent) continue;
            BoundaryNodeGeometry bg;
            bg.node = id;
            bg.pos = g.position(i, j);
            bg.d = g.depth[id];
            const Vec2 gamma_here = domain.inward_normal(bg.pos);
            bg.foot = bg.pos - gamma_here * bg.d;
            const NormalFrame ff = domain.frame_unchecked(bg.foot);
            bg.gamma = ff.gamma;
            bg.tangential = ff.tangential;
            double pts[4];
            for (int k = 0; k < 4; ++k) {
                bg.sample_depth[k] = (k + 1) * h;
                pts[k] = bg.sample_depth[k];
                bg.samples[k] = make_patch(lat, bg.foot + bg.gamma * pts[k], 4);
            }
            double val[4], der[4];
            collocation_at_zero(pts, 4, val, der);
            for (int k = 0; k < 4; ++k) {
                bg.vw[k] = val[k];
                bg.dw[k] = der[k];
            }
            bg.foot_patch = make_patch(lat, bg.foot, 3);
            g.boundary_nodes.push_back(std::move(bg));
        }
    }

    return g;
}

}  // namespace mcflow
