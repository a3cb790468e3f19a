#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mcflow/errors.hpp"
#include "mcflow/interp.hpp"
#include "mcflow/vec.hpp"

namespace mcflow {

enum class DomainKind { Disk, Annulus, RoundedRectangle, Interval1D };

std::string to_string(DomainKind k);
DomainKind domain_kind_from_string(const std::string& s);

// Distance/normal data at a single point of the boundary collar.
struct NormalFrame {
    double d = 0.0;     // signed distance, positive inside
    Vec2 gamma;         // inward unit normal, gamma = D d
    Mat2 dgamma;        // D gamma
    Mat2 tangential;    // c^ij = delta_ij - gamma_i gamma_j
};

// A planar region with closed-form C^3 signed distance. Only shapes whose
// distance function (and hence gamma = Dd) is analytic near the boundary are
// supported; arbitrary polygons are rejected by construction.
struct Domain {
    DomainKind kind = DomainKind::Disk;
    Vec2 center{0.0, 0.0};
    double radius = 1.0;                       // disk
    double inner_radius = 0.5;                 // annulus
    double outer_radius = 1.0;                 // annulus
    double half_width = 1.0;                   // rounded rectangle
    double half_height = 1.0;                  // rounded rectangle
    double corner_radius = 0.25;               // rounded rectangle
    double x0 = 0.0, x1 = 1.0;                 // 1-D interval
    double band_width = 0.0;                   // mu0; 0 selects mu1/2

    static Domain disk(Vec2 c, double R, double mu0 = 0.0);
    static Domain annulus(Vec2 c, double r_in, double r_out, double mu0 = 0.0);
    static Domain rounded_rectangle(Vec2 c, double hw, double hh, double rho,
                                    double mu0 = 0.0);
    static Domain interval(double a, double b, double mu0 = 0.0);

    int dim() const { return kind == DomainKind::Interval1D ? 1 : 2; }

    // Radius within which the distance function stays C^3 (mu1).
    double smoothness_radius() const;
    // Band width mu0 actually in effect.
    double band() const;

    // Signed distance, positive inside, negative outside; analytic per piece.
    double signed_distance(Vec2 p) const;
    // Spec operation: distance for points in the closure only.
    double distance(Vec2 p) const;

    // gamma = D d and its Jacobian; valid on the two-sided collar |d| < mu1.
    Vec2 inward_normal(Vec2 p) const;
    Mat2 normal_jacobian(Vec2 p) const;

    // Spec operation: frame on the collar |d| < mu0, BandError outside.
    NormalFrame normal_frame(Vec2 p) const;
    // Unchecked variant for internal use at feet/ghosts.
    NormalFrame frame_unchecked(Vec2 p) const;

    // Closest boundary point (valid on the collar).
    Vec2 foot_point(Vec2 p) const;

    // Angle-like boundary parameter in [0, 2pi), used by Fourier data.
    double boundary_parameter(Vec2 foot) const;

    std::array<Vec2, 2> bounding_box() const;

    void validate() const;  // throws ConfigError on violated invariants
};

enum class NodeClass : std::uint8_t { Interior, Band, BoundaryAdjacent, Exterior };

// Precomputed boundary-condition stencil for one ghost node: a quadratic
// collocation along the normal line through the ghost's foot point. Sample
// offsets t0 = -delta (the ghost itself), t1, t2 measured along gamma from the
// foot. w are derivative-at-foot weights, so
//   w0*u(ghost) + w1*S1 + w2*S2  ~=  u_gamma(foot) + O(h^2).
struct GhostGeometry {
    int node = -1;
    Vec2 pos;
    Vec2 foot;
    Vec2 gamma;
    Mat2 tangential;
    double delta = 0.0;  // distance ghost-to-boundary, > 0
    double t1 = 0.0, t2 = 0.0;
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;
    Patch sample1;
    Patch sample2;
    Patch foot_patch;  // interior extrapolation of value/gradient to the foot
};

// Per boundary-adjacent node: the interior-only one-sided normal-derivative
// stencil at the node's foot point (cubic collocation on four samples along
// gamma). Used for compatibility checks and as the next-order residual probe;
// it never touches ghost values.
struct BoundaryNodeGeometry {
    int node = -1;
    Vec2 pos;
    Vec2 foot;
    Vec2 gamma;
    Mat2 tangential;
    double d = 0.0;  // node depth
    std::array<double, 4> sample_depth{};
    std::array<Patch, 4> samples{};
    std::array<double, 4> dw{};  // derivative-at-foot weights
    std::array<double, 4> vw{};  // value-at-foot weights (cubic extrapolation)
    Patch foot_patch;
};

// Uniform axis-aligned lattice over the domain's bounding box, with one node
// exactly at the domain center. Classification is deterministic given the
// domain and h.
struct Grid {
    Domain domain;
    double h = 0.0;
    Vec2 origin;
    int nx = 0, ny = 0;

    std::vector<NodeClass> node_class;
    std::vector<double> depth;      // signed distance per node
    std::vector<int> ghost_of_node; // lattice -> ghost index, -1 if none
    std::vector<GhostGeometry> ghosts;
    std::vector<BoundaryNodeGeometry> boundary_nodes;
    std::vector<int> inside_nodes;  // interior + band + boundary-adjacent
    std::vector<int> band_nodes;    // depth < mu0 (includes boundary-adjacent)

    int n_interior = 0, n_band = 0, n_badj = 0, n_exterior = 0;

    int index(int i, int j) const { return j * nx + i; }
    Vec2 position(int i, int j) const {
        return {origin.x + h * i, origin.y + h * j};
    }
    Vec2 position(int node) const { return position(node % nx, node / nx); }
    bool in_lattice(int i, int j) const {
        return i >= 0 && i < nx && j >= 0 && j < ny;
    }
    bool is_inside(int node) const {
        return node_class[node] != NodeClass::Exterior;
    }
    std::size_t size() const { return node_class.size(); }
};

// Spec operation classify_grid. Requires h < mu0/4 so the band is resolved;
// throws ResolutionError otherwise.
Grid build_grid(const Domain& domain, double h);

}  // namespace mcflow
