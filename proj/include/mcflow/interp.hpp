#pragma once

#include <array>
#include <functional>

#include "mcflow/vec.hpp"

namespace mcflow {

// Lattice description decoupled from Grid so that patch construction can run
// while the grid is still being classified.
struct LatticeView {
    Vec2 origin;
    double h = 0.0;
    int nx = 0;
    int ny = 0;
    // True for nodes that carry solution values (interior/band/boundary-adjacent).
    std::function<bool(int i, int j)> usable;

    Vec2 position(int i, int j) const { return {origin.x + h * i, origin.y + h * j}; }
    int index(int i, int j) const { return j * nx + i; }
};

// Tensor-product Lagrange interpolation patch of m x m nodes (m x 1 on 1-D
// lattices). Weights evaluate the interpolant and its first derivatives at a
// fixed target point. The patch is chosen so that every node is usable; the
// target may lie outside the patch hull (extrapolation), which occurs for
// sample points close to the boundary.
struct Patch {
    int m = 0;  // nodes per axis actually used in x (my in y is 1 when ny == 1)
    int my = 0;
    std::array<int, 16> nodes{};     // lattice indices, x-fastest
    std::array<double, 16> w_value{};
    std::array<double, 16> w_gx{};
    std::array<double, 16> w_gy{};

    int count() const { return m * my; }

    template <typename Values>
    double value(const Values& v) const {
        double s = 0.0;
        for (int k = 0; k < count(); ++k) s += w_value[k] * v[nodes[k]];
        return s;
    }
    template <typename Values>
    Vec2 gradient(const Values& v) const {
        Vec2 g;
        for (int k = 0; k < count(); ++k) {
            g.x += w_gx[k] * v[nodes[k]];
            g.y += w_gy[k] * v[nodes[k]];
        }
        return g;
    }
};

// Builds an all-usable m x m patch near `target` and evaluates Lagrange
// weights there. Throws ResolutionError when no such patch exists within the
// search window (the lattice does not resolve the geometry).
Patch make_patch(const LatticeView& lat, Vec2 target, int m);

// One-dimensional Lagrange basis values and derivatives at coordinate `xi`
// (in node-index units) for `m` nodes at 0..m-1.
void lagrange_basis(int m, double xi, std::array<double, 4>& val,
                    std::array<double, 4>& der);

// Lagrange collocation weights for value and derivative at 0 given up to four
// sample offsets t[0..n).
void collocation_at_zero(const double* t, int n, double* val, double* der);

}  // namespace mcflow
