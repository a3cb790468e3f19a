#pragma once

#include <functional>
#include <vector>

#include "mcflow/geometry.hpp"

namespace mcflow {

// Grid-sampled scalar function. Values are stored for the full lattice but
// are meaningful on non-exterior nodes only; exterior slots stay zero.
// Construction rejects NaN/Inf on inside nodes.
struct Field {
    const Grid* grid = nullptr;
    double time = 0.0;
    std::vector<double> values;

    static Field zeros(const Grid& g, double t = 0.0);
    static Field constant(const Grid& g, double value, double t = 0.0);
    static Field from_function(const Grid& g,
                               const std::function<double(Vec2)>& f,
                               double t = 0.0);

    double operator[](int node) const { return values[node]; }
    double& operator[](int node) { return values[node]; }

    double max_abs() const;                 // over inside nodes
    double oscillation() const;             // max - min over inside nodes
    double mean() const;                    // over inside nodes

    void validate() const;  // throws StateError on non-finite inside values
};

// Ghost values, one per grid ghost node. Kept separate from the Field: the
// boundary enforcement mutates only this layer.
struct GhostLayer {
    std::vector<double> values;

    bool empty() const { return values.empty(); }

    // Oracle helper: fill ghosts from a closed-form function (bypasses the
    // boundary condition entirely).
    static GhostLayer from_function(const Grid& g,
                                    const std::function<double(Vec2)>& f);
};

}  // namespace mcflow
