#include "mcflow/field.hpp"

#include <cmath>
#include <limits>

#include "mcflow/errors.hpp"

namespace mcflow {

Field Field::zeros(const Grid& g, double t) {
    Field f;
    f.grid = &g;
    f.time = t;
    f.values.assign(g.size(), 0.0);
    return f;
}

Field Field::constant(const Grid& g, double value, double t) {
    Field f = zeros(g, t);
    for (int id : g.inside_nodes) f.values[id] = value;
    f.validate();
    return f;
}

Field Field::from_function(const Grid& g, const std::function<double(Vec2)>& fn,
                           double t) {
    Field f = zeros(g, t);
    for (int id : g.inside_nodes) f.values[id] = fn(g.position(id));
    f.validate();
    return f;
}

double Field::max_abs() const {
    double m = 0.0;
    for (int id : grid->inside_nodes) m = std::max(m, std::abs(values[id]));
    return m;
}

double Field::oscillation() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int id : grid->inside_nodes) {
        lo = std::min(lo, values[id]);
        hi = std::max(hi, values[id]);
    }
    return grid->inside_nodes.empty() ? 0.0 : hi - lo;
}

double Field::mean() const {
    double s = 0.0;
    for (int id : grid->inside_nodes) s += values[id];
    return grid->inside_nodes.empty() ? 0.0 : s / grid->inside_nodes.size();
}

void Field::validate() const {
    if (!grid) throw StateError("field has no grid");
    if (values.size() != grid->size()) throw StateError("field size mismatch");
    for (int id : grid->inside_nodes)
        if (!std::isfinite(values[id]))
            throw StateError("non-finite field value at node " + std::to_string(id));
}

GhostLayer GhostLayer::from_function(const Grid& g,
                                     const std::function<double(Vec2)>& f) {
    GhostLayer layer;
    layer.values.resize(g.ghosts.size());
    for (std::size_t k = 0; k < g.ghosts.size(); ++k)
        layer.values[k] = f(g.ghosts[k].pos);
    return layer;
}

}  // namespace mcflow
