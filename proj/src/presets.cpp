#include "mcflow/presets.hpp"

#include <cmath>

#include "mcflow/errors.hpp"
#include <json.hpp>

namespace mcflow {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Forcing make_forcing(const ForcingSpec& spec) {
    if (spec.preset == "zero") return Forcing::zero();
    if (spec.preset == "linear-in-u") {
        if (spec.c < 0.0)
            throw ConfigError("linear-in-u forcing requires c >= 0; use graph-forced "
                              "for sign experiments");
        return Forcing::linear_in_u(spec.c);
    }
    if (spec.preset == "graph-forced") return Forcing::graph_forced(spec.a, spec.b);
    throw ConfigError("unknown forcing preset: " + spec.preset);
}

BoundaryDatum make_datum(const BoundarySpec& spec, const Domain& domain) {
    BoundaryDatum d;
    if (spec.preset == "zero") {
        d = BoundaryDatum::zero();
    } else if (spec.preset == "constant") {
        d = BoundaryDatum::constant(spec.c);
    } else if (spec.preset == "capillary-like") {
        d = BoundaryDatum::capillary(spec.c);
    } else if (spec.preset == "contact-angle") {
        d = BoundaryDatum::contact_fourier(domain, spec.a0, spec.cos_coeff,
                                           spec.sin_coeff, spec.phi0);
    } else {
        throw ConfigError("unknown boundary preset: " + spec.preset);
    }
    if (spec.bound_L > 0.0) d.bound_L = spec.bound_L;
    return d;
}

namespace {

double smooth5(double s) { return s * s * s * (10.0 + s * (-15.0 + 6.0 * s)); }

}  // namespace

Field make_initial(const InitialSpec& spec, const Grid& grid,
                   const BoundaryDatum& datum) {
    const Domain& dom = grid.domain;
    const double mu0 = dom.band();
    Field u0 = Field::zeros(grid);

    if (spec.preset == "constant") {
        u0 = Field::constant(grid, spec.value);
    } else if (spec.preset == "plateau-bump") {
        u0 = Field::from_function(grid, [&](Vec2 p) {
            const double s = std::min(dom.signed_distance(p) / mu0, 1.0);
            return spec.amplitude * smooth5(std::max(s, 0.0));
        });
    } else if (spec.preset == "radial-bump") {
        if (dom.kind == DomainKind::Disk) {
            u0 = Field::from_function(grid, [&](Vec2 p) {
                const double r2 = (p - dom.center).norm2() / (dom.radius * dom.radius);
                const double s = 1.0 - r2;
                return spec.amplitude * s * s;
            });
        } else if (dom.kind == DomainKind::Annulus) {
            const double gap = dom.outer_radius - dom.inner_radius;
            const double norm = 16.0 / (gap * gap * gap * gap);
            u0 = Field::from_function(grid, [&](Vec2 p) {
                const double r = (p - dom.center).norm();
                const double a = r - dom.inner_radius;
                const double b = dom.outer_radius - r;
                return spec.amplitude * norm * a * a * b * b;
            });
        } else {
            throw ConfigError("radial-bump initial data requires a disk or annulus");
        }
    } else if (spec.preset == "cosine-1d") {
        if (dom.kind != DomainKind::Interval1D)
            throw ConfigError("cosine-1d initial data requires an interval domain");
        u0 = Field::from_function(grid, [&](Vec2 p) {
            return spec.epsilon * std::cos(kPi * (p.x - dom.x0) / (dom.x1 - dom.x0));
        });
    } else if (spec.preset == "ramp-x") {
        u0 = Field::from_function(grid,
                                  [&](Vec2 p) { return spec.slope * p.x; });
    } else if (spec.preset == "paraboloid") {
        u0 = Field::from_function(grid, [&](Vec2 p) {
            return spec.scale * 0.5 * (p - dom.center).norm2();
        });
    } else if (spec.preset == "sine-product") {
        u0 = Field::from_function(grid, [&](Vec2 p) {
            return spec.amplitude * std::sin(spec.freq_x * p.x + spec.phase) *
                   std::cos(spec.freq_y * p.y);
        });
    } else if (spec.preset == "contact-compatible") {
        if (!datum.is_contact())
            throw ConfigError("contact-compatible initial data requires a "
                              "contact-angle boundary preset");
        if (dom.kind != DomainKind::Disk)
            throw ConfigError("contact-compatible initial data requires a disk");
        u0 = Field::from_function(grid, [&](Vec2 p) {
            const double r2 = (p - dom.center).norm2() / (dom.radius * dom.radius);
            const double s = 1.0 - r2;
            double v = spec.amplitude * s * s;
            const double d = dom.signed_distance(p);
            if (d < mu0) {
                const double phi = datum.phi(p);
                const double beta = phi / std::sqrt(1.0 - phi * phi);
                const double w = 1.0 - (d / mu0) * (d / mu0);
                v += beta * d * w * w * w;
            }
            return v;
        });
    } else {
        throw ConfigError("unknown initial-data preset: " + spec.preset);
    }

    if (spec.project_compatible) u0 = project_compatible(grid, u0, datum);
    return u0;
}

// ---------------------------------------------------------------------------
// JSON round trip
// ---------------------------------------------------------------------------

using nlohmann::json;

namespace {

json domain_to_json(const Domain& d) {
    json j;
    j["kind"] = to_string(d.kind);
    j["center"] = {d.center.x, d.center.y};
    switch (d.kind) {
        case DomainKind::Disk:
            j["radius"] = d.radius;
            break;
        case DomainKind::Annulus:
            j["inner_radius"] = d.inner_radius;
            j["outer_radius"] = d.outer_radius;
            break;
        case DomainKind::RoundedRectangle:
            j["half_width"] = d.half_width;
            j["half_height"] = d.half_height;
            j["corner_radius"] = d.corner_radius;
            break;
        case DomainKind::Interval1D:
            j["x0"] = d.x0;
            j["x1"] = d.x1;
            break;
    }
    j["band_mu0"] = d.band_width;
    return j;
}

Domain domain_from_json(const json& j) {
    Domain d;
    d.kind = domain_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("center")) {
        d.center.x = j["center"].at(0).get<double>();
        d.center.y = j["center"].at(1).get<double>();
    }
    d.radius = j.value("radius", 1.0);
    d.inner_radius = j.value("inner_radius", 0.5);
    d.outer_radius = j.value("outer_radius", 1.0);
    d.half_width = j.value("half_width", 1.0);
    d.half_height = j.value("half_height", 1.0);
    d.corner_radius = j.value("corner_radius", 0.25);
    d.x0 = j.value("x0", 0.0);
    d.x1 = j.value("x1", 1.0);
    d.band_width = j.value("band_mu0", 0.0);
    if (d.kind == DomainKind::Interval1D) d.center = {0.5 * (d.x0 + d.x1), 0.0};
    d.validate();
    return d;
}

}  // namespace

std::string config_to_json(const RunConfig& c) {
    json j;
    j["schema"] = "mcflow-config v1";
    j["scenario"] = c.scenario;
    j["domain"] = domain_to_json(c.domain);
    j["grid"] = {{"h", c.h}};
    j["solver"] = {{"cfl_sigma", c.solver.cfl_sigma},
                   {"final_time", c.solver.final_time},
                   {"snapshot_stride", c.solver.snapshot_stride},
                   {"osc_tol", c.solver.osc_tol},
                   {"grad_tol", c.solver.grad_tol},
                   {"interior_margin", c.solver.interior_margin},
                   {"seed", c.solver.seed},
                   {"reference_mode", c.solver.reference_mode},
                   {"override_compatibility", c.solver.override_compatibility},
                   {"dump_all_snapshots", c.solver.dump_all_snapshots}};
    j["forcing"] = {{"preset", c.forcing.preset},
                    {"c", c.forcing.c},
                    {"a", c.forcing.a},
                    {"b", c.forcing.b}};
    j["boundary"] = {{"preset", c.boundary.preset},
                     {"c", c.boundary.c},
                     {"a0", c.boundary.a0},
                     {"cos", c.boundary.cos_coeff},
                     {"sin", c.boundary.sin_coeff},
                     {"phi0", c.boundary.phi0},
                     {"bound_L", c.boundary.bound_L}};
    j["initial"] = {{"preset", c.initial.preset},
                    {"value", c.initial.value},
                    {"amplitude", c.initial.amplitude},
                    {"epsilon", c.initial.epsilon},
                    {"slope", c.initial.slope},
                    {"scale", c.initial.scale},
                    {"freq_x", c.initial.freq_x},
                    {"freq_y", c.initial.freq_y},
                    {"phase", c.initial.phase},
                    {"project_compatible", c.initial.project_compatible}};
    j["m0"] = c.m0;
    j["harness"] = {{"ut_max_principle", c.harness.ut_max_principle},
                    {"mt_linear", c.harness.mt_linear},
                    {"band_gradient", c.harness.band_gradient},
                    {"interior_gradient", c.harness.interior_gradient},
                    {"auxiliary", c.harness.auxiliary},
                    {"case1", c.harness.case1},
                    {"c0", c.harness.c0}};
    j["output_dir"] = c.output_dir;
    return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw ConfigError("config parse error at line " + std::to_string(line) +
                          ": " + e.what());
    }
    try {
        RunConfig c;
        if (j.value("schema", "") != "mcflow-config v1")
            throw ConfigError("config schema must be 'mcflow-config v1'");
        c.scenario = j.value("scenario", "custom");
        c.domain = domain_from_json(j.at("domain"));
        c.h = j.at("grid").at("h").get<double>();
        const json& s = j.at("solver");
        c.solver.cfl_sigma = s.value("cfl_sigma", 0.9);
        c.solver.final_time = s.at("final_time").get<double>();
        c.solver.snapshot_stride = s.value("snapshot_stride", 32);
        c.solver.osc_tol = s.value("osc_tol", 1e-4);
        c.solver.grad_tol = s.value("grad_tol", 1e-4);
        c.solver.interior_margin = s.value("interior_margin", 0.0);
        c.solver.seed = s.value("seed", std::uint64_t{1});
        c.solver.reference_mode = s.value("reference_mode", true);
        c.solver.override_compatibility = s.value("override_compatibility", false);
        c.solver.dump_all_snapshots = s.value("dump_all_snapshots", false);
        if (j.contains("forcing")) {
            const json& f = j["forcing"];
            c.forcing.preset = f.value("preset", "zero");
            c.forcing.c = f.value("c", 0.0);
            c.forcing.a = f.value("a", 0.0);
            c.forcing.b = f.value("b", 0.0);
        }
        if (j.contains("boundary")) {
            const json& b = j["boundary"];
            c.boundary.preset = b.value("preset", "zero");
            c.boundary.c = b.value("c", 0.0);
            c.boundary.a0 = b.value("a0", 0.0);
            c.boundary.cos_coeff = b.value("cos", std::vector<double>{});
            c.boundary.sin_coeff = b.value("sin", std::vector<double>{});
            c.boundary.phi0 = b.value("phi0", 0.0);
            c.boundary.bound_L = b.value("bound_L", 1.0);
        }
        const json& i = j.at("initial");
        c.initial.preset = i.value("preset", "constant");
        c.initial.value = i.value("value", 0.0);
        c.initial.amplitude = i.value("amplitude", 0.0);
        c.initial.epsilon = i.value("epsilon", 1e-3);
        c.initial.slope = i.value("slope", 1.0);
        c.initial.scale = i.value("scale", 1.0);
        c.initial.freq_x = i.value("freq_x", 1.0);
        c.initial.freq_y = i.value("freq_y", 1.0);
        c.initial.phase = i.value("phase", 0.0);
        c.initial.project_compatible = i.value("project_compatible", false);
        c.m0 = j.at("m0").get<double>();
        if (j.contains("harness")) {
            const json& hj = j["harness"];
            c.harness.ut_max_principle = hj.value("ut_max_principle", true);
            c.harness.mt_linear = hj.value("mt_linear", true);
            c.harness.band_gradient = hj.value("band_gradient", true);
            c.harness.interior_gradient = hj.value("interior_gradient", true);
            c.harness.auxiliary = hj.value("auxiliary", true);
            c.harness.case1 = hj.value("case1", true);
            c.harness.c0 = hj.value("c0", -1.0);
        }
        c.output_dir = j.value("output_dir", "out");
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Scenario presets
// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
    return {"identity-smoke",     "huisken-disk",       "capillary-monotone",
            "contact-angle-disk", "contact-angle-drift", "heat-1d",
            "steep-interior",     "annulus-huisken",     "rrect-huisken"};
}

RunConfig preset_config(const std::string& name) {
    RunConfig c;
    c.scenario = name;
    c.output_dir = "out/" + name;
    if (name == "identity-smoke") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 0.1;
        c.solver.final_time = 0.05;
        c.solver.snapshot_stride = 8;
        c.initial = {.preset = "constant", .value = 0.3};
        c.m0 = 1.0;
        return c;
    }
    if (name == "huisken-disk") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 1.0 / 48.0;
        c.solver.final_time = 10.0;
        c.solver.snapshot_stride = 50;
        c.solver.osc_tol = 4e-3;
        c.solver.grad_tol = 8e-3;
        c.initial = {.preset = "radial-bump", .amplitude = 0.6};
        c.m0 = 1.0;
        return c;
    }
    if (name == "capillary-monotone") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 1.0 / 48.0;
        c.solver.final_time = 2.0;
        c.solver.snapshot_stride = 50;
        c.solver.osc_tol = 1e-8;
        c.solver.grad_tol = 1e-8;
        c.boundary.preset = "capillary-like";
        c.boundary.c = 0.5;
        c.initial = {.preset = "radial-bump", .amplitude = 0.6};
        c.m0 = 1.0;
        return c;
    }
    if (name == "contact-angle-disk") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 1.0 / 48.0;
        c.solver.final_time = 5.0;
        c.solver.snapshot_stride = 50;
        c.solver.osc_tol = 0.0;
        c.solver.grad_tol = 0.0;
        c.boundary.preset = "contact-angle";
        c.boundary.cos_coeff = {0.3};
        c.boundary.phi0 = 0.35;
        c.initial = {.preset = "contact-compatible", .amplitude = 0.3};
        c.m0 = 1.0;
        return c;
    }
    if (name == "contact-angle-drift") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 1.0 / 48.0;
        c.solver.final_time = 3.0;
        c.solver.snapshot_stride = 50;
        c.solver.osc_tol = 0.0;
        c.solver.grad_tol = 0.0;
        c.boundary.preset = "contact-angle";
        c.boundary.a0 = 0.25;
        c.boundary.cos_coeff = {0.3};
        c.boundary.phi0 = 0.6;
        c.initial = {.preset = "contact-compatible", .amplitude = 0.2};
        c.m0 = 1.5;
        return c;
    }
    if (name == "heat-1d") {
        c.domain = Domain::interval(0.0, 1.0);
        c.h = 1.0 / 64.0;
        c.solver.cfl_sigma = 0.5;
        c.solver.final_time = 0.25;
        c.solver.snapshot_stride = 16;
        c.solver.osc_tol = 0.0;
        c.solver.grad_tol = 0.0;
        c.initial = {.preset = "cosine-1d", .epsilon = 1e-3};
        c.m0 = 0.1;
        return c;
    }
    if (name == "steep-interior") {
        c.domain = Domain::disk({0.0, 0.0}, 1.0);
        c.h = 1.0 / 48.0;
        c.solver.final_time = 0.3;
        c.solver.snapshot_stride = 25;
        c.solver.osc_tol = 0.0;
        c.solver.grad_tol = 0.0;
        c.solver.interior_margin = 0.3;
        c.initial = {.preset = "radial-bump", .amplitude = 3.25};
        c.m0 = 3.5;
        return c;
    }
    if (name == "annulus-huisken") {
        c.domain = Domain::annulus({0.0, 0.0}, 0.5, 1.5);
        c.h = 0.03;
        c.solver.final_time = 2.0;
        c.solver.snapshot_stride = 40;
        c.solver.osc_tol = 2e-3;
        c.solver.grad_tol = 5e-3;
        c.initial = {.preset = "radial-bump", .amplitude = 0.4};
        c.m0 = 0.5;
        return c;
    }
    if (name == "rrect-huisken") {
        c.domain = Domain::rounded_rectangle({0.0, 0.0}, 1.2, 0.8, 0.4);
        c.h = 0.04;
        c.solver.final_time = 2.0;
        c.solver.snapshot_stride = 40;
        c.solver.osc_tol = 2e-3;
        c.solver.grad_tol = 5e-3;
        c.initial = {.preset = "sine-product",
                     .amplitude = 0.25,
                     .freq_x = 1.2,
                     .freq_y = 1.0,
                     .project_compatible = true};
        c.m0 = 0.8;
        return c;
    }
    throw ConfigError("unknown scenario preset: " + name);
}

std::string preset_description(const std::string& name) {
    if (name == "identity-smoke")
        return "constant initial data stays constant; immediate-convergence sanity check";
    if (name == "huisken-disk")
        return "zero forcing, zero Neumann datum on the unit disk; the flow settles "
               "to a constant (convergence-to-constant claim)";
    if (name == "capillary-monotone")
        return "capillary-like datum psi = 0.5 u; exercises the time-derivative "
               "maximum principle hypotheses (f_z >= 0, psi_u >= 0)";
    if (name == "contact-angle-disk")
        return "contact angle phi = 0.3 cos(theta); band gradient boundedness in "
               "the C2*exp(C3*M_T) form";
    if (name == "contact-angle-drift")
        return "contact angle with nonzero mean; oscillation settles while the "
               "mean drifts linearly (vertical translation behavior)";
    if (name == "heat-1d")
        return "small-amplitude 1-D run; oscillation decay matches the linear "
               "heat rate exp(-pi^2 t)";
    if (name == "steep-interior")
        return "steep compatible initial data; interior gradient stays finite "
               "(empirical M1)";
    if (name == "annulus-huisken")
        return "annulus geometry coverage; two boundary components, zero datum";
    if (name == "rrect-huisken")
        return "rounded-rectangle geometry coverage with zero datum";
    throw ConfigError("unknown scenario preset: " + name);
}

}  // namespace mcflow
