#include "mcflow/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mcflow/errors.hpp"
#include <json.hpp>

namespace mcflow {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StateError("cannot open for writing: " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

constexpr const char* kTraceSchema = "# mcflow-trace v1";
constexpr const char* kFieldsSchema = "# mcflow-fields v1";
constexpr const char* kHeader =
    "t,osc,sup_du_global,sup_du_interior,sup_du_band,sup_ut,m_t,bdry_residual";

double parse_double(const std::string& tok) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
        throw SchemaError("malformed number in trace: '" + tok + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::string trace_csv_to_string(const SolverTrace& trace) {
    std::string out;
    out += kTraceSchema;
    out += "\n";
    out += kHeader;
    out += "\n";
    for (const auto& s : trace.series) {
        out += format_double(s.t);
        out += ",";
        out += format_double(s.osc);
        out += ",";
        out += format_double(s.sup_du_global);
        out += ",";
        out += format_double(s.sup_du_interior);
        out += ",";
        out += format_double(s.sup_du_band);
        out += ",";
        out += format_double(s.sup_ut);
        out += ",";
        out += format_double(s.m_t);
        out += ",";
        out += format_double(s.bdry_residual);
        out += "\n";
    }
    return out;
}

void read_trace_csv(const std::string& path, SolverTrace& trace) {
    const std::string text = read_text_file(path);
    if (text.empty() || text.back() != '\n')
        throw SchemaError("trace file truncated: " + path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTraceSchema)
        throw SchemaError("trace schema mismatch in " + path);
    if (!std::getline(in, line) || line != kHeader)
        throw SchemaError("trace header mismatch in " + path);
    trace.series.clear();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto toks = split(line, ',');
        if (toks.size() != 8) throw SchemaError("trace row has wrong arity");
        StepScalars s;
        s.t = parse_double(toks[0]);
        s.osc = parse_double(toks[1]);
        s.sup_du_global = parse_double(toks[2]);
        s.sup_du_interior = parse_double(toks[3]);
        s.sup_du_band = parse_double(toks[4]);
        s.sup_ut = parse_double(toks[5]);
        s.m_t = parse_double(toks[6]);
        s.bdry_residual = parse_double(toks[7]);
        trace.series.push_back(s);
    }
    if (trace.series.empty()) throw SchemaError("trace has no rows");
}

std::string fields_to_string(const SolverTrace& trace, const Grid& grid) {
    std::string out;
    out += kFieldsSchema;
    out += "\n";
    for (const auto& f : trace.snapshots) {
        out += "field t=" + format_double(f.time) + " nx=" + std::to_string(grid.nx) +
               " ny=" + std::to_string(grid.ny) + " h=" + format_double(grid.h) + "\n";
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                if (i) out += " ";
                out += format_double(f.values[grid.index(i, j)]);
            }
            out += "\n";
        }
    }
    return out;
}

void read_fields(const std::string& path, const Grid& grid, SolverTrace& trace) {
    const std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kFieldsSchema)
        throw SchemaError("fields schema mismatch in " + path);
    trace.snapshots.clear();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t = 0.0;
        int nx = 0, ny = 0;
        double h = 0.0;
        if (std::sscanf(line.c_str(), "field t=%lf nx=%d ny=%d h=%lf", &t, &nx,
                        &ny, &h) != 4)
            throw SchemaError("malformed field header: " + line);
        if (nx != grid.nx || ny != grid.ny)
            throw SchemaError("field dimensions do not match the grid");
        Field f = Field::zeros(grid, t);
        for (int j = 0; j < ny; ++j) {
            if (!std::getline(in, line)) throw SchemaError("fields file truncated");
            const auto toks = split(line, ' ');
            if (static_cast<int>(toks.size()) != nx)
                throw SchemaError("field row has wrong arity");
            for (int i = 0; i < nx; ++i)
                f.values[grid.index(i, j)] = parse_double(toks[i]);
        }
        f.validate();
        trace.snapshots.push_back(std::move(f));
    }
    if (trace.snapshots.empty()) throw SchemaError("fields file has no snapshots");
}

namespace {

json record_to_json(const EstimateRecord& r) {
    json j;
    j["name"] = r.name;
    j["claim"] = r.claim;
    j["status"] = r.status;
    j["recipe"] = r.recipe;
    j["measured"] = r.measured;
    j["fitted"] = r.fitted;
    j["tolerances"] = r.tolerances;
    j["notes"] = r.notes;
    return j;
}

}  // namespace

std::string report_to_string(const EstimateReport& report) {
    json j;
    j["schema"] = "mcflow-report v1";
    j["scenario"] = report.scenario;
    j["seed"] = report.seed;
    json records = json::array();
    for (const auto& r : report.records) records.push_back(record_to_json(r));
    j["records"] = records;
    j["all_required_pass"] = report.all_required_pass();
    return j.dump(2) + "\n";
}

std::string summary_to_string(const EstimateReport& report,
                              const std::string& scenario) {
    std::string out = "scenario: " + scenario + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-28s %-14s %s\n", "check", "status", "detail");
    out += buf;
    for (const auto& r : report.records) {
        std::string detail;
        for (const auto& [k, v] : r.measured) {
            if (!detail.empty()) detail += ", ";
            detail += k + "=" + format_double(v);
            if (detail.size() > 90) break;
        }
        std::snprintf(buf, sizeof(buf), "%-28s %-14s %s\n", r.name.c_str(),
                      r.status.c_str(), detail.c_str());
        out += buf;
    }
    out += std::string("overall: ") +
           (report.all_required_pass() ? "pass" : "FAIL") + "\n";
    return out;
}

std::string manifest_to_string(const RunConfig& config, const Grid& grid,
                               const SolverTrace& trace,
                               const StructuralReport& structural,
                               const DatumProbe& datum_probe,
                               const CompatibilityReport& compat,
                               bool compat_overridden, double resolved_c0) {
    json j;
    j["schema"] = "mcflow-manifest v1";
    j["config"] = json::parse(config_to_json(config));
    json d;
    d["h"] = grid.h;
    d["dt"] = trace.dt;
    d["mu0"] = grid.domain.band();
    d["mu1"] = grid.domain.smoothness_radius();
    // mu2 would cap the band via |psi_u| mu2 <= 1/100; recorded, not enforced.
    double max_abs_psi_z = std::max(std::abs(datum_probe.min_psi_z), 0.0);
    d["mu2_cap"] = max_abs_psi_z > 0.0 ? 0.01 / max_abs_psi_z : 0.0;
    d["interior_margin"] = trace.interior_margin;
    d["resolved_c0"] = resolved_c0;
    d["grid"] = {{"nx", grid.nx},
                 {"ny", grid.ny},
                 {"interior", grid.n_interior},
                 {"band", grid.n_band},
                 {"boundary_adjacent", grid.n_badj},
                 {"exterior", grid.n_exterior},
                 {"ghosts", static_cast<int>(grid.ghosts.size())}};
    d["structural"] = {{"z_monotone_declared", structural.z_monotone_declared},
                       {"min_fz", structural.min_fz},
                       {"z_monotone_pass", structural.z_monotone_pass},
                       {"log_growth_declared", structural.log_growth_declared},
                       {"p_magnitudes", structural.p_magnitudes},
                       {"growth_ratio", structural.growth_ratio},
                       {"ratio_decreasing", structural.ratio_decreasing},
                       {"ratio_vanishing", structural.ratio_vanishing}};
    d["datum"] = {{"sup_abs", datum_probe.sup_abs},
                  {"min_psi_z", datum_probe.min_psi_z},
                  {"psi_monotone", datum_probe.psi_monotone}};
    d["compatibility"] = {{"residual", compat.max_residual},
                          {"tol", compat.tol},
                          {"pass", compat.pass},
                          {"overridden", compat_overridden}};
    d["convergence"] = {{"converged", trace.converged},
                        {"final_time", trace.series.back().t},
                        {"steps", static_cast<int>(trace.series.size())},
                        {"final_mean", trace.final_mean},
                        {"mean_drift_rate", trace.mean_drift_rate}};
    d["hopf"] = {{"events", trace.hopf.events},
                 {"min_normal_derivative", trace.hopf.min_normal_derivative},
                 {"at_time", trace.hopf.at_time}};
    j["derived"] = d;
    j["artifacts"] = {{"trace", "trace.csv"},
                      {"fields", "fields.txt"},
                      {"report", "estimate_report.json"},
                      {"summary", "summary.txt"}};
    return j.dump(2) + "\n";
}

ManifestData read_manifest(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("manifest parse error: ") + e.what());
    }
    if (j.value("schema", "") != "mcflow-manifest v1")
        throw SchemaError("manifest schema mismatch");
    ManifestData m;
    m.config = config_from_json(j.at("config").dump());
    const json& d = j.at("derived");
    m.dt = d.at("dt").get<double>();
    m.resolved_c0 = d.at("resolved_c0").get<double>();
    m.hopf.events = d.at("hopf").at("events").get<int>();
    m.hopf.min_normal_derivative =
        d.at("hopf").at("min_normal_derivative").get<double>();
    m.hopf.at_time = d.at("hopf").at("at_time").get<double>();
    m.converged = d.at("convergence").at("converged").get<bool>();
    m.final_mean = d.at("convergence").at("final_mean").get<double>();
    m.mean_drift_rate = d.at("convergence").at("mean_drift_rate").get<double>();
    m.fz_monotone_declared = d.at("structural").at("z_monotone_declared").get<bool>() &&
                             d.at("structural").at("z_monotone_pass").get<bool>();
    m.psi_monotone_declared = d.at("datum").at("psi_monotone").get<bool>();
    return m;
}

}  // namespace mcflow
