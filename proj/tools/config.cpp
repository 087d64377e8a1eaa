#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace anyondec::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
}

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) fail(where.empty() ? key : where + "." + key, "unknown key");
    }
}

double number(const json& obj, const std::string& where, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(where + "." + key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where + "." + key, "must be finite");
    return x;
}

long integer(const json& obj, const std::string& where, const std::string& key, long fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::floor(x) == x && std::abs(x) < 1e15) return static_cast<long>(x);
    }
    fail(where + "." + key, "expected an integer");
}

std::string text(const json& obj, const std::string& where, const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(where + "." + key, "expected a string");
    return v.get<std::string>();
}

Spacing parse_spacing(const std::string& s, const std::string& key) {
    if (s == "linear") return Spacing::Linear;
    if (s == "logarithmic" || s == "log") return Spacing::Logarithmic;
    fail(key, "expected \"linear\" or \"logarithmic\", got \"" + s + "\"");
}

PhysicalParams parse_physical(const json& j) {
    const std::string w = "physical";
    reject_unknown(j, w,
                   {"dielectric_constant", "edge_velocity", "splitting", "temperature", "antidot_separation",
                    "qubit_edge_distance", "filling_denominator", "bias"});
    PhysicalParams p;
    p.dielectric_constant = number(j, w, "dielectric_constant", p.dielectric_constant);
    p.edge_velocity = number(j, w, "edge_velocity", p.edge_velocity);
    p.splitting = number(j, w, "splitting", p.splitting);
    p.temperature = number(j, w, "temperature", p.temperature);
    p.antidot_separation = number(j, w, "antidot_separation", p.antidot_separation);
    p.qubit_edge_distance = number(j, w, "qubit_edge_distance", p.qubit_edge_distance);
    p.filling_denominator = static_cast<int>(integer(j, w, "filling_denominator", p.filling_denominator));
    p.bias = number(j, w, "bias", p.bias);
    try {
        validate(p);
    } catch (const DomainError& e) {
        fail(w, e.what());
    }
    return p;
}

BlochState parse_initial(const json& j) {
    const std::string w = "initial_state";
    reject_unknown(j, w, {"x", "y", "z"});
    BlochState s{number(j, w, "x", 0.0), number(j, w, "y", 0.0), number(j, w, "z", 1.0), 0.0};
    if (!is_physical(s)) fail(w, "Bloch vector must satisfy x^2 + y^2 + z^2 <= 1");
    return s;
}

GridBlock parse_grid(const json& j) {
    const std::string w = "grid";
    reject_unknown(j, w, {"t_min", "t_max", "points", "spacing", "unit"});
    GridBlock g;
    g.t_min = number(j, w, "t_min", g.t_min);
    g.t_max = number(j, w, "t_max", g.t_max);
    g.points = static_cast<int>(integer(j, w, "points", g.points));
    g.spacing = parse_spacing(text(j, w, "spacing", "logarithmic"), w + ".spacing");
    const std::string unit = text(j, w, "unit", "inverse_gamma");
    if (unit == "seconds" || unit == "s") {
        g.unit = TimeUnit::Seconds;
    } else if (unit == "inverse_gamma") {
        g.unit = TimeUnit::InverseGamma;
    } else {
        fail(w + ".unit", "expected \"seconds\" or \"inverse_gamma\", got \"" + unit + "\"");
    }
    if (g.points < 2) fail(w + ".points", "must be >= 2");
    if (!(g.t_min >= 0) || !(g.t_max > g.t_min)) fail(w, "need 0 <= t_min < t_max");
    if (g.spacing == Spacing::Logarithmic && !(g.t_min > 0)) fail(w + ".t_min", "logarithmic spacing needs t_min > 0");
    return g;
}

QuadratureSettings parse_quadrature(const json& j) {
    const std::string w = "quadrature";
    reject_unknown(j, w, {"rel_tol", "abs_tol", "max_subdivisions", "truncation_multiplier"});
    QuadratureSettings q;
    q.rel_tol = number(j, w, "rel_tol", q.rel_tol);
    q.abs_tol = number(j, w, "abs_tol", q.abs_tol);
    q.max_subdivisions = static_cast<int>(integer(j, w, "max_subdivisions", q.max_subdivisions));
    q.truncation_multiplier = number(j, w, "truncation_multiplier", q.truncation_multiplier);
    try {
        validate(q);
    } catch (const DomainError& e) {
        fail(w, e.what());
    }
    return q;
}

IntegratorSettings parse_integrator(const json& j) {
    const std::string w = "integrator";
    reject_unknown(j, w, {"method", "step", "rel_tol", "abs_tol", "max_steps"});
    IntegratorSettings s;
    const std::string method = text(j, w, "method", "adaptive");
    if (method == "adaptive") {
        s.method = IntegratorMethod::Adaptive;
    } else if (method == "rk4") {
        s.method = IntegratorMethod::FixedRK4;
    } else {
        fail(w + ".method", "expected \"adaptive\" or \"rk4\", got \"" + method + "\"");
    }
    s.step = number(j, w, "step", s.step);
    s.rel_tol = number(j, w, "rel_tol", s.rel_tol);
    s.abs_tol = number(j, w, "abs_tol", s.abs_tol);
    s.max_steps = integer(j, w, "max_steps", s.max_steps);
    if (!(s.rel_tol > 0) || !(s.abs_tol > 0)) fail(w, "tolerances must be > 0");
    if (s.max_steps < 1) fail(w + ".max_steps", "must be >= 1");
    if (s.method == IntegratorMethod::FixedRK4 && !(s.step > 0)) fail(w + ".step", "rk4 needs step > 0 (seconds)");
    return s;
}

OutputBlock parse_output(const json& j) {
    const std::string w = "output";
    reject_unknown(j, w, {"directory", "format", "svg"});
    OutputBlock o;
    if (j.contains("directory")) o.directory = text(j, w, "directory", "");
    const std::string format = text(j, w, "format", "csv");
    if (format == "csv") {
        o.format = OutputFormat::Csv;
    } else if (format == "json") {
        o.format = OutputFormat::Json;
    } else {
        fail(w + ".format", "expected \"csv\" or \"json\", got \"" + format + "\"");
    }
    if (j.contains("svg")) {
        if (!j.at("svg").is_boolean()) fail(w + ".svg", "expected true or false");
        o.svg = j.at("svg").get<bool>();
    }
    return o;
}

SweepParameter parse_parameter(const std::string& s) {
    if (s == "temperature") return SweepParameter::Temperature;
    if (s == "qubit_edge_distance") return SweepParameter::QubitEdgeDistance;
    if (s == "antidot_separation") return SweepParameter::AntidotSeparation;
    if (s == "splitting") return SweepParameter::Splitting;
    if (s == "filling_denominator") return SweepParameter::FillingDenominator;
    fail("sweep.parameter", "unsupported parameter \"" + s + "\"");
}

SweepQuantity parse_quantity(const std::string& s) {
    if (s == "gamma") return SweepQuantity::Gamma;
    if (s == "ratio") return SweepQuantity::Ratio;
    if (s == "purity-at-time") return SweepQuantity::PurityAtTime;
    if (s == "full-curve") return SweepQuantity::FullCurve;
    fail("sweep.quantity", "expected gamma, ratio, purity-at-time or full-curve, got \"" + s + "\"");
}

SweepSpec parse_sweep(const json& j, const PhysicalParams& base) {
    const std::string w = "sweep";
    reject_unknown(j, w, {"parameter", "values", "range", "quantity", "time"});
    SweepSpec s;
    if (!j.contains("parameter")) fail(w + ".parameter", "required");
    s.parameter = parse_parameter(text(j, w, "parameter", ""));
    s.quantity = parse_quantity(text(j, w, "quantity", "gamma"));
    s.time = number(j, w, "time", 0.0);
    if (s.quantity == SweepQuantity::PurityAtTime && !(s.time >= 0 && j.contains("time"))) {
        fail(w + ".time", "purity-at-time needs a time >= 0 in seconds");
    }

    if (j.contains("values") == j.contains("range")) fail(w, "give exactly one of \"values\" or \"range\"");
    if (j.contains("values")) {
        const auto& v = j.at("values");
        if (!v.is_array() || v.empty()) fail(w + ".values", "expected a non-empty array of numbers");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail(w + ".values[" + std::to_string(i) + "]", "expected a number");
            s.values.push_back(v[i].get<double>());
        }
    } else {
        const auto& r = j.at("range");
        const std::string rw = w + ".range";
        reject_unknown(r, rw, {"start", "stop", "count", "spacing"});
        for (const char* k : {"start", "stop", "count"}) {
            if (!r.contains(k)) fail(rw + "." + k, "required");
        }
        GridSpec g;
        g.t_min = number(r, rw, "start", 0.0);
        g.t_max = number(r, rw, "stop", 0.0);
        g.points = static_cast<int>(integer(r, rw, "count", 2));
        g.spacing = parse_spacing(text(r, rw, "spacing", "linear"), rw + ".spacing");
        if (g.t_max < g.t_min) std::swap(g.t_min, g.t_max);
        try {
            s.values = compare::make_grid(g);
        } catch (const DomainError& e) {
            fail(rw, e.what());
        }
    }

    std::sort(s.values.begin(), s.values.end());
    s.values.erase(std::unique(s.values.begin(), s.values.end()), s.values.end());
    for (double v : s.values) {
        PhysicalParams p = base;
        if (s.parameter == SweepParameter::FillingDenominator && std::floor(v) != v) {
            fail(w + ".values", "filling_denominator values must be integers");
        }
        apply(s.parameter, v, p);
        try {
            validate(p);
        } catch (const DomainError& e) {
            std::ostringstream msg;
            msg << "value " << v << " is invalid: " << e.what();
            fail(w + ".values", msg.str());
        }
    }
    return s;
}

} // namespace

std::string parameter_name(SweepParameter p) {
    switch (p) {
    case SweepParameter::Temperature: return "temperature";
    case SweepParameter::QubitEdgeDistance: return "qubit_edge_distance";
    case SweepParameter::AntidotSeparation: return "antidot_separation";
    case SweepParameter::Splitting: return "splitting";
    case SweepParameter::FillingDenominator: return "filling_denominator";
    }
    return "?";
}

std::string parameter_column(SweepParameter p) {
    switch (p) {
    case SweepParameter::Temperature: return "temperature_K";
    case SweepParameter::QubitEdgeDistance: return "qubit_edge_distance_m";
    case SweepParameter::AntidotSeparation: return "antidot_separation_m";
    case SweepParameter::Splitting: return "splitting_K";
    case SweepParameter::FillingDenominator: return "filling_denominator";
    }
    return "?";
}

void apply(SweepParameter p, double value, PhysicalParams& phys) {
    switch (p) {
    case SweepParameter::Temperature: phys.temperature = value; break;
    case SweepParameter::QubitEdgeDistance: phys.qubit_edge_distance = value; break;
    case SweepParameter::AntidotSeparation: phys.antidot_separation = value; break;
    case SweepParameter::Splitting: phys.splitting = value; break;
    case SweepParameter::FillingDenominator: phys.filling_denominator = static_cast<int>(value); break;
    }
}

RunConfig parse_config(const json& doc) {
    reject_unknown(doc, "",
                   {"physical", "initial_state", "grid", "quadrature", "integrator", "compare", "sweep", "output",
                    "jobs"});
    RunConfig c;
    if (doc.contains("physical")) c.physical = parse_physical(doc.at("physical"));
    if (doc.contains("initial_state")) c.initial = parse_initial(doc.at("initial_state"));
    if (doc.contains("grid")) c.grid = parse_grid(doc.at("grid"));
    if (doc.contains("quadrature")) c.quadrature = parse_quadrature(doc.at("quadrature"));
    if (doc.contains("integrator")) c.integrator = parse_integrator(doc.at("integrator"));
    if (doc.contains("compare")) {
        const auto& j = doc.at("compare");
        reject_unknown(j, "compare", {"threshold"});
        c.threshold = number(j, "compare", "threshold", c.threshold);
        if (!(c.threshold > 0)) fail("compare.threshold", "must be > 0");
    }
    if (doc.contains("jobs")) {
        c.jobs = static_cast<int>(integer(doc, "", "jobs", 1));
        if (c.jobs < 1) fail("jobs", "must be >= 1");
    }
    if (doc.contains("output")) c.output = parse_output(doc.at("output"));
    if (doc.contains("sweep")) c.sweep = parse_sweep(doc.at("sweep"), c.physical);
    return c;
}

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read configuration file " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_config_text(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
}

std::vector<double> resolve_grid(const GridBlock& g, double gamma) {
    double scale = 1.0;
    if (g.unit == TimeUnit::InverseGamma) {
        if (!(gamma > 0)) throw ConfigError("grid.unit: inverse_gamma needs a nonzero dissipation rate");
        scale = 1.0 / gamma;
    }
    return compare::make_grid({g.t_min * scale, g.t_max * scale, g.points, g.spacing});
}

} // namespace anyondec::cli
