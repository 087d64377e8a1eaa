#include "commands.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace anyondec::cli {

std::string format_number(double x) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

namespace {

std::string join(std::initializer_list<std::string> cells) {
    std::string line;
    bool first = true;
    for (const auto& c : cells) {
        if (!first) line += ',';
        line += c;
        first = false;
    }
    return line + '\n';
}

std::string fmt(double x) { return format_number(x); }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("failed writing " + path.string());
}

std::vector<double> grid_from_zero(const RunConfig& cfg, double gamma) {
    auto grid = resolve_grid(cfg.grid, gamma);
    if (grid.front() > 0.0) grid.insert(grid.begin(), 0.0);
    return grid;
}

} // namespace

RatesTable compute_rates(const RunConfig& cfg) {
    const ModelParams m = params::to_model(cfg.physical);
    const RateSet r = bath::rates(m, cfg.quadrature);
    return {r.gamma, r.lambda, r.shift, r.gamma / m.omega, m.omega, m.cutoff, m.amplitude};
}

std::string rates_csv(const RatesTable& r) {
    return join({"gamma_per_s", "lambda_per_s", "shift_rad_per_s", "hbar_gamma_over_omega", "omega_rad_per_s",
                 "cutoff_rad_per_s", "amplitude"}) +
           join({fmt(r.gamma), fmt(r.lambda), fmt(r.shift), fmt(r.ratio), fmt(r.omega), fmt(r.cutoff),
                 fmt(r.amplitude)});
}

nlohmann::ordered_json rates_json(const RatesTable& r) {
    nlohmann::ordered_json j;
    j["gamma_per_s"] = r.gamma;
    j["lambda_per_s"] = r.lambda;
    j["shift_rad_per_s"] = r.shift;
    j["hbar_gamma_over_omega"] = r.ratio;
    j["omega_rad_per_s"] = r.omega;
    j["cutoff_rad_per_s"] = r.cutoff;
    j["amplitude"] = r.amplitude;
    return j;
}

std::string rates_text(const RatesTable& r) {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    auto row = [&](const char* name, double v, const char* unit) {
        out << std::left << std::setw(12) << name << std::right << std::setw(24) << fmt(v) << "  " << unit << '\n';
    };
    row("Gamma", r.gamma, "1/s");
    row("lambda", r.lambda, "1/s");
    row("omega", r.shift, "rad/s");
    row("hbarGamma/Omega", r.ratio, "");
    row("Omega", r.omega, "rad/s");
    row("omega_c", r.cutoff, "rad/s");
    row("A", r.amplitude, "");
    return out.str();
}

Trajectory compute_evolution(const RunConfig& cfg) {
    const ModelParams m = params::to_model(cfg.physical);
    const RateSet r = bath::rates(m, cfg.quadrature);
    const auto grid = grid_from_zero(cfg, r.gamma);
    return markovian::evolve(cfg.initial, r, m, grid, cfg.integrator);
}

std::string evolve_csv(const Trajectory& tr) {
    std::string out = join({"t_s", "x", "y", "z", "purity"});
    for (const auto& s : tr.states) {
        out += join({fmt(s.t), fmt(s.x), fmt(s.y), fmt(s.z), fmt(markovian::purity(s))});
    }
    return out;
}

std::vector<ShortTimeRow> compute_shorttime(const RunConfig& cfg) {
    const ModelParams m = params::to_model(cfg.physical);
    const double gamma = cfg.grid.unit == TimeUnit::InverseGamma ? bath::rate_gamma(m) : 0.0;
    const auto grid = resolve_grid(cfg.grid, gamma);
    std::vector<ShortTimeRow> rows(grid.size());
    compare::detail::parallel_for(grid.size(), cfg.jobs, [&](std::size_t i) {
        const double t = grid[i];
        ShortTimeRow& row = rows[i];
        row.t = t;
        row.integral_exact = bath::integral_I(t, m, cfg.quadrature);
        const auto asym = bath::integral_I_asymptotic(t, m);
        row.integral_asymptotic = asym.value;
        row.regime = asym.regime;
        row.b_squared = m.amplitude * row.integral_exact;
        row.purity_exact = shorttime::purity_from_exponent(row.b_squared);
        row.purity_asymptotic = shorttime::purity_asymptotic(t, m).purity;
    });
    return rows;
}

std::string shorttime_csv(const std::vector<ShortTimeRow>& rows) {
    std::string out = join({"t_s", "regime", "I_exact", "I_asymptotic", "B2", "purity_exact", "purity_asymptotic"});
    for (const auto& r : rows) {
        out += join({fmt(r.t), to_string(r.regime), fmt(r.integral_exact), fmt(r.integral_asymptotic),
                     fmt(r.b_squared), fmt(r.purity_exact), fmt(r.purity_asymptotic)});
    }
    return out;
}

ComparisonReport compute_comparison(const RunConfig& cfg) {
    const ModelParams m = params::to_model(cfg.physical);
    const double gamma = cfg.grid.unit == TimeUnit::InverseGamma ? bath::rate_gamma(m) : 0.0;
    const auto grid = resolve_grid(cfg.grid, gamma);
    const GridSpec spec{grid.front(), grid.back(), static_cast<int>(grid.size()), cfg.grid.spacing};
    return compare::compare(cfg.physical, cfg.initial, spec, {cfg.threshold, cfg.quadrature, cfg.jobs});
}

std::string compare_csv(const ComparisonReport& r) {
    std::string out = join({"t_s", "regime", "purity_markovian", "purity_shorttime_exact",
                            "purity_shorttime_asymptotic", "abs_difference"});
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        out += join({fmt(r.times[i]), to_string(r.regimes[i]), fmt(r.markovian[i]), fmt(r.shorttime_exact[i]),
                     fmt(r.shorttime_asymptotic[i]), fmt(r.abs_difference[i])});
    }
    return out;
}

nlohmann::ordered_json compare_json(const ComparisonReport& r) {
    nlohmann::ordered_json j;
    j["model"] = {{"omega_rad_per_s", r.model.omega},     {"temperature_rad_per_s", r.model.temperature},
                  {"cutoff_rad_per_s", r.model.cutoff},   {"rate_cutoff_rad_per_s", r.model.rate_cutoff},
                  {"alpha", r.model.alpha},               {"amplitude", r.model.amplitude}};
    j["rates"] = {{"gamma_per_s", r.rates.gamma}, {"lambda_per_s", r.rates.lambda}, {"shift_rad_per_s", r.rates.shift}};
    j["crossovers"] = {{"short_end_s", r.crossovers.short_end},
                       {"long_start_s", r.crossovers.long_start ? nlohmann::ordered_json(*r.crossovers.long_start)
                                                                : nlohmann::ordered_json(nullptr)}};
    j["limits"] = {{"markovian", r.markovian_limit}, {"shorttime", r.shorttime_limit}};
    j["threshold"] = r.threshold;
    j["divergence_time_s"] = r.divergence_time ? nlohmann::ordered_json(*r.divergence_time) : nlohmann::ordered_json(nullptr);
    std::vector<std::string> regimes;
    for (auto g : r.regimes) regimes.emplace_back(to_string(g));
    j["t_s"] = r.times;
    j["regime"] = regimes;
    j["purity_markovian"] = r.markovian;
    j["purity_shorttime_exact"] = r.shorttime_exact;
    j["purity_shorttime_asymptotic"] = r.shorttime_asymptotic;
    j["abs_difference"] = r.abs_difference;
    return j;
}

SweepResult compute_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("sweep: configuration has no \"sweep\" block");
    const SweepSpec& spec = *cfg.sweep;
    SweepResult result;
    const std::string key = parameter_column(spec.parameter);
    switch (spec.quantity) {
    case SweepQuantity::Gamma: result.header = {key, "gamma_per_s"}; break;
    case SweepQuantity::Ratio: result.header = {key, "hbar_gamma_over_omega"}; break;
    case SweepQuantity::PurityAtTime:
        result.header = {key, "t_s", "purity_markovian", "purity_shorttime_exact"};
        break;
    case SweepQuantity::FullCurve:
        result.header = {key, "t_s", "purity_markovian", "purity_shorttime_exact", "purity_shorttime_asymptotic"};
        break;
    }

    std::vector<std::vector<SweepRow>> per_value(spec.values.size());
    // Parallelism is across swept values; each point runs single-threaded.
    RunConfig inner = cfg;
    inner.jobs = 1;
    compare::detail::parallel_for(spec.values.size(), cfg.jobs, [&](std::size_t i) {
        const double v = spec.values[i];
        RunConfig point = inner;
        apply(spec.parameter, v, point.physical);
        const ModelParams m = params::to_model(point.physical);
        auto& rows = per_value[i];
        switch (spec.quantity) {
        case SweepQuantity::Gamma: rows.push_back({v, {bath::rate_gamma(m)}}); break;
        case SweepQuantity::Ratio: rows.push_back({v, {bath::rate_gamma(m) / m.omega}}); break;
        case SweepQuantity::PurityAtTime: {
            const RateSet r = bath::rates(m, point.quadrature);
            const double pm = markovian::purity(markovian::closed_form(point.initial, r, m, spec.time));
            rows.push_back({v, {spec.time, pm, shorttime::purity_shorttime(spec.time, m, point.quadrature)}});
            break;
        }
        case SweepQuantity::FullCurve: {
            const auto report = compute_comparison(point);
            for (std::size_t k = 0; k < report.times.size(); ++k) {
                rows.push_back({v,
                                {report.times[k], report.markovian[k], report.shorttime_exact[k],
                                 report.shorttime_asymptotic[k]}});
            }
            break;
        }
        }
    });
    for (auto& rows : per_value) {
        for (auto& row : rows) result.rows.push_back(std::move(row));
    }
    return result;
}

std::string sweep_csv(const SweepResult& s) {
    std::string out;
    for (std::size_t i = 0; i < s.header.size(); ++i) {
        if (i) out += ',';
        out += s.header[i];
    }
    out += '\n';
    for (const auto& row : s.rows) {
        out += fmt(row.value);
        for (double c : row.columns) out += ',' + fmt(c);
        out += '\n';
    }
    return out;
}

std::vector<std::filesystem::path> run_command(std::string_view name, const RunConfig& cfg,
                                               const std::filesystem::path& out_dir, std::ostream& console) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());

    const bool json = cfg.output.format == OutputFormat::Json;
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& file, const std::string& content) {
        const auto path = out_dir / file;
        write_file(path, content);
        written.push_back(path);
    };

    if (name == "rates") {
        const auto table = compute_rates(cfg);
        console << rates_text(table);
        if (json) {
            emit("rates.json", rates_json(table).dump(2) + '\n');
        } else {
            emit("rates.csv", rates_csv(table));
        }
    } else if (name == "evolve") {
        const auto tr = compute_evolution(cfg);
        if (json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& s : tr.states) {
                j.push_back({{"t_s", s.t}, {"x", s.x}, {"y", s.y}, {"z", s.z}, {"purity", markovian::purity(s)}});
            }
            emit("evolve.json", j.dump(2) + '\n');
        } else {
            emit("evolve.csv", evolve_csv(tr));
        }
        console << "evolve: " << tr.states.size() << " samples\n";
    } else if (name == "shorttime") {
        const auto rows = compute_shorttime(cfg);
        if (json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::array();
            for (const auto& r : rows) {
                j.push_back({{"t_s", r.t},
                             {"regime", to_string(r.regime)},
                             {"I_exact", r.integral_exact},
                             {"I_asymptotic", r.integral_asymptotic},
                             {"B2", r.b_squared},
                             {"purity_exact", r.purity_exact},
                             {"purity_asymptotic", r.purity_asymptotic}});
            }
            emit("shorttime.json", j.dump(2) + '\n');
        } else {
            emit("shorttime.csv", shorttime_csv(rows));
        }
        console << "shorttime: " << rows.size() << " samples\n";
    } else if (name == "compare") {
        const auto report = compute_comparison(cfg);
        if (json) {
            emit("compare.json", compare_json(report).dump(2) + '\n');
        } else {
            emit("compare.csv", compare_csv(report));
        }
        if (cfg.output.svg) emit("compare.svg", compare_svg(report));
        console << "compare: markovian limit " << fmt(report.markovian_limit) << ", short-time limit "
                << fmt(report.shorttime_limit) << ", divergence at "
                << (report.divergence_time ? fmt(*report.divergence_time) + " s" : std::string("none")) << '\n';
    } else if (name == "sweep") {
        const auto result = compute_sweep(cfg);
        emit("sweep.csv", sweep_csv(result));
        console << "sweep: " << cfg.sweep->values.size() << " values of " << parameter_name(cfg.sweep->parameter)
                << '\n';
    } else {
        throw ConfigError("unknown command \"" + std::string(name) + "\"");
    }
    for (const auto& p : written) console << "wrote " << p.string() << '\n';
    return written;
}

} // namespace anyondec::cli
