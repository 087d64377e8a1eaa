#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "anyondec/anyondec.hpp"
#include "config.hpp"

namespace anyondec::cli {

/// Shortest round-trip decimal representation, independent of the C locale.
std::string format_number(double x);

struct RatesTable {
    double gamma = 0.0;
    double lambda = 0.0;
    double shift = 0.0;
    double ratio = 0.0; // ħΓ/Ω
    double omega = 0.0;
    double cutoff = 0.0;
    double amplitude = 0.0;
};

RatesTable compute_rates(const RunConfig& cfg);
std::string rates_csv(const RatesTable& r);
nlohmann::ordered_json rates_json(const RatesTable& r);
std::string rates_text(const RatesTable& r);

Trajectory compute_evolution(const RunConfig& cfg);
std::string evolve_csv(const Trajectory& tr);

struct ShortTimeRow {
    double t = 0.0;
    Regime regime = Regime::Short;
    double integral_exact = 0.0;
    double integral_asymptotic = 0.0;
    double b_squared = 0.0;
    double purity_exact = 1.0;
    double purity_asymptotic = 1.0;
};

std::vector<ShortTimeRow> compute_shorttime(const RunConfig& cfg);
std::string shorttime_csv(const std::vector<ShortTimeRow>& rows);

ComparisonReport compute_comparison(const RunConfig& cfg);
std::string compare_csv(const ComparisonReport& r);
nlohmann::ordered_json compare_json(const ComparisonReport& r);
std::string compare_svg(const ComparisonReport& r);

struct SweepRow {
    double value = 0.0;
    std::vector<double> columns;
};

struct SweepResult {
    std::vector<std::string> header;
    std::vector<SweepRow> rows;
};

SweepResult compute_sweep(const RunConfig& cfg);
std::string sweep_csv(const SweepResult& s);

/// Runs a subcommand, writing its data files into `out_dir` and a short
/// summary to `console`. Returns the paths written.
std::vector<std::filesystem::path> run_command(std::string_view name, const RunConfig& cfg,
                                               const std::filesystem::path& out_dir, std::ostream& console);

} // namespace anyondec::cli
