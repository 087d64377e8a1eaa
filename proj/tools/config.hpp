#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "anyondec/anyondec.hpp"

namespace anyondec::cli {

/// Invalid or unreadable configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output could not be written (exit code 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };
enum class TimeUnit { Seconds, InverseGamma };

struct GridBlock {
    double t_min = 1e-3;
    double t_max = 1e3;
    int points = 400;
    Spacing spacing = Spacing::Logarithmic;
    TimeUnit unit = TimeUnit::InverseGamma;
};

struct OutputBlock {
    std::optional<std::string> directory;
    OutputFormat format = OutputFormat::Csv;
    bool svg = false;
};

enum class SweepParameter { Temperature, QubitEdgeDistance, AntidotSeparation, Splitting, FillingDenominator };
enum class SweepQuantity { Gamma, Ratio, PurityAtTime, FullCurve };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::QubitEdgeDistance;
    std::vector<double> values;
    SweepQuantity quantity = SweepQuantity::Gamma;
    double time = 0.0; // seconds, for purity-at-time
};

struct RunConfig {
    PhysicalParams physical{};
    BlochState initial{0.0, 0.0, 1.0, 0.0};
    GridBlock grid{};
    QuadratureSettings quadrature{};
    IntegratorSettings integrator{};
    double threshold = 0.01;
    int jobs = 1;
    OutputBlock output{};
    std::optional<SweepSpec> sweep;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& file);

std::string parameter_name(SweepParameter p);
std::string parameter_column(SweepParameter p);
void apply(SweepParameter p, double value, PhysicalParams& phys);

/// Grid in seconds. `gamma` is the dissipation rate used when the grid is
/// given in units of 1/Γ.
std::vector<double> resolve_grid(const GridBlock& g, double gamma);

} // namespace anyondec::cli
