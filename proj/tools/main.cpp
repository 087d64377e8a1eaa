#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;

constexpr const char* output_env = "ANYONDEC_OUTPUT_DIR";

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<int> jobs;
    std::optional<double> threshold;
};

} // namespace

int main(int argc, char** argv) {
    using namespace anyondec;

    CLI::App app{"Decoherence of a double-antidot anyon qubit coupled to ohmic edge modes.\n"
                 "Markovian rates and trajectories, short-time purity and their comparison."};
    app.footer(
        "Configuration is a JSON document with blocks physical, initial_state, grid, quadrature,\n"
        "integrator, compare, sweep, output and an optional top-level jobs count. Every key is optional;\n"
        "unknown keys are rejected. Defaults:\n"
        "  physical: dielectric_constant 10, edge_velocity 1e5 m/s, splitting 0.1 K, temperature 0 K,\n"
        "            antidot_separation 1e-7 m, qubit_edge_distance 3e-6 m, filling_denominator 3, bias 0 K\n"
        "  initial_state: x 0, y 0, z 1\n"
        "  grid: t_min 1e-3, t_max 1e3, points 400, spacing logarithmic, unit inverse_gamma (or seconds)\n"
        "  quadrature: rel_tol 1e-10, abs_tol 1e-14, max_subdivisions 2000, truncation_multiplier 45\n"
        "  integrator: method adaptive (or rk4 with step in s), rel_tol 1e-11, abs_tol 1e-12, max_steps 1e7\n"
        "  compare: threshold 0.01\n"
        "  output: directory (else $ANYONDEC_OUTPUT_DIR, else .), format csv, svg false\n"
        "Exit codes: 0 success, 2 configuration error, 3 numerical error, 4 I/O error.");
    app.require_subcommand(1);

    Options opt;
    for (const char* name : {"rates", "evolve", "shorttime", "compare", "sweep"}) {
        static const std::map<std::string, std::string> help = {
            {"rates", "Print the rates Gamma, lambda, omega, hbarGamma/Omega, omega_c and A"},
            {"evolve", "Integrate the Bloch equations; CSV of t, x, y, z, purity"},
            {"shorttime", "Short-time integral and purity, exact and asymptotic"},
            {"compare", "Markovian vs short-time purity on a shared grid"},
            {"sweep", "Sweep one physical parameter; long-format CSV"},
        };
        auto* sub = app.add_subcommand(name, help.at(name));
        sub->add_option("--config", opt.config, "JSON configuration file")->required();
        sub->add_option("--out", opt.out, "Output directory (overrides output.directory)");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--threshold", opt.threshold, "Divergence threshold for compare")
            ->check(CLI::PositiveNumber);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        auto cfg = cli::load_config(opt.config);
        if (opt.format) cfg.output.format = *opt.format == "json" ? cli::OutputFormat::Json : cli::OutputFormat::Csv;
        if (opt.jobs) cfg.jobs = *opt.jobs;
        if (opt.threshold) cfg.threshold = *opt.threshold;

        std::filesystem::path out_dir = ".";
        if (opt.out) {
            out_dir = *opt.out;
        } else if (cfg.output.directory) {
            out_dir = *cfg.output.directory;
        } else if (const char* env = std::getenv(output_env); env && *env) {
            out_dir = env;
        }
        cli::run_command(command, cfg, out_dir, std::cout);
        return exit_ok;
    } catch (const cli::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return exit_config;
    } catch (const ConvergenceError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const RangeError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const cli::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    }
}
