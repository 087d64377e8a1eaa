#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "anyondec/bath.hpp"
#include "anyondec/errors.hpp"
#include "anyondec/markovian.hpp"
#include "anyondec/params.hpp"
#include "anyondec/shorttime.hpp"

namespace anyondec {

enum class Spacing { Linear, Logarithmic };

struct GridSpec {
    double t_min = 0.0; // seconds
    double t_max = 1.0; // seconds
    int points = 400;
    Spacing spacing = Spacing::Logarithmic;
};

struct CompareSettings {
    /// A grid time counts as divergent once |markovian - shorttime| exceeds this.
    double threshold = 0.01;
    QuadratureSettings quadrature{};
    int jobs = 1;
};

struct ComparisonReport {
    std::vector<double> times;
    std::vector<double> markovian;
    std::vector<double> shorttime_exact;
    std::vector<double> shorttime_asymptotic;
    std::vector<Regime> regimes;
    std::vector<double> abs_difference; // |markovian - shorttime_exact|
    Crossovers crossovers;
    double markovian_limit = 1.0; // ½[1 + tanh²(Ω/2T)]
    double shorttime_limit = 0.5;
    double threshold = 0.0;
    std::optional<double> divergence_time;
    RateSet rates;
    ModelParams model;
};

namespace compare {

inline std::vector<double> make_grid(const GridSpec& g) {
    if (g.points < 2) throw DomainError("grid: need at least two points");
    if (!std::isfinite(g.t_min) || !std::isfinite(g.t_max) || !(g.t_min >= 0) || !(g.t_max > g.t_min)) {
        throw DomainError("grid: need 0 <= t_min < t_max");
    }
    if (g.spacing == Spacing::Logarithmic && !(g.t_min > 0)) {
        throw DomainError("grid: logarithmic spacing needs t_min > 0");
    }
    std::vector<double> t(static_cast<std::size_t>(g.points));
    const double last = g.points - 1;
    for (int i = 0; i < g.points; ++i) {
        const double u = i / last;
        t[static_cast<std::size_t>(i)] = g.spacing == Spacing::Linear
                                             ? g.t_min + (g.t_max - g.t_min) * u
                                             : g.t_min * std::pow(g.t_max / g.t_min, u);
    }
    t.back() = g.t_max;
    return t;
}

namespace detail {

// Runs f, prefixing any library error with the pipeline stage it came from.
template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
    const std::string prefix = std::string(stage) + ": ";
    try {
        return f();
    } catch (const StiffnessError& e) {
        throw StiffnessError(prefix + e.what(), e.estimate());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(prefix + e.what(), e.estimate());
    } catch (const RangeError& e) {
        throw RangeError(prefix + e.what());
    } catch (const DomainError& e) {
        throw DomainError(prefix + e.what());
    }
}

// Evaluates body(i) for i in [0, n) on up to `jobs` threads. The first failure
// in index order is rethrown, independent of scheduling.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

} // namespace detail

/// Markovian and short-time purity on a shared grid. The Markovian curve uses
/// the exact solution of the Bloch equations started from s0 at t = 0.
inline ComparisonReport compare(const PhysicalParams& phys, const BlochState& s0, const GridSpec& grid,
                                const CompareSettings& settings = {}) {
    ComparisonReport report;
    report.threshold = settings.threshold;
    report.model = detail::staged("params", [&] { return params::to_model(phys); });
    report.times = detail::staged("grid", [&] { return make_grid(grid); });
    report.rates = detail::staged("bath", [&] { return bath::rates(report.model, settings.quadrature); });
    report.crossovers = shorttime::crossover_times(report.model);

    const double tanh_half = report.model.temperature == 0.0
                                 ? 1.0
                                 : std::tanh(report.model.omega / (2.0 * report.model.temperature));
    report.markovian_limit = 0.5 * (1.0 + tanh_half * tanh_half);

    const BlochState start{s0.x, s0.y, s0.z, 0.0};
    if (!is_physical(start)) throw DomainError("initial state: |r| must be <= 1");

    const std::size_t n = report.times.size();
    report.markovian.resize(n);
    report.shorttime_exact.resize(n);
    report.shorttime_asymptotic.resize(n);
    report.regimes.resize(n);
    report.abs_difference.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
        const double t = report.times[i];
        report.markovian[i] =
            markovian::purity(markovian::closed_form(start, report.rates, report.model, t));
        const auto asym = shorttime::purity_asymptotic(t, report.model);
        report.shorttime_asymptotic[i] = asym.purity;
        report.regimes[i] = asym.regime;
    }
    detail::staged("shorttime", [&] {
        detail::parallel_for(n, settings.jobs, [&](std::size_t i) {
            report.shorttime_exact[i] =
                shorttime::purity_shorttime(report.times[i], report.model, settings.quadrature);
        });
        return 0;
    });

    for (std::size_t i = 0; i < n; ++i) {
        report.abs_difference[i] = std::abs(report.markovian[i] - report.shorttime_exact[i]);
        if (!report.divergence_time && report.abs_difference[i] > settings.threshold) {
            report.divergence_time = report.times[i];
        }
    }
    return report;
}

} // namespace compare
} // namespace anyondec
