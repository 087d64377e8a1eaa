#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>

#include "anyondec/errors.hpp"

namespace anyondec::ode {

template <std::size_t N>
using State = std::array<double, N>;

namespace detail {

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms) {
    State<N> out = y;
    for (const auto& [c, k] : terms) {
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
}

} // namespace detail

/// Classical fourth-order Runge-Kutta with a fixed step; the last step is
/// shortened to land exactly on t1.
template <std::size_t N, class Rhs>
State<N> rk4(Rhs&& rhs, State<N> y, double t0, double t1, double step) {
    if (!(step > 0)) throw DomainError("rk4: step must be > 0");
    double t = t0;
    while (t < t1) {
        const double h = std::min(step, t1 - t);
        const State<N> k1 = rhs(t, y);
        const State<N> k2 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k1}}));
        const State<N> k3 = rhs(t + 0.5 * h, detail::axpy<N>(y, h, {{0.5, &k2}}));
        const State<N> k4 = rhs(t + h, detail::axpy<N>(y, h, {{1.0, &k3}}));
        for (std::size_t i = 0; i < N; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        // Guard against t + h rounding below t1 forever.
        t = (t1 - t <= step) ? t1 : t + h;
    }
    return y;
}

struct AdaptiveSettings {
    double rel_tol = 1e-11;
    double abs_tol = 1e-12;
    long max_steps = 10'000'000;
};

struct AdaptiveStats {
    long accepted = 0;
    long rejected = 0;
};

/// Dormand-Prince 5(4) embedded pair with local extrapolation.
///
/// `step` carries the step-size suggestion between successive calls so that a
/// trajectory sampled on a grid does not restart the controller each time.
template <std::size_t N, class Rhs>
State<N> dormand_prince(Rhs&& rhs, State<N> y, double t0, double t1, const AdaptiveSettings& cfg,
                        double& step, AdaptiveStats* stats = nullptr) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // b - b* (fifth minus fourth order weights)
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0) || cfg.max_steps < 1) {
        throw DomainError("dormand_prince: tolerances and max_steps must be positive");
    }
    if (t1 <= t0) return y;
    if (!(step > 0)) step = 1e-3 * (t1 - t0);

    double t = t0;
    State<N> k1 = rhs(t, y);
    long steps = 0;
    while (t < t1) {
        if (++steps > cfg.max_steps) {
            throw ConvergenceError("dormand_prince: max_steps exceeded", t1 - t);
        }
        bool last = false;
        double h = step;
        if (t + h >= t1) {
            h = t1 - t;
            last = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) {
            throw StiffnessError("dormand_prince: step size underflow", h);
        }

        const State<N> k2 = rhs(t + c2 * h, detail::axpy<N>(y, h, {{a21, &k1}}));
        const State<N> k3 = rhs(t + c3 * h, detail::axpy<N>(y, h, {{a31, &k1}, {a32, &k2}}));
        const State<N> k4 = rhs(t + c4 * h, detail::axpy<N>(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State<N> k5 =
            rhs(t + c5 * h, detail::axpy<N>(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State<N> k6 = rhs(
            t + h, detail::axpy<N>(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State<N> y_new =
            detail::axpy<N>(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State<N> k7 = rhs(t + h, y_new);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            t = last ? t1 : t + h;
            y = y_new;
            k1 = k7;
            if (stats) ++stats->accepted;
            // A step clipped to hit t1 says nothing about the natural step size.
            if (!last) step = h * factor;
        } else {
            if (stats) ++stats->rejected;
            step = h * std::min(1.0, factor);
        }
    }
    return y;
}

} // namespace anyondec::ode
