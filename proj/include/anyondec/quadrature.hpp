#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "anyondec/errors.hpp"

namespace anyondec {

struct QuadratureSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    /// Semi-infinite integrals are truncated at this multiple of the largest bath scale.
    double truncation_multiplier = 45.0;
};

inline void validate(const QuadratureSettings& q) {
    if (!(q.rel_tol > 0) || !(q.abs_tol > 0) || q.max_subdivisions < 1 ||
        !(q.truncation_multiplier > 0)) {
        throw DomainError("quadrature settings must all be positive");
    }
}

namespace quad {

struct Result {
    double value = 0.0;
    double error = 0.0;
    int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    friend bool operator<(const Segment& l, const Segment& r) { return l.error < r.error; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double abs_half = std::abs(half);

    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        f1[j] = f(center - dx);
        f2[j] = f(center + dx);
        kronrod += kronrod_weights[j] * (f1[j] + f2[j]);
        abs_sum += kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * kronrod;
    double asc = kronrod_weights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double value = kronrod * half;
    asc *= abs_half;
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    const double abs_value = abs_sum * abs_half;
    if (abs_value > std::numeric_limits<double>::min() / (50.0 * eps)) {
        error = std::max(50.0 * eps * abs_value, error);
    }
    return {a, b, value, error};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature over the panels delimited by
/// `breakpoints` (ascending). The worst panel is bisected until the total
/// error estimate meets max(abs_tol, rel_tol * |I|).
template <class F>
Result integrate(F&& f, std::span<const double> breakpoints, const QuadratureSettings& q) {
    validate(q);
    if (breakpoints.size() < 2) throw DomainError("integrate: need at least two breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (!(breakpoints[i] > breakpoints[i - 1])) {
            throw DomainError("integrate: breakpoints must be strictly increasing");
        }
    }

    std::vector<detail::Segment> heap;
    heap.reserve(static_cast<std::size_t>(q.max_subdivisions) + breakpoints.size());
    double total = 0.0;
    double total_error = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        auto s = detail::gauss_kronrod_15(f, breakpoints[i - 1], breakpoints[i]);
        total += s.value;
        total_error += s.error;
        heap.push_back(s);
    }
    std::make_heap(heap.begin(), heap.end());

    auto converged = [&] { return total_error <= std::max(q.abs_tol, q.rel_tol * std::abs(total)); };
    while (!converged()) {
        if (static_cast<int>(heap.size()) >= q.max_subdivisions) {
            std::ostringstream msg;
            msg << "quadrature did not converge within " << q.max_subdivisions
                << " subdivisions (estimate " << total_error << " for value " << total << ")";
            throw ConvergenceError(msg.str(), total_error);
        }
        std::pop_heap(heap.begin(), heap.end());
        const auto worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw ConvergenceError("quadrature interval reached floating-point resolution",
                                   total_error);
        }
        const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    // Re-sum to shed the drift accumulated by the incremental updates.
    Result r;
    for (const auto& s : heap) {
        r.value += s.value;
        r.error += s.error;
    }
    r.intervals = static_cast<int>(heap.size());
    return r;
}

template <class F>
Result integrate(F&& f, double a, double b, const QuadratureSettings& q) {
    const std::array<double, 2> ends{a, b};
    return integrate(std::forward<F>(f), std::span<const double>(ends), q);
}

/// Sorts the candidate points, keeps those strictly inside (lo, hi) and adds the ends.
inline std::vector<double> breakpoints(double lo, double hi, std::initializer_list<double> interior) {
    std::vector<double> pts{lo};
    std::vector<double> inner(interior);
    std::sort(inner.begin(), inner.end());
    for (double x : inner) {
        if (x > pts.back() && x < hi) pts.push_back(x);
    }
    pts.push_back(hi);
    return pts;
}

} // namespace quad
} // namespace anyondec
