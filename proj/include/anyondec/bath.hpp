#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "anyondec/constants.hpp"
#include "anyondec/errors.hpp"
#include "anyondec/params.hpp"
#include "anyondec/quadrature.hpp"

namespace anyondec {

/// Ohmic spectral function g(x) = alpha * x * exp(-x / cutoff).
struct SpectralCoupling {
    double alpha = 0.0;
    double cutoff = 1.0; // rad/s
};

/// Markovian coefficients of the Bloch equations.
struct RateSet {
    double gamma = 0.0;  // dissipation rate Γ, 1/s
    double lambda = 0.0; // drive of the x component, 1/s
    double shift = 0.0;  // principal-value frequency shift ω, rad/s

    friend bool operator==(const RateSet&, const RateSet&) = default;
};

/// Time windows of the short-time integral. Boundaries are t = 1/ω_c and
/// t = 1/T; a time equal to a boundary belongs to the later regime.
enum class Regime { Short, Intermediate, Long };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::Short: return "Short";
    case Regime::Intermediate: return "Intermediate";
    case Regime::Long: return "Long";
    }
    return "?";
}

namespace bath {

inline double spectral(double x, const SpectralCoupling& c) {
    if (!(x >= 0)) throw DomainError("spectral: energy must be >= 0");
    return c.alpha * x * std::exp(-x / c.cutoff);
}

/// Spectral coupling entering Γ, λ and ω.
inline SpectralCoupling rate_coupling(const ModelParams& m) { return {m.alpha, m.rate_cutoff}; }

/// coth(x / 2T), with the T = 0 value 1.
inline double occupation_factor(double x, double temperature) {
    if (temperature == 0.0) return 1.0;
    return 1.0 / std::tanh(x / (2.0 * temperature));
}

inline double rate_lambda(const ModelParams& m) {
    validate(m);
    return spectral(m.omega, rate_coupling(m));
}

inline double rate_gamma(const ModelParams& m) {
    return rate_lambda(m) * occupation_factor(m.omega, m.temperature);
}

/// Principal value ω = (2Ω/π) PV∫₀^∞ dε g(ε) coth(ε/2T) / (Ω² - ε²).
///
/// The pole at ε = Ω is removed by folding (Ω - δ, Ω + δ) onto u ∈ (0, δ],
/// where f(Ω + u) + f(Ω - u) = (h(Ω - u) - h(Ω + u)) / u is regular.
inline double shift_omega(const ModelParams& m, const QuadratureSettings& q = {}) {
    validate(m);
    validate(q);
    if (m.alpha == 0.0) return 0.0;

    const double omega = m.omega;
    const double temp = m.temperature;
    const SpectralCoupling c = rate_coupling(m);

    // g(ε) coth(ε/2T), finite at ε = 0 (limit 2 alpha T).
    auto weighted = [&](double e) {
        if (e == 0.0) return 2.0 * c.alpha * temp;
        return spectral(e, c) * occupation_factor(e, temp);
    };
    auto h = [&](double e) { return weighted(e) / (omega + e); };
    auto f = [&](double e) { return h(e) / (omega - e); };

    const double delta = 0.5 * std::min(omega, c.cutoff);
    const double scale = std::max(c.cutoff, temp);
    const double x_max = omega + q.truncation_multiplier * scale;

    const auto left_pts = quad::breakpoints(0.0, omega - delta, {2.0 * temp, c.cutoff});
    const double left = quad::integrate(f, std::span<const double>(left_pts), q).value;
    const double folded =
        quad::integrate([&](double u) { return (h(omega - u) - h(omega + u)) / u; }, 0.0, delta, q)
            .value;
    const auto right_pts = quad::breakpoints(
        omega + delta, x_max, {omega + c.cutoff, omega + 4.0 * c.cutoff, omega + 16.0 * c.cutoff});
    const double right = quad::integrate(f, std::span<const double>(right_pts), q).value;

    return 2.0 * omega / constants::pi * (left + folded + right);
}

inline RateSet rates(const ModelParams& m, const QuadratureSettings& q = {}) {
    return {rate_gamma(m), rate_lambda(m), shift_omega(m, q)};
}

/// Largest ω_c t for which integral_I resolves the oscillations.
inline constexpr double max_oscillation_product = 1e8;

/// I(t) = ∫₀^∞ dx/x exp(-x/ω_c) sin²(xt) coth(x/T), with coth → 1 at T = 0.
///
/// For ω_c t ≤ 10 the integrand is integrated directly. Otherwise the range is
/// split at a = π/t: [0, a] is integrated directly; on [a, ∞) sin² is written as
/// (1 - cos 2xt)/2, the smooth half is integrated directly and the cosine half
/// along the vertical ray x = a + is, where exp(2ixt) decays as exp(-2ts).
inline double integral_I(double t, const ModelParams& m, const QuadratureSettings& q = {}) {
    validate(m);
    validate(q);
    if (!(t >= 0) || !std::isfinite(t)) throw DomainError("integral_I: t must be finite and >= 0");
    if (t == 0.0) return 0.0;

    const double wc = m.cutoff;
    const double temp = m.temperature;
    if (wc * t > max_oscillation_product) {
        throw RangeError("integral_I: cutoff * t exceeds the oscillation resolution limit; "
                         "use the asymptotic form");
    }

    // Below x_small the integrand is replaced by its x → 0 limit: T t² (T > 0) or x t² (T = 0).
    const double x_small = 1e-6 * std::min({wc, temp > 0.0 ? temp : wc, 1.0 / t});
    const double head_limit = temp > 0.0 ? temp * t * t * x_small : 0.5 * t * t * x_small * x_small;

    // e^{-x/ω_c} coth(x/T) / x
    auto envelope = [&](double x) {
        const double thermal = temp > 0.0 ? 1.0 / std::tanh(x / temp) : 1.0;
        return std::exp(-x / wc) * thermal / x;
    };
    auto full = [&](double x) {
        const double s = std::sin(x * t);
        return envelope(x) * s * s;
    };

    const double x_max = q.truncation_multiplier * std::max(wc, temp);

    if (wc * t <= 10.0) {
        const auto pts = quad::breakpoints(x_small, x_max, {temp, wc, 4.0 * wc, 16.0 * wc});
        return head_limit + quad::integrate(full, std::span<const double>(pts), q).value;
    }

    const double a = constants::pi / t;
    const auto head_pts = quad::breakpoints(x_small, a, {temp});
    const double head = quad::integrate(full, std::span<const double>(head_pts), q).value;

    const auto smooth_pts =
        quad::breakpoints(a, x_max, {10.0 * a, 100.0 * a, temp, wc, 4.0 * wc, 16.0 * wc});
    const double smooth = quad::integrate(envelope, std::span<const double>(smooth_pts), q).value;

    // ∫_a^∞ F(x) cos(2tx) dx = Re[i ∫₀^∞ F(a + is) e^{-2ts} ds] = -∫₀^∞ Im F(a + is) e^{-2ts} ds
    auto ray = [&](double s) {
        const std::complex<double> z(a, s);
        std::complex<double> value = std::exp(-z / wc) / z;
        if (temp > 0.0) value /= std::tanh(z / temp);
        return -value.imag() * std::exp(-2.0 * t * s);
    };
    const auto ray_pts = quad::breakpoints(0.0, 25.0 / t, {0.5 / t, 2.0 / t, 8.0 / t});
    const double cosine = quad::integrate(ray, std::span<const double>(ray_pts), q).value;

    return head_limit + head + 0.5 * smooth - 0.5 * cosine;
}

/// Regime of t relative to the crossovers 1/ω_c and 1/T.
inline Regime classify(double t, const ModelParams& m) {
    if (t < 1.0 / m.cutoff) return Regime::Short;
    if (m.temperature == 0.0 || t < 1.0 / m.temperature) return Regime::Intermediate;
    return Regime::Long;
}

struct AsymptoticI {
    double value = 0.0;
    Regime regime = Regime::Short;
};

/// Leading asymptotic form of I(t) in each regime:
/// ω_c² t² (short), ½ ln(ω_c t) (intermediate), π T t (long).
inline AsymptoticI integral_I_asymptotic(double t, const ModelParams& m) {
    validate(m);
    if (!(t >= 0)) throw DomainError("integral_I_asymptotic: t must be >= 0");
    const Regime r = classify(t, m);
    switch (r) {
    case Regime::Short: return {m.cutoff * m.cutoff * t * t, r};
    case Regime::Intermediate: return {0.5 * std::log(m.cutoff * t), r};
    case Regime::Long: return {constants::pi * m.temperature * t, r};
    }
    return {};
}

} // namespace bath
} // namespace anyondec
