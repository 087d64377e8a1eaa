#pragma once

#include <cmath>
#include <optional>

#include "anyondec/bath.hpp"
#include "anyondec/params.hpp"
#include "anyondec/quadrature.hpp"

namespace anyondec {

enum class ShortTimeMethod { ExactQuadrature, Asymptotic };

inline const char* to_string(ShortTimeMethod m) {
    return m == ShortTimeMethod::ExactQuadrature ? "exact-quadrature" : "asymptotic";
}

struct ShortTimePoint {
    double t = 0.0;
    double b_squared = 0.0;
    double purity = 1.0;
    Regime regime = Regime::Short;
    ShortTimeMethod method = ShortTimeMethod::ExactQuadrature;
};

struct Crossovers {
    double short_end = 0.0;            // 1/ω_c
    std::optional<double> long_start;  // 1/T, absent at T = 0
};

namespace shorttime {

/// B²(t) = A · I(t)
inline double b_squared(double t, const ModelParams& m, const QuadratureSettings& q = {}) {
    if (m.amplitude == 0.0) {
        validate(m);
        if (!(t >= 0)) throw DomainError("b_squared: t must be >= 0");
        return 0.0;
    }
    return m.amplitude * bath::integral_I(t, m, q);
}

inline double purity_from_exponent(double b2) { return 0.5 * (1.0 + std::exp(-2.0 * b2)); }

/// ½[1 + exp(-2B²(t))]
inline double purity_shorttime(double t, const ModelParams& m, const QuadratureSettings& q = {}) {
    return purity_from_exponent(b_squared(t, m, q));
}

inline ShortTimePoint exact_point(double t, const ModelParams& m, const QuadratureSettings& q = {}) {
    const double b2 = b_squared(t, m, q);
    return {t, b2, purity_from_exponent(b2), bath::classify(t, m), ShortTimeMethod::ExactQuadrature};
}

/// Piecewise asymptotic purity:
///   ½[1 + exp(-2Aω_c²t²)]   for t < 1/ω_c
///   ½[1 + (ω_c t)^(-A)]      for 1/ω_c ≤ t < 1/T
///   ½[1 + exp(-2ATt)]        for t ≥ 1/T
/// `b_squared` holds the exponent each branch implies, so purity = ½[1 + e^{-2 b_squared}].
inline ShortTimePoint purity_asymptotic(double t, const ModelParams& m) {
    validate(m);
    if (!(t >= 0)) throw DomainError("purity_asymptotic: t must be >= 0");
    ShortTimePoint p;
    p.t = t;
    p.method = ShortTimeMethod::Asymptotic;
    p.regime = bath::classify(t, m);
    const double a = m.amplitude;
    switch (p.regime) {
    case Regime::Short:
        p.b_squared = a * m.cutoff * m.cutoff * t * t;
        p.purity = 0.5 * (1.0 + std::exp(-2.0 * p.b_squared));
        break;
    case Regime::Intermediate:
        p.b_squared = 0.5 * a * std::log(m.cutoff * t);
        p.purity = 0.5 * (1.0 + std::pow(m.cutoff * t, -a));
        break;
    case Regime::Long:
        // Note the exponent carries no factor π, unlike the long-time form of I(t).
        p.b_squared = a * m.temperature * t;
        p.purity = 0.5 * (1.0 + std::exp(-2.0 * p.b_squared));
        break;
    }
    return p;
}

inline Crossovers crossover_times(const ModelParams& m) {
    validate(m);
    Crossovers c;
    c.short_end = 1.0 / m.cutoff;
    if (m.temperature > 0.0) c.long_start = 1.0 / m.temperature;
    return c;
}

} // namespace shorttime
} // namespace anyondec
