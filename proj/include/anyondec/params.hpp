#pragma once

#include <cmath>
#include <string>

#include "anyondec/constants.hpp"
#include "anyondec/errors.hpp"

namespace anyondec {

/// Laboratory description of the double-antidot qubit and its edge.
/// Energies are given as temperatures (kelvin), lengths in meters.
struct PhysicalParams {
    double dielectric_constant = 10.0;
    double edge_velocity = 1.0e5;       // m/s
    double splitting = 0.1;             // K, tunnelling splitting Ω
    double temperature = 0.0;           // K
    double antidot_separation = 100e-9; // m, d
    double qubit_edge_distance = 3e-6;  // m, L
    int filling_denominator = 3;        // ν = 1/m
    double bias = 0.0;                  // K, only the unbiased qubit is modelled

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

/// Working parameter set. Every frequency-like quantity is an angular
/// frequency in rad/s (energies divided by ħ, temperatures multiplied by k_B/ħ).
struct ModelParams {
    double omega = 0.0;       // tunnelling splitting Ω
    double temperature = 0.0; // k_B T / ħ
    double cutoff = 0.0;      // ω_c = v / 4L, used by the short-time integral
    double rate_cutoff = 0.0; // v / 2L, exponential scale of the Markovian spectral function
    double alpha = 0.0;       // ohmic coupling prefactor
    double amplitude = 0.0;   // short-time amplitude A

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

inline void validate(const PhysicalParams& p) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw DomainError(what);
    };
    require(std::isfinite(p.dielectric_constant) && p.dielectric_constant > 0,
            "dielectric_constant must be > 0");
    require(std::isfinite(p.edge_velocity) && p.edge_velocity > 0, "edge_velocity must be > 0");
    require(std::isfinite(p.splitting) && p.splitting > 0, "splitting must be > 0");
    require(std::isfinite(p.temperature) && p.temperature >= 0, "temperature must be >= 0");
    // d = 0 is accepted and switches the coupling off.
    require(std::isfinite(p.antidot_separation) && p.antidot_separation >= 0,
            "antidot_separation must be >= 0");
    require(std::isfinite(p.qubit_edge_distance) && p.qubit_edge_distance > 0,
            "qubit_edge_distance must be > 0");
    require(p.filling_denominator >= 1, "filling_denominator must be a positive integer");
    require(p.bias == 0.0, "unsupported: only the unbiased qubit (bias = 0) is modelled");
}

inline void validate(const ModelParams& m) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw DomainError(what);
    };
    require(std::isfinite(m.omega) && m.omega > 0, "omega must be finite and > 0");
    require(std::isfinite(m.temperature) && m.temperature >= 0, "temperature must be finite and >= 0");
    require(std::isfinite(m.cutoff) && m.cutoff > 0, "cutoff must be finite and > 0");
    require(std::isfinite(m.rate_cutoff) && m.rate_cutoff > 0, "rate_cutoff must be finite and > 0");
    require(std::isfinite(m.alpha) && m.alpha >= 0, "alpha must be finite and >= 0");
    require(std::isfinite(m.amplitude) && m.amplitude >= 0, "amplitude must be finite and >= 0");
}

namespace params {

namespace detail {

// e² / (2 ε_r ε₀ ħ v), the dimensionless Coulomb-to-edge coupling.
inline double coulomb_factor(const PhysicalParams& p) {
    using namespace constants;
    return elementary_charge * elementary_charge /
           (2.0 * p.dielectric_constant * vacuum_permittivity * reduced_planck * p.edge_velocity);
}

inline double cube(int m) {
    const double md = m;
    return md * md * md;
}

} // namespace detail

/// Converts laboratory parameters into the internal angular-frequency set.
///
/// alpha is normalised so that the zero-temperature Markovian rate
/// alpha * Ω * exp(-Ω / rate_cutoff) reproduces the conventional-units rate
/// returned by dissipation_rate_conventional().
inline ModelParams to_model(const PhysicalParams& p) {
    validate(p);
    const double geometry = p.antidot_separation / p.qubit_edge_distance;
    const double coulomb = detail::coulomb_factor(p);
    const double m3 = detail::cube(p.filling_denominator);

    ModelParams m;
    m.omega = constants::kelvin_to_rad_per_s(p.splitting);
    m.temperature = constants::kelvin_to_rad_per_s(p.temperature);
    m.cutoff = p.edge_velocity / (4.0 * p.qubit_edge_distance);
    m.rate_cutoff = p.edge_velocity / (2.0 * p.qubit_edge_distance);
    m.alpha = geometry * geometry * coulomb * coulomb / (2.0 * constants::pi * m3);
    const double a = geometry * coulomb / constants::pi;
    m.amplitude = 2.0 / m3 * a * a;

    if (!std::isfinite(m.omega) || !std::isfinite(m.temperature) || !std::isfinite(m.cutoff) ||
        !std::isfinite(m.alpha) || !std::isfinite(m.amplitude) ||
        !std::isfinite(std::exp(-m.omega / m.rate_cutoff))) {
        throw DomainError("model parameters are not finite for the given laboratory inputs");
    }
    return m;
}

struct ConventionalRate {
    double gamma = 0.0; // 1/s
    double ratio = 0.0; // ħΓ/Ω
};

/// Zero-temperature dissipation rate in conventional SI units:
/// Γ = (d/L)² (e²/2εε₀ħv)² Ω/(2π m³ ħ) exp(-2ΩL/ħv), with Ω an energy in joules.
inline ConventionalRate dissipation_rate_conventional(const PhysicalParams& p) {
    using namespace constants;
    validate(p);
    const double d_over_l = p.antidot_separation / p.qubit_edge_distance;
    const double coulomb = detail::coulomb_factor(p);
    const double splitting_joule = boltzmann * p.splitting;
    const double gamma = d_over_l * d_over_l * coulomb * coulomb * splitting_joule /
                         (2.0 * pi * detail::cube(p.filling_denominator) * reduced_planck) *
                         std::exp(-2.0 * splitting_joule * p.qubit_edge_distance /
                                  (reduced_planck * p.edge_velocity));
    if (!std::isfinite(gamma)) throw DomainError("dissipation rate is not finite");
    return {gamma, reduced_planck * gamma / splitting_joule};
}

} // namespace params
} // namespace anyondec
