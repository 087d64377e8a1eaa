#pragma once

#include <numbers>

/// CODATA 2018 values in SI units.
namespace anyondec::constants {

inline constexpr double pi = std::numbers::pi;

/// e [C] (exact)
inline constexpr double elementary_charge = 1.602176634e-19;
/// ε₀ [F/m]
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
/// ħ [J·s]
inline constexpr double reduced_planck = 1.054571817e-34;
/// k_B [J/K] (exact)
inline constexpr double boltzmann = 1.380649e-23;

/// Converts a temperature-expressed energy [K] to an angular frequency [rad/s].
constexpr double kelvin_to_rad_per_s(double kelvin) noexcept {
    return boltzmann * kelvin / reduced_planck;
}

} // namespace anyondec::constants
