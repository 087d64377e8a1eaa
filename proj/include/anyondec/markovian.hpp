#pragma once

#include <cmath>
#include <numeric>
#include <span>
#include <vector>

#include "anyondec/bath.hpp"
#include "anyondec/errors.hpp"
#include "anyondec/ode.hpp"
#include "anyondec/params.hpp"

namespace anyondec {

/// Bloch vector of ρ = ½(1 + xσx + yσy + zσz) at time t (seconds).
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;
    double t = 0.0;

    double norm_squared() const noexcept { return x * x + y * y + z * z; }

    friend bool operator==(const BlochState&, const BlochState&) = default;
};

/// Slack on |r| ≤ 1 before a state counts as unphysical.
inline constexpr double bloch_norm_tolerance = 1e-9;

inline bool is_physical(const BlochState& s) noexcept {
    return s.norm_squared() <= 1.0 + bloch_norm_tolerance;
}

struct Trajectory {
    std::vector<BlochState> states;
    RateSet rates;
    ModelParams model;
};

enum class IntegratorMethod { Adaptive, FixedRK4 };

struct IntegratorSettings {
    IntegratorMethod method = IntegratorMethod::Adaptive;
    double step = 0.0; // seconds; required for FixedRK4
    double rel_tol = 1e-11;
    double abs_tol = 1e-12;
    long max_steps = 10'000'000;
};

namespace markovian {

struct Derivative {
    double dx = 0.0;
    double dy = 0.0;
    double dz = 0.0;
};

/// ẋ = -Γx + λ,  ẏ = (Ω + ω)z - Γy,  ż = -Ωy
inline Derivative bloch_derivative(const BlochState& s, const RateSet& r, const ModelParams& m) {
    return {-r.gamma * s.x + r.lambda, (m.omega + r.shift) * s.z - r.gamma * s.y, -m.omega * s.y};
}

/// Exact solution at time t. The (y, z) block is exp(Mτ) for
/// M = [[-Γ, Ω+ω], [-Ω, 0]], written as e^{-Γτ/2}(C·1 + S·(M + Γ/2)) which stays
/// well defined through the repeated-eigenvalue case.
inline BlochState closed_form(const BlochState& s0, const RateSet& r, const ModelParams& m, double t) {
    const double tau = t - s0.t;
    const double gamma = r.gamma;
    const double w = m.omega + r.shift;

    BlochState s;
    s.t = t;
    if (gamma > 0.0) {
        const double target = r.lambda / gamma;
        s.x = target + (s0.x - target) * std::exp(-gamma * tau);
    } else {
        s.x = s0.x + r.lambda * tau;
    }

    const double half = -0.5 * gamma;
    const double q = 0.25 * gamma * gamma - m.omega * w;
    double c = 0.0; // e^{half τ} · cosh/cos part
    double sn = 0.0; // e^{half τ} · sinh/sin part / sqrt|q|
    if (q > 0.0) {
        const double root = std::sqrt(q);
        const double slow = std::exp((half + root) * tau);
        const double fast = std::exp((half - root) * tau);
        c = 0.5 * (slow + fast);
        sn = fast * std::expm1(2.0 * root * tau) / (2.0 * root);
    } else if (q < 0.0) {
        const double freq = std::sqrt(-q);
        const double env = std::exp(half * tau);
        c = env * std::cos(freq * tau);
        sn = env * std::sin(freq * tau) / freq;
    } else {
        const double env = std::exp(half * tau);
        c = env;
        sn = env * tau;
    }
    s.y = c * s0.y + sn * (0.5 * -gamma * s0.y + w * s0.z);
    s.z = c * s0.z + sn * (-m.omega * s0.y + 0.5 * gamma * s0.z);
    return s;
}

/// Integrates the Bloch equations and samples the solution on `grid`.
inline Trajectory evolve(const BlochState& s0, const RateSet& r, const ModelParams& m,
                         std::span<const double> grid, const IntegratorSettings& cfg = {}) {
    if (grid.empty()) throw DomainError("evolve: empty time grid");
    if (grid.front() != s0.t) throw DomainError("evolve: grid must start at the initial time");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("evolve: grid must be strictly increasing");
    }
    if (cfg.method == IntegratorMethod::FixedRK4 && !(cfg.step > 0)) {
        throw DomainError("evolve: fixed-step integration needs step > 0");
    }

    auto rhs = [&](double, const ode::State<3>& v) {
        const auto d = bloch_derivative({v[0], v[1], v[2], 0.0}, r, m);
        return ode::State<3>{d.dx, d.dy, d.dz};
    };
    const ode::AdaptiveSettings adaptive{cfg.rel_tol, cfg.abs_tol, cfg.max_steps};

    Trajectory out;
    out.rates = r;
    out.model = m;
    out.states.reserve(grid.size());
    out.states.push_back(s0);

    ode::State<3> v{s0.x, s0.y, s0.z};
    double step = 1e-3 / (m.omega + std::abs(r.shift) + r.gamma);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (cfg.method == IntegratorMethod::Adaptive) {
            v = ode::dormand_prince<3>(rhs, v, grid[i - 1], grid[i], adaptive, step);
        } else {
            v = ode::rk4<3>(rhs, v, grid[i - 1], grid[i], cfg.step);
        }
        out.states.push_back({v[0], v[1], v[2], grid[i]});
    }
    return out;
}

/// ½(1 + x² + y² + z²); not clamped.
inline double purity(const BlochState& s) { return 0.5 * (1.0 + s.norm_squared()); }

/// Fixed point (λ/Γ, 0, 0) = (tanh(Ω/2T), 0, 0).
inline BlochState steady_state(const RateSet& r, const ModelParams&) {
    if (!(r.gamma > 0.0)) throw DomainError("steady_state: no unique steady state when gamma = 0");
    return {r.lambda / r.gamma, 0.0, 0.0, 0.0};
}

/// Single-exponential description of the purity decay,
/// purity(t) ≈ ½[1 + tanh²(Ω/2T) + C e^{-Γt}].
struct DecayFit {
    double coefficient = 0.0; // least-squares C over t ∈ [0, 3/Γ]
    double intercept = 0.0;   // exact value of the decaying term at t = 0
    double residual = 0.0;    // RMS misfit of the single exponential
};

/// Fits C for an initial state on the x axis, where the purity is
/// ½[1 + x(t)²] with x(t) = τ + (x₀ - τ)e^{-Γt}; the exact decaying part is
/// 2τ(x₀ - τ)e^{-Γt} + (x₀ - τ)²e^{-2Γt}, so a single exponential is only an approximation.
inline DecayFit decay_constant_C(const BlochState& s0, const ModelParams& m, const RateSet& r,
                                 int samples = 301) {
    if (s0.y != 0.0 || s0.z != 0.0) {
        throw DomainError("decay_constant_C: initial state must lie on the x axis");
    }
    if (!(r.gamma > 0.0)) throw DomainError("decay_constant_C: gamma must be > 0");
    if (samples < 2) throw DomainError("decay_constant_C: need at least two samples");

    const double tanh_sq = std::pow(r.lambda / r.gamma, 2);
    const double window = 3.0 / r.gamma;
    std::vector<double> decaying(static_cast<std::size_t>(samples));
    std::vector<double> basis(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double t = s0.t + window * i / (samples - 1);
        const double p = purity(closed_form(s0, r, m, t));
        decaying[static_cast<std::size_t>(i)] = 2.0 * p - 1.0 - tanh_sq;
        basis[static_cast<std::size_t>(i)] = std::exp(-r.gamma * (t - s0.t));
    }

    DecayFit fit;
    const double num = std::inner_product(decaying.begin(), decaying.end(), basis.begin(), 0.0);
    const double den = std::inner_product(basis.begin(), basis.end(), basis.begin(), 0.0);
    fit.coefficient = num / den;
    fit.intercept = decaying.front();
    double sq = 0.0;
    for (std::size_t i = 0; i < decaying.size(); ++i) {
        const double d = decaying[i] - fit.coefficient * basis[i];
        sq += d * d;
    }
    fit.residual = std::sqrt(sq / static_cast<double>(decaying.size()));
    return fit;
}

} // namespace markovian
} // namespace anyondec
