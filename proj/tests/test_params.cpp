#include <cmath>

#include <gtest/gtest.h>

#include "anyondec/bath.hpp"
#include "anyondec/params.hpp"

using namespace anyondec;

namespace {

PhysicalParams operating_point() {
    PhysicalParams p;
    p.dielectric_constant = 10.0;
    p.edge_velocity = 1e5;
    p.splitting = 0.1;
    p.temperature = 0.0;
    p.antidot_separation = 100e-9;
    p.qubit_edge_distance = 3e-6;
    p.filling_denominator = 3;
    return p;
}

} // namespace

TEST(Params, RatioIsOfOrderOneThousandth) {
    const auto r = params::dissipation_rate_conventional(operating_point());
    EXPECT_GT(r.ratio, 3e-4);
    EXPECT_LT(r.ratio, 3e-3);
}

TEST(Params, RatioMatchesHandComputation) {
    // Recomputed with 30-digit arithmetic from CODATA 2018 constants:
    // Γ = 7385925.0595561901 1/s, ħΓ/Ω = 5.64154134054492e-4.
    const auto r = params::dissipation_rate_conventional(operating_point());
    EXPECT_NEAR(r.ratio / 5.64154134054492e-4, 1.0, 1e-12);
    EXPECT_NEAR(r.gamma / 7385925.0595561901, 1.0, 1e-12);
}

TEST(Params, ToModelUnitsAndAmplitude) {
    const auto m = params::to_model(operating_point());
    EXPECT_NEAR(m.omega / 13092033920.720640688, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(m.cutoff, 1e5 / (4.0 * 3e-6));
    EXPECT_DOUBLE_EQ(m.rate_cutoff, 2.0 * m.cutoff);
    EXPECT_EQ(m.temperature, 0.0);
    EXPECT_NEAR(m.amplitude / 1.57563557888273422e-3, 1.0, 1e-12);
    EXPECT_NEAR(m.alpha / 1.23750128983817475e-3, 1.0, 1e-12);
}

TEST(Params, ZeroSeparationSwitchesCouplingOff) {
    auto p = operating_point();
    p.antidot_separation = 0.0;
    const auto m = params::to_model(p);
    EXPECT_EQ(m.alpha, 0.0);
    EXPECT_EQ(m.amplitude, 0.0);
    EXPECT_EQ(bath::rate_gamma(m), 0.0);
    EXPECT_EQ(params::dissipation_rate_conventional(p).gamma, 0.0);
}

TEST(Params, CubicFillingDependence) {
    auto p = operating_point();
    const double g3 = params::dissipation_rate_conventional(p).gamma;
    p.filling_denominator = 6;
    const double g6 = params::dissipation_rate_conventional(p).gamma;
    EXPECT_NEAR(g3 / g6, 8.0, 8.0 * 1e-14);
}

TEST(Params, VanishesForDistantEdge) {
    auto p = operating_point();
    const double near = params::dissipation_rate_conventional(p).gamma;
    p.qubit_edge_distance = 1e-3;
    EXPECT_LT(params::dissipation_rate_conventional(p).gamma / near, 1e-100);
    p.qubit_edge_distance = 1e-1;
    EXPECT_EQ(params::dissipation_rate_conventional(p).gamma, 0.0);
}

TEST(Params, MonotoneInDistanceAndFilling) {
    auto p = operating_point();
    double previous = std::numeric_limits<double>::infinity();
    for (double L = 0.5e-6; L <= 20e-6; L *= 1.2) {
        p.qubit_edge_distance = L;
        const double g = params::dissipation_rate_conventional(p).gamma;
        EXPECT_LT(g, previous) << "L = " << L;
        previous = g;
    }
    p = operating_point();
    previous = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 9; ++m) {
        p.filling_denominator = m;
        const double g = params::dissipation_rate_conventional(p).gamma;
        EXPECT_LT(g, previous) << "m = " << m;
        previous = g;
    }
}

TEST(Params, ConventionalRateAgreesWithBathRate) {
    for (double L : {1e-6, 3e-6, 7e-6}) {
        for (double splitting : {0.02, 0.1, 0.5}) {
            auto p = operating_point();
            p.qubit_edge_distance = L;
            p.splitting = splitting;
            const double conventional = params::dissipation_rate_conventional(p).gamma;
            const double internal = bath::rate_gamma(params::to_model(p));
            EXPECT_NEAR(internal / conventional, 1.0, 1e-12);
        }
    }
}

TEST(Params, Deterministic) {
    const auto a = params::to_model(operating_point());
    const auto b = params::to_model(operating_point());
    EXPECT_EQ(a, b);
}

TEST(Params, RejectsInvalidInput) {
    auto p = operating_point();
    p.bias = 0.01;
    EXPECT_THROW(params::to_model(p), DomainError);
    p = operating_point();
    p.edge_velocity = 0.0;
    EXPECT_THROW(params::to_model(p), DomainError);
    p = operating_point();
    p.filling_denominator = 0;
    EXPECT_THROW(params::to_model(p), DomainError);
    p = operating_point();
    p.temperature = -1.0;
    EXPECT_THROW(params::dissipation_rate_conventional(p), DomainError);
}

TEST(Params, RejectsNonFiniteModel) {
    auto p = operating_point();
    p.edge_velocity = 1e-300;
    EXPECT_THROW(params::to_model(p), DomainError);
}
