#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "anyondec/shorttime.hpp"

using namespace anyondec;

namespace {

ModelParams model(double temperature, double amplitude) {
    ModelParams m;
    m.omega = 1.0;
    m.temperature = temperature;
    m.cutoff = 1.0;
    m.rate_cutoff = 2.0;
    m.alpha = 0.1;
    m.amplitude = amplitude;
    return m;
}

// Amplitude of the physical operating point, small enough that every regime
// stays close to the fully coherent value.
constexpr double operating_amplitude = 1.6e-3;

double excess(double purity) { return purity - 0.5; }

} // namespace

TEST(BSquared, Examples) {
    EXPECT_EQ(shorttime::b_squared(0.0, model(0.1, 0.5)), 0.0);
    EXPECT_EQ(shorttime::b_squared(37.0, model(0.1, 0.0)), 0.0);
    EXPECT_NEAR(shorttime::b_squared(1.0, model(0.0, 0.1)), 0.0402359478108525094, 1e-13);
    EXPECT_THROW(shorttime::b_squared(-1.0, model(0.0, 0.0)), DomainError);
}

TEST(PurityShortTime, Examples) {
    EXPECT_EQ(shorttime::purity_shorttime(0.0, model(0.3, 1.0)), 1.0);
    EXPECT_NEAR(shorttime::purity_shorttime(1.0, model(0.0, 0.1)), 0.961340417295294160, 1e-13);
    EXPECT_NEAR(shorttime::purity_from_exponent(40.0), 0.5, 1e-30);
    // Strictly above ½ for as long as e^{-2B²} is resolvable next to ½.
    EXPECT_GT(shorttime::purity_from_exponent(17.0), 0.5);
    EXPECT_EQ(shorttime::purity_from_exponent(20.0), 0.5);
}

TEST(PurityShortTime, StaysAboveHalfAndDecreasesInTime) {
    const auto m = model(0.01, 1.0);
    double previous = 1.0;
    for (double e = -3.0; e <= 6.0; e += 0.5) {
        const auto point = shorttime::exact_point(std::pow(10.0, e), m);
        const double p = point.purity;
        EXPECT_GE(p, 0.5);
        if (point.b_squared < 17.0) EXPECT_GT(p, 0.5);
        EXPECT_LE(p, 1.0);
        EXPECT_LE(p, previous);
        previous = p;
    }
}

TEST(PurityShortTime, MonotoneInAmplitudeAndTemperature) {
    for (double t : {0.05, 3.0, 400.0}) {
        EXPECT_LT(shorttime::purity_shorttime(t, model(0.01, 0.2)), shorttime::purity_shorttime(t, model(0.01, 0.1)));
        double previous = 1.0;
        for (double temp : {0.0, 1e-3, 1e-2, 0.1, 1.0}) {
            const double p = shorttime::purity_shorttime(t, model(temp, 0.1));
            EXPECT_LE(p, previous * (1.0 + 1e-15));
            previous = p;
        }
    }
}

TEST(ExactPoint, CarriesRegimeAndMethod) {
    const auto p = shorttime::exact_point(5.0, model(0.01, 0.1));
    EXPECT_EQ(p.regime, Regime::Intermediate);
    EXPECT_EQ(p.method, ShortTimeMethod::ExactQuadrature);
    EXPECT_DOUBLE_EQ(p.purity, shorttime::purity_from_exponent(p.b_squared));
}

TEST(PurityAsymptotic, BranchExamples) {
    auto p = shorttime::purity_asymptotic(1e-3, model(0.0, 1.0));
    EXPECT_EQ(p.regime, Regime::Short);
    EXPECT_EQ(p.method, ShortTimeMethod::Asymptotic);
    EXPECT_DOUBLE_EQ(p.purity, 0.5 * (1.0 + std::exp(-2e-6)));

    p = shorttime::purity_asymptotic(1e3, model(0.0, 1.0));
    EXPECT_EQ(p.regime, Regime::Intermediate);
    EXPECT_NEAR(p.purity, 0.5 * (1.0 + 1e-3), 1e-16);

    p = shorttime::purity_asymptotic(1e4, model(1e-2, 0.5));
    EXPECT_EQ(p.regime, Regime::Long);
    EXPECT_DOUBLE_EQ(p.purity, 0.5 * (1.0 + std::exp(-2.0 * 0.5 * 1e-2 * 1e4)));
}

TEST(PurityAsymptotic, LongRegimeUnreachableAtZeroTemperature) {
    for (double t : {1.0, 1e3, 1e9}) EXPECT_EQ(shorttime::purity_asymptotic(t, model(0.0, 1.0)).regime, Regime::Intermediate);
}

TEST(PurityAsymptotic, ExponentIsConsistentWithPurity) {
    for (double t : {1e-2, 10.0, 1e3}) {
        const auto p = shorttime::purity_asymptotic(t, model(1e-2, 0.3));
        EXPECT_NEAR(p.purity, shorttime::purity_from_exponent(p.b_squared), 1e-15);
    }
}

TEST(Crossovers, Examples) {
    ModelParams m = model(0.0, 1.0);
    m.cutoff = 1e12;
    auto c = shorttime::crossover_times(m);
    EXPECT_DOUBLE_EQ(c.short_end, 1e-12);
    EXPECT_FALSE(c.long_start.has_value());

    m.temperature = 1e-3 * m.cutoff;
    c = shorttime::crossover_times(m);
    ASSERT_TRUE(c.long_start.has_value());
    EXPECT_NEAR(*c.long_start / c.short_end, 1e3, 1e-9);
}

TEST(Continuity, ShortRegime) {
    for (double ct : {1e-3, 3e-3, 1e-2}) {
        const auto m = model(1e-3, operating_amplitude);
        const double exact = shorttime::purity_shorttime(ct, m);
        const double asym = shorttime::purity_asymptotic(ct, m).purity;
        EXPECT_NEAR(excess(exact) / excess(asym), 1.0, 0.05);
    }
}

TEST(Continuity, IntermediateRegime) {
    for (double ct : {1e2, 1e3, 1e4}) {
        const auto m = model(1e-6, operating_amplitude);
        const double exact = shorttime::purity_shorttime(ct, m);
        const auto asym = shorttime::purity_asymptotic(ct, m);
        ASSERT_EQ(asym.regime, Regime::Intermediate);
        EXPECT_NEAR(excess(exact) / excess(asym.purity), 1.0, 0.05);
    }
}

TEST(Continuity, LongRegimeAfterMeasuredCoefficient) {
    // The quadrature grows as κ T t with κ measured near π/2; the asymptotic
    // branch exponent A·T·t is rescaled by κ before comparing.
    const double temp = 1e-2;
    const auto m = model(temp, operating_amplitude);
    const double t1 = 1e3 / temp;
    const double t2 = 2e3 / temp;
    const double kappa = (bath::integral_I(t2, m) - bath::integral_I(t1, m)) / (temp * (t2 - t1));
    EXPECT_NEAR(kappa / std::numbers::pi, 0.5, 0.01);

    for (double t : {1e2 / temp, 1e3 / temp, 3e3 / temp}) {
        const auto asym = shorttime::purity_asymptotic(t, m);
        ASSERT_EQ(asym.regime, Regime::Long);
        const double rescaled = shorttime::purity_from_exponent(kappa * asym.b_squared);
        const double exact = shorttime::purity_shorttime(t, m);
        EXPECT_NEAR(excess(exact) / excess(rescaled), 1.0, 0.05) << "t=" << t;
    }
}
