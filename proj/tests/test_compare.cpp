#include <cmath>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "anyondec/compare.hpp"

using namespace anyondec;

namespace {

PhysicalParams operating_point(double temperature_K) {
    PhysicalParams p;
    p.temperature = temperature_K;
    return p;
}

GridSpec gamma_grid(const PhysicalParams& p, int points = 120) {
    const double gamma = bath::rate_gamma(params::to_model(p));
    return {1e-3 / gamma, 1e3 / gamma, points, Spacing::Logarithmic};
}

} // namespace

TEST(Grid, LinearAndLogarithmic) {
    auto g = compare::make_grid({0.0, 2.0, 5, Spacing::Linear});
    EXPECT_EQ(g, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
    g = compare::make_grid({1e-2, 1e2, 5, Spacing::Logarithmic});
    EXPECT_NEAR(g[1], 1e-1, 1e-15);
    EXPECT_NEAR(g[2], 1.0, 1e-15);
    EXPECT_EQ(g.back(), 1e2);
    EXPECT_THROW(compare::make_grid({0.0, 1.0, 5, Spacing::Logarithmic}), DomainError);
    EXPECT_THROW(compare::make_grid({1.0, 1.0, 5, Spacing::Linear}), DomainError);
    EXPECT_THROW(compare::make_grid({0.0, 1.0, 1, Spacing::Linear}), DomainError);
}

TEST(Compare, ZeroCouplingIsFlat) {
    auto p = operating_point(0.01);
    p.antidot_separation = 0.0;
    const auto report = compare::compare(p, {0.0, 0.0, 1.0, 0.0}, {1e-12, 1e-6, 50, Spacing::Logarithmic});
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        EXPECT_NEAR(report.markovian[i], 1.0, 1e-12);
        EXPECT_EQ(report.shorttime_exact[i], 1.0);
    }
    EXPECT_FALSE(report.divergence_time.has_value());
}

TEST(Compare, OperatingPointReport) {
    const auto p = operating_point(0.01);
    const auto report = compare::compare(p, {0.0, 0.0, 1.0, 0.0}, gamma_grid(p));
    const std::size_t n = report.times.size();
    ASSERT_EQ(n, 120u);
    EXPECT_EQ(report.markovian.size(), n);
    EXPECT_EQ(report.shorttime_exact.size(), n);
    EXPECT_EQ(report.shorttime_asymptotic.size(), n);
    EXPECT_EQ(report.regimes.size(), n);
    EXPECT_EQ(report.abs_difference.size(), n);

    EXPECT_NEAR(report.markovian.front(), 1.0, 1e-3);
    EXPECT_NEAR(report.shorttime_exact.front(), 1.0, 1e-3);
    const double th = std::tanh(report.model.omega / (2.0 * report.model.temperature));
    EXPECT_DOUBLE_EQ(report.markovian_limit, 0.5 * (1.0 + th * th));
    EXPECT_NEAR(report.markovian.back(), report.markovian_limit, 1e-9);
    EXPECT_EQ(report.shorttime_limit, 0.5);

    // Short-time curve keeps decaying towards ½ while the Markovian one saturates.
    EXPECT_LT(report.shorttime_exact.back(), report.shorttime_exact[n / 2]);
    ASSERT_TRUE(report.divergence_time.has_value());
    EXPECT_GT(*report.divergence_time, report.times.front());
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(report.shorttime_exact[i], 0.5);
        EXPECT_LE(report.shorttime_exact[i], 1.0);
        if (report.times[i] < *report.divergence_time) EXPECT_LE(report.abs_difference[i], report.threshold);
    }
}

TEST(Compare, BothCurvesStartAtOneForPureStateFromZero) {
    const auto p = operating_point(0.01);
    const auto report = compare::compare(p, {0.0, 0.0, 1.0, 0.0}, {0.0, 1e-9, 11, Spacing::Linear});
    EXPECT_NEAR(report.markovian.front(), 1.0, 1e-10);
    EXPECT_NEAR(report.shorttime_exact.front(), 1.0, 1e-10);
}

TEST(Compare, DeterministicAcrossThreadCounts) {
    const auto p = operating_point(0.05);
    CompareSettings serial;
    CompareSettings threaded;
    threaded.jobs = 4;
    const auto a = compare::compare(p, {}, gamma_grid(p, 60), serial);
    const auto b = compare::compare(p, {}, gamma_grid(p, 60), threaded);
    EXPECT_EQ(a.shorttime_exact, b.shorttime_exact);
    EXPECT_EQ(a.markovian, b.markovian);
    EXPECT_EQ(a.divergence_time, b.divergence_time);
}

TEST(Compare, ErrorsNameTheFailingStage) {
    auto p = operating_point(0.01);
    p.edge_velocity = -1.0;
    try {
        compare::compare(p, {}, {1e-9, 1e-6, 10, Spacing::Logarithmic});
        FAIL();
    } catch (const DomainError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("params: ", 0), 0u) << e.what();
    }

    try {
        compare::compare(operating_point(0.01), {}, {1e-9, 1.0, 10, Spacing::Logarithmic});
        FAIL();
    } catch (const RangeError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("shorttime: ", 0), 0u) << e.what();
    }

    EXPECT_THROW(compare::compare(operating_point(0.01), {1.0, 0.0, 1.0, 0.0}, {1e-9, 1e-6, 10}), DomainError);
}
