#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "rwlab/deviation.hpp"

using namespace rwlab;
using namespace rwlab::deviation;

namespace {

// composite trapezoid with n panels on [0, t]
double trapezoid_l2(const Metric& m, double t, long n)
{
    long double s = 0.0L;
    const double h = t / double(n);
    for (long i = 0; i <= n; ++i) {
        const double x = double(i) * h;
        const double d = quantity_value(m.kind, m.first, x, t) - quantity_value(m.kind, m.second, x, t);
        s += (i == 0 || i == n ? 0.5L : 1.0L) * d * d;
    }
    return std::sqrt(double(s * h));
}

double grid_max(Model m, double t, int n)
{
    double best = 0.0;
    for (int i = 1; i < n; ++i) best = std::max(best, std::abs(kernels::gradient(m, t * i / n, t)));
    return best;
}

}  // namespace

TEST(Metrics, NamesRoundTrip)
{
    const auto all = standard_metrics();
    ASSERT_EQ(all.size(), 9u);
    EXPECT_EQ(metric_name(all[0]), "rw-te");
    EXPECT_EQ(metric_name(all[4]), "grad:rw-g");
    EXPECT_EQ(metric_name(all[8]), "flux:te-g");
    for (const auto& m : all) {
        const auto back = parse_metric(metric_name(m));
        EXPECT_EQ(back.kind, m.kind);
        EXPECT_EQ(back.first, m.first);
        EXPECT_EQ(back.second, m.second);
    }
    EXPECT_THROW(parse_metric("rw+te"), UnknownMetric);
    EXPECT_THROW(parse_metric("grad:rw-xx"), UnknownMetric);
}

TEST(L2Deviation, SelfPairsVanish)
{
    for (Quantity q : {Quantity::Density, Quantity::Gradient, Quantity::Flux})
        for (Model m : {Model::RW, Model::G, Model::TE}) EXPECT_EQ(l2_deviation({q, m, m}, 50.0), 0.0);
}

TEST(L2Deviation, SymmetricInPairOrder)
{
    for (Quantity q : {Quantity::Density, Quantity::Gradient}) {
        const double ab = l2_deviation({q, Model::RW, Model::TE}, 80.0);
        EXPECT_NEAR(l2_deviation({q, Model::TE, Model::RW}, 80.0), ab, 1e-12 * ab);
    }
}

TEST(L2Deviation, DenseTrapezoidGolden)
{
    const Metric m{Quantity::Density, Model::RW, Model::TE};
    // 1e5-panel trapezoid on [0, 100]; frozen
    const double golden = 4.1525392151798928e-4;
    EXPECT_NEAR(trapezoid_l2(m, 100.0, 100000), golden, 1e-15);
    EXPECT_NEAR(l2_deviation(m, 100.0), golden, 1e-9 * golden);
}

TEST(L2Deviation, GradientAgainstTrapezoid)
{
    const Metric m{Quantity::Gradient, Model::RW, Model::G};
    const double ref = trapezoid_l2(m, 100.0, 100000);
    EXPECT_NEAR(l2_deviation(m, 100.0), ref, 1e-8 * ref);
}

TEST(L2Deviation, DensityDecayFasterThanInverseTime)
{
    const Metric m{Quantity::Density, Model::RW, Model::G};
    const auto series = deviation_series(m, log_grid(100.0, 1000.0, 8));
    const auto fit = fit_power_law(series, {100.0, 1000.0});
    EXPECT_LT(fit.exponent, -1.0);
    EXPECT_NEAR(fit.exponent, -1.25, 0.02);
}

TEST(PeakDifference, ThreeHalvesScaling)
{
    const Metric m{Quantity::Density, Model::RW, Model::G};
    const double ratio = peak_difference(m, 30.0) / peak_difference(m, 100.0);
    EXPECT_NEAR(ratio / std::pow(100.0 / 30.0, 1.5), 1.0, 0.15);
}

TEST(LogGrid, EndpointsAndSpacing)
{
    const auto g = log_grid(30.0, 3000.0, 40);
    ASSERT_EQ(g.size(), 40u);
    EXPECT_EQ(g.front(), 30.0);
    EXPECT_EQ(g.back(), 3000.0);
    for (std::size_t i = 2; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], g[1] / g[0], 1e-12);
    EXPECT_THROW(log_grid(0.0, 10.0, 5), DomainError);
}

TEST(PowerLawFit, ExactSyntheticData)
{
    DeviationSeries s{"synthetic", {}};
    for (double t : log_grid(30.0, 3000.0, 40)) s.samples.push_back({t, 3.7 * std::pow(t, -1.5)});
    const auto fit = fit_power_law(s, {30.0, 3000.0});
    EXPECT_NEAR(fit.exponent, -1.5, 1e-12);
    EXPECT_NEAR(fit.log_amplitude, std::log(3.7), 1e-11);
    EXPECT_LT(fit.rms_residual, 1e-12);

    // scaling changes only the amplitude
    DeviationSeries scaled = s;
    for (auto& x : scaled.samples) x.value *= 1e-7;
    EXPECT_NEAR(fit_power_law(scaled, {30.0, 3000.0}).exponent, fit.exponent, 1e-12);
}

TEST(PowerLawFit, Errors)
{
    DeviationSeries s{"short", {}};
    for (double t : {10.0, 20.0, 30.0, 40.0}) s.samples.push_back({t, 1.0 / t});
    EXPECT_THROW(fit_power_law(s, {1.0, 100.0}), FitError);
    s.samples.push_back({50.0, 0.0});
    EXPECT_THROW(fit_power_law(s, {1.0, 100.0}), FitError);
}

TEST(CentralValues, TwoTermExpansions)
{
    const auto rw = central_asymptotics(Model::RW, 100.0);
    const auto te = central_asymptotics(Model::TE, 100.0);
    const auto g = central_asymptotics(Model::G, 100.0);
    EXPECT_NEAR(rw.exact, rw.asymptotic, 1e-6);
    EXPECT_NEAR(te.exact, te.asymptotic, 1e-6);
    EXPECT_EQ(g.exact, g.asymptotic);
    EXPECT_NEAR(rw.exact, 0.0397945, 1e-5);
    EXPECT_NEAR(te.exact, 0.0399441, 1e-5);
    EXPECT_NEAR(g.exact, 0.0398942, 1e-5);
    EXPECT_THROW(central_asymptotics(Model::RW, 5.0), DomainError);
}

TEST(CentralValues, DifferenceDecaysAsThreeHalves)
{
    const double target = 1.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi));
    for (double t : {1e2, 1e3, 1e4}) {
        const double v = std::abs(kernels::rho_rw(0.0, t) - kernels::rho_g(0.0, t)) * std::pow(t, 1.5);
        EXPECT_NEAR(v / target, 1.0, 0.05) << t;
    }
}

TEST(MaxGradient, GaussianLocationAndWidth)
{
    const auto s = max_gradient_stats(Model::G, 100.0);
    EXPECT_NEAR(s.x_max, 10.0, 1e-5);
    EXPECT_NEAR(s.g_max, std::exp(-0.5) / (std::sqrt(2.0 * std::numbers::pi) * 100.0), 1e-14);
    // roots of u exp(-u^2/2) = exp(-1/2)/2: 0.31910567, 1.92162289
    EXPECT_NEAR(s.halfwidth, 16.025172154870786, 1e-6);
}

TEST(MaxGradient, GridSearchOracle)
{
    for (Model m : {Model::RW, Model::TE, Model::G})
        for (double t : {100.0, 1000.0}) {
            const double ref = grid_max(m, t, 400000);
            const double got = max_gradient_stats(m, t).g_max;
            EXPECT_GE(got, ref * (1.0 - 1e-14));
            EXPECT_NEAR(got, ref, 1e-8 * ref) << to_string(m) << " " << t;
        }
}

TEST(MaxGradient, RatioCoefficientsApproachTheirLimits)
{
    // the large-t limits of t(1 - g_RW/g_TE) and t(1 - g_RW/g_G) are 3/4 and 1/2
    const auto c1 = gradient_ratio_coeffs(1000.0);
    const auto c2 = gradient_ratio_coeffs(2000.0);
    EXPECT_NEAR(c1.c_te, 0.75, 1e-3);
    EXPECT_NEAR(c1.c_g, 0.5, 1e-3);
    EXPECT_NEAR(c2.c_te, 0.75, 5e-4);
    EXPECT_NEAR(c2.c_g, 0.5, 5e-4);
    EXPECT_LT(std::abs(c2.c_te - 0.75), std::abs(c1.c_te - 0.75));
    EXPECT_THROW(gradient_ratio_coeffs(50.0), DomainError);
}

TEST(Applicability, Thresholds)
{
    EXPECT_TRUE(applicability(0.0, 1000.0).ok);
    EXPECT_FALSE(applicability(100.0, 100.0).ok);
    const auto a = applicability(5.0, 9.0);
    EXPECT_FALSE(a.ok);
    EXPECT_DOUBLE_EQ(a.time_ratio, 9.0);
}

TEST(RelativeFluctuation, Values)
{
    EXPECT_DOUBLE_EQ(relative_fluctuation(1000000), 1e-3);
    EXPECT_DOUBLE_EQ(relative_fluctuation(1), 1.0);
    EXPECT_DOUBLE_EQ(relative_fluctuation(4), 0.5);
    EXPECT_THROW(relative_fluctuation(0), DomainError);
}
