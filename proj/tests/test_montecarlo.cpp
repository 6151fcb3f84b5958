#include <cmath>
#include <cstdint>

#include <gtest/gtest.h>

#include "rwlab/montecarlo.hpp"

using namespace rwlab;
using namespace rwlab::montecarlo;

TEST(SplitMix64, ReferenceVector)
{
    SplitMix64 rng(1234567);
    const std::uint64_t expected[] = {6457827717110365317ULL, 3203168211198807973ULL, 9817491932198370423ULL,
                                      4593380528125082431ULL, 16408922859458223821ULL};
    for (auto e : expected) EXPECT_EQ(rng.next(), e);
}

TEST(SplitMix64, WalkerStreamsDiffer)
{
    auto a = SplitMix64::for_walker(42, 0);
    auto b = SplitMix64::for_walker(42, 1);
    auto c = SplitMix64::for_walker(43, 0);
    const auto va = a.next();
    EXPECT_NE(va, b.next());
    EXPECT_NE(va, c.next());
    EXPECT_EQ(SplitMix64::for_walker(42, 0).next(), va);
}

TEST(Simulate, ZeroStepsKeepsEveryoneHome)
{
    const auto h = simulate(1000, 0, 9);
    ASSERT_EQ(h.site_count(), 1u);
    EXPECT_EQ(h.count(0), 1000u);
}

TEST(Simulate, TwoStepsCentralFraction)
{
    const auto h = simulate(1'000'000, 2, 42);
    EXPECT_EQ(h.total(), 1'000'000u);
    const double p0 = double(h.count(0)) / 1e6;
    EXPECT_LT(std::abs(p0 - 0.5), 4.0 * 5e-4);
    EXPECT_EQ(h.count(1), 0u);
    EXPECT_EQ(h.count(4), 0u);
}

TEST(Simulate, IndependentOfThreadCount)
{
    SimulationOptions one, many;
    one.threads = 1;
    many.threads = 7;
    const auto a = simulate(200'001, 57, 2024, one);
    const auto b = simulate(200'001, 57, 2024, many);
    EXPECT_EQ(a.raw(), b.raw());
}

TEST(Simulate, MemoryBound)
{
    SimulationOptions opt;
    opt.threads = 1;
    opt.memory_limit_bytes = 1024;
    EXPECT_THROW(simulate(10, 1000, 1, opt), ResourceError);
    EXPECT_THROW(simulate(0, 10, 1), DomainError);
}

TEST(Simulate, Seed42Goldens)
{
    const auto h = simulate(1'000'000, 100, 42);
    EXPECT_EQ(h.count(0), 79664u);
    EXPECT_EQ(h.count(2), 77885u);
    EXPECT_EQ(h.count(10), 48493u);
    EXPECT_EQ(h.count(-10), 48698u);
    std::uint64_t second_moment = 0;
    for (std::size_t k = 0; k < h.site_count(); ++k)
        second_moment += h.count_at_index(k) * std::uint64_t(h.site(k) * h.site(k));
    EXPECT_EQ(second_moment, 99939248u);

    const auto cmp = histogram_compare(h);
    EXPECT_LT(cmp.max_z, 4.5);
    EXPECT_GT(cmp.p_value, 1e-3);
    EXPECT_NEAR(cmp.max_z, 4.2257040418563738, 1e-12);
    EXPECT_NEAR(cmp.chi2, 44.642522588199931, 1e-9);
    EXPECT_EQ(cmp.dof, 42);
}

TEST(HistogramCompare, PerfectHistogramScoresLow)
{
    McHistogram h(100, 1'000'000, 0);
    for (std::size_t k = 0; k < h.site_count(); ++k)
        h.raw()[k] = std::uint64_t(std::llround(1e6 * site_probability(h.site(k), 100)));
    const auto cmp = histogram_compare(h);
    EXPECT_LT(cmp.max_z, 1.0);
    EXPECT_GT(cmp.p_value, 0.99);
}

TEST(HistogramCompare, DetectsCorruption)
{
    auto h = simulate(1'000'000, 100, 42);
    h.raw()[50] *= 2;  // x = 0
    const auto cmp = histogram_compare(h);
    EXPECT_GT(cmp.max_z, 100.0);
    EXPECT_LT(cmp.p_value, 1e-12);
}
