#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "rwlab/kernels.hpp"
#include "rwlab/quadrature.hpp"
#include "rwlab/transport.hpp"

using namespace rwlab;
using namespace rwlab::transport;

namespace {

// Net rightward crossings of the bond (k, k+1) during hop t -> t+1, averaged
// over all 2^(t+1) equally likely paths.
double enumerated_bond_flux(std::int64_t k, int t)
{
    std::int64_t net = 0;
    const int steps = t + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << steps); ++mask) {
        std::int64_t x = 0;
        for (int s = 0; s < t; ++s) x += (mask >> s) & 1u ? 1 : -1;
        const bool right = (mask >> t) & 1u;
        if (x == k && right) ++net;
        if (x == k + 1 && !right) --net;
    }
    return double(net) / std::ldexp(1.0, steps);
}

double enumerated_tail(double x_star, int t)
{
    double sum = 0.0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << t); ++mask) {
        std::int64_t x = 0;
        for (int s = 0; s < t; ++s) x += (mask >> s) & 1u ? 1 : -1;
        if (double(x) > x_star) sum += 1.0;
        if (double(x) == x_star) sum += 0.5;
    }
    return sum / std::ldexp(1.0, t);
}

}  // namespace

TEST(TailMass, ClosedFormsAndSymmetry)
{
    EXPECT_DOUBLE_EQ(tail_mass(Model::G, 0.0, 3.0), 0.5);
    EXPECT_NEAR(tail_mass(Model::TE, -1.0, 1.0), 1.0 - std::exp(-2.0), 1e-10);
    EXPECT_NEAR(tail_mass(Model::TE, 0.0, 40.0), 0.5 * (1.0 - std::exp(-80.0)), 1e-10);
    EXPECT_NEAR(tail_mass(Model::RW, 0.0, 40.0), 0.5, 1e-10);
    EXPECT_EQ(tail_mass(Model::RW, 41.0, 40.0), 0.0);
    EXPECT_THROW(tail_mass(Model::G, 0.0, 0.0), DomainError);
}

TEST(TailMass, LatticeHalfCellConvention)
{
    EXPECT_DOUBLE_EQ(lattice_tail_mass(0.0, 2), 0.5);
    for (int t = 0; t <= 10; ++t)
        for (double xs : {-3.0, -0.5, 0.0, 1.0, 2.0, 2.5, 7.0})
            EXPECT_NEAR(lattice_tail_mass(xs, t), enumerated_tail(xs, t), 1e-15) << xs << " " << t;
}

TEST(Flux, GaussianClosedForm)
{
    const double j11 = 0.5 * std::exp(-0.5) / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(j11, 0.1209854, 1e-7);
    // default step at t = 1 is 1e-2, an O(h^2) relative error near 2.5e-5
    EXPECT_NEAR(flux(Model::G, 1.0, 1.0).j, j11, 1e-4 * j11);
    EXPECT_NEAR(flux(Model::G, 1.0, 1.0, {}, {.h = std::nullopt, .richardson = true}).j, j11, 1e-9);
    for (double t : {0.5, 10.0, 1e3}) EXPECT_NEAR(flux(Model::G, 0.0, t).j, 0.0, 1e-15);
    // J_G = (x / 2t) rho_G; Richardson removes the O(h^2) part
    for (double t : {2.0, 50.0, 800.0}) {
        const double x = 1.3 * std::sqrt(t);
        const double exact = x / (2.0 * t) * kernels::rho_g(x, t);
        const double plain = flux(Model::G, x, t).j;
        const double rich = flux(Model::G, x, t, {}, {.h = std::nullopt, .richardson = true}).j;
        EXPECT_NEAR(plain, exact, 1e-6 * exact);
        EXPECT_LT(std::abs(rich - exact), std::abs(plain - exact));
    }
}

TEST(Flux, FickIdentityForGaussian)
{
    EXPECT_LE(std::abs(fick_check(1.0, 1.0)), 1e-8);
    EXPECT_LE(std::abs(fick_check(0.0, 5.0)), 1e-8);
    EXPECT_LE(std::abs(fick_check(10.0, 200.0)), 1e-8);
}

TEST(Flux, StepHalvingConvergesAtSecondOrder)
{
    for (Model m : {Model::RW, Model::TE}) {
        const double t = 60.0, x = 6.0;
        const double j1 = flux(m, x, t, {}, {.h = 0.4}).j;
        const double j2 = flux(m, x, t, {}, {.h = 0.2}).j;
        const double j4 = flux(m, x, t, {}, {.h = 0.1}).j;
        EXPECT_NEAR((j1 - j2) / (j2 - j4), 4.0, 0.2) << to_string(m);
    }
}

TEST(Flux, ConservationAgainstDirectMass)
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 12; ++i) {
        const double t = std::uniform_real_distribution<double>(5.0, 300.0)(rng);
        const double w = std::sqrt(t);
        double a = std::uniform_real_distribution<double>(-2.0, 2.0)(rng) * w;
        double b = std::uniform_real_distribution<double>(-2.0, 2.0)(rng) * w;
        if (a > b) std::swap(a, b);
        for (Model m : {Model::RW, Model::TE, Model::G}) {
            const double h = default_step(t);
            auto mass = [&](double s) {
                return quadrature::integrate([&](double x) { return kernels::density(m, x, s); }, a, b, {1e-13, 12});
            };
            const double dmass = (mass(t + h) - mass(t - h)) / (2.0 * h);
            EXPECT_NEAR(flux(m, a, t).j - flux(m, b, t).j, dmass, 1e-6) << to_string(m) << " t=" << t;
        }
    }
}

TEST(BondFlux, EnumeratedPaths)
{
    EXPECT_DOUBLE_EQ(discrete_bond_flux(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(discrete_bond_flux(0, 1), -0.25);
    for (int t = 0; t <= 4; ++t)
        for (std::int64_t k = -6; k <= 6; ++k)
            EXPECT_DOUBLE_EQ(discrete_bond_flux(k, t), enumerated_bond_flux(k, t)) << k << " " << t;
    EXPECT_EQ(discrete_bond_flux(20, 5), 0.0);
    EXPECT_EQ(discrete_bond_flux(-30, 5), 0.0);
}

TEST(BondFlux, AveragedCurrentMatchesContinuousFlux)
{
    const double continuous = flux(Model::RW, 10.5, 100.0).j;
    EXPECT_NEAR(averaged_bond_flux(10, 100), continuous, 0.02 * continuous);
    // the per-hop current alternates between the two sublattices
    EXPECT_GT(discrete_bond_flux(10, 100), 0.0);
    EXPECT_LT(discrete_bond_flux(10, 99), 0.0);
}

TEST(Flux, WalkApproachesGaussianFlux)
{
    for (double t : {1e3, 1e4}) {
        const double x = std::sqrt(t);
        const double jg = flux(Model::G, x, t).j;
        EXPECT_LT(std::abs(flux(Model::RW, x, t).j - jg) / jg, 1e-3) << t;
    }
}
