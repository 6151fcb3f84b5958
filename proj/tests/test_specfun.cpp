#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "rwlab/specfun.hpp"

using namespace rwlab;
using Big = boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_int;

namespace {

double ref_lgamma(double z) { return static_cast<double>(boost::math::lgamma(Big(z))); }
double ref_digamma(double z) { return static_cast<double>(boost::math::digamma(Big(z))); }
double ref_ie(int nu, double z)
{
    const Big bz(z);
    return static_cast<double>(boost::math::cyl_bessel_i(nu, bz) * exp(-bz));
}

// truncated power series of I0 in long double
double series_i0e(double z)
{
    long double term = 1.0L, sum = 1.0L;
    const long double q = 0.25L * z * z;
    for (int k = 1; k < 200; ++k) {
        term *= q / (long double)(k * k);
        sum += term;
    }
    return double(sum * std::exp(-(long double)z));
}

const double kPoints[] = {0.5, 0.75, 1.5, 2.5, 3.7, 9.99, 10.0, 10.5, 17.25, 55.3, 101.0, 1e3 + 0.5, 12345.6, 1e5, 1e6};

}  // namespace

TEST(LogGamma, ExactAtOneAndTwo)
{
    EXPECT_EQ(specfun::log_gamma(1.0), 0.0);
    EXPECT_EQ(specfun::log_gamma(2.0), 0.0);
    EXPECT_NEAR(specfun::log_gamma(5.0), std::log(24.0), 1e-13 * std::log(24.0));
}

TEST(LogGamma, RelativeAccuracyAgainstMultiprecision)
{
    for (double z : kPoints) {
        const double ref = ref_lgamma(z);
        EXPECT_LE(std::abs(specfun::log_gamma(z) - ref), 1e-13 * std::max(1.0, std::abs(ref))) << "z = " << z;
    }
}

TEST(LogGamma, FactorialOf100FromBigInteger)
{
    cpp_int f = 1;
    for (int k = 2; k <= 100; ++k) f *= k;
    const double ref = static_cast<double>(log(Big(f)));
    EXPECT_NEAR(specfun::log_gamma(101.0), ref, 1e-13 * ref);
}

TEST(LogGamma, Recurrence)
{
    for (double z = 1.0; z <= 1e4; z *= 1.37)
        // the difference of two values near lgamma(z + 1) inherits their rounding
        EXPECT_NEAR(specfun::log_gamma(z + 1.0) - specfun::log_gamma(z), std::log(z),
                    1e-12 * std::max(1.0, specfun::log_gamma(z + 1.0)))
            << z;
}

TEST(LogGamma, RejectsNonPositive)
{
    EXPECT_THROW(specfun::log_gamma(0.0), DomainError);
    EXPECT_THROW(specfun::log_gamma(-2.5), DomainError);
}

TEST(Digamma, KnownValues)
{
    const double gamma_e = 0.57721566490153286061;
    EXPECT_NEAR(specfun::digamma(1.0), -gamma_e, 1e-14);
    EXPECT_NEAR(specfun::digamma(2.0), 1.0 - gamma_e, 1e-14);
}

TEST(Digamma, AbsoluteAccuracyAgainstMultiprecision)
{
    for (double z : kPoints) EXPECT_NEAR(specfun::digamma(z), ref_digamma(z), 1e-12) << "z = " << z;
}

TEST(Digamma, Recurrence)
{
    for (double z = 1.0; z <= 1e4; z *= 1.21) EXPECT_NEAR(specfun::digamma(z + 1.0) - specfun::digamma(z), 1.0 / z, 1e-12);
}

TEST(Digamma, FiniteDifferenceOfLogGammaIsSecondOrder)
{
    const double z = 10.0;
    const double psi = specfun::digamma(z);
    auto fd = [&](double h) { return (specfun::log_gamma(z + h) - specfun::log_gamma(z - h)) / (2.0 * h); };
    const double e1 = std::abs(fd(1e-2) - psi);
    const double e2 = std::abs(fd(1e-3) - psi);
    EXPECT_LT(e1, 1e-5);
    EXPECT_NEAR(e1 / e2, 100.0, 5.0);
}

TEST(StirlingError, MatchesDefinition)
{
    for (double z : {0.5, 1.0, 3.0, 9.5, 10.0, 25.0, 1e3, 1e6}) {
        const Big bz(z);
        const Big ref = boost::math::lgamma(bz + 1) - ((bz + 0.5) * log(bz) - bz + log(sqrt(2 * boost::math::constants::pi<Big>())));
        EXPECT_NEAR(specfun::stirling_error(z), static_cast<double>(ref), 1e-15 + 1e-13 * static_cast<double>(ref)) << z;
    }
}

TEST(BinomialDeviance, MatchesDirectFormAndIsNonNegative)
{
    for (double m : {0.5, 10.0, 500.0})
        for (double r : {0.0, 0.3, 0.95, 1.0, 1.001, 1.5, 4.0}) {
            const double x = r * m;
            const Big bx(x), bm(m);
            const Big ref = x == 0.0 ? bm : bx * log(bx / bm) + bm - bx;
            const double got = specfun::binomial_deviance(x, m);
            EXPECT_GE(got, 0.0);
            EXPECT_NEAR(got, static_cast<double>(ref), 1e-14 * std::max(1.0, m)) << x << " " << m;
        }
}

TEST(ScaledBessel, ValuesAtZero)
{
    EXPECT_EQ(specfun::bessel_i0e(0.0), 1.0);
    EXPECT_EQ(specfun::bessel_i1e(0.0), 0.0);
}

TEST(ScaledBessel, PowerSeriesOracle)
{
    for (double z : {0.5, 2.0, 10.0}) EXPECT_NEAR(specfun::bessel_i0e(z), series_i0e(z), 1e-12 * series_i0e(z)) << z;
}

TEST(ScaledBessel, RelativeAccuracyAgainstMultiprecision)
{
    for (double z : {1e-8, 1e-3, 0.5, 1.0, 5.0, 8.0, 15.0, 29.9, 30.0, 30.1, 45.0, 100.0, 1e3, 2.5e4, 1e5}) {
        const double r0 = ref_ie(0, z);
        const double r1 = ref_ie(1, z);
        EXPECT_LE(std::abs(specfun::bessel_i0e(z) - r0), 1e-12 * r0) << "I0 z = " << z;
        EXPECT_LE(std::abs(specfun::bessel_i1e(z) - r1), 1e-12 * r1) << "I1 z = " << z;
    }
}

TEST(ScaledBessel, LargeArgumentExpansion)
{
    const double z = 100.0;
    EXPECT_NEAR(specfun::bessel_i0e(z) / ((1.0 + 1.0 / (8.0 * z)) / std::sqrt(2.0 * std::numbers::pi * z)), 1.0, 1e-4);
    EXPECT_TRUE(std::isfinite(specfun::bessel_i0e(1e5)));
}

TEST(ScaledBessel, RejectsNegative)
{
    EXPECT_THROW(specfun::bessel_i0e(-1.0), DomainError);
    EXPECT_THROW(specfun::bessel_i1e(-1e-9), DomainError);
}

TEST(StirlingApprox, TermsImproveAccuracy)
{
    EXPECT_NEAR(specfun::stirling_approx(1.0, 1), std::sqrt(2.0 * std::numbers::pi) / std::numbers::e, 1e-15);
    EXPECT_NEAR(1.0 - specfun::stirling_approx(1.0, 1), 0.0779, 1e-4);
    // three terms drop the z^-3 member -139/(51840 z^3): an excess near 2.68e-6 at z = 10
    const double rel = specfun::stirling_approx(10.0, 3) / std::exp(specfun::log_gamma(11.0)) - 1.0;
    EXPECT_NEAR(rel, 139.0 / 51840.0 / 1000.0, 0.05 * 139.0 / 51840.0 / 1000.0);

    cpp_int f = 1;
    for (int k = 2; k <= 100; ++k) f *= k;
    const Big exact(f);
    const Big e1 = abs(Big(specfun::stirling_approx(100.0, 1)) / exact - 1);
    const Big e2 = abs(Big(specfun::stirling_approx(100.0, 2)) / exact - 1);
    const Big e3 = abs(Big(specfun::stirling_approx(100.0, 3)) / exact - 1);
    EXPECT_LT(e2, e1);
    EXPECT_LT(e3, e2);
}

TEST(StirlingApprox, Domain)
{
    EXPECT_THROW(specfun::stirling_approx(0.5, 1), DomainError);
    EXPECT_THROW(specfun::stirling_approx(2.0, 4), DomainError);
}
