#pragma once

// Scalar special functions in overflow-safe forms.
//
// log_gamma / digamma: upward recurrence to z >= 10, then the Stirling
// (resp. Bernoulli) asymptotic series. stirling_error and binomial_deviance
// are the two pieces of Loader's saddle-point form of the binomial
// probability, used by the random-walk kernel to avoid subtracting
// O(t log t) log-gamma values.
//
// bessel_i0e / bessel_i1e: exp(-z) I_n(z). Ascending power series for
// z <= 30, Hankel asymptotic series above. At z = 30 the smallest asymptotic
// term is about exp(-60), and the power series has only positive terms, so
// both branches hold full double precision.

#include <array>
#include <cmath>
#include <numbers>

#include "rwlab/error.hpp"

namespace rwlab::specfun {

namespace detail {

inline constexpr double kShiftThreshold = 10.0;
inline constexpr double kBesselCrossover = 30.0;
inline constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(sqrt(2 pi))

// B_{2k} / (2k (2k-1)), k = 1..8.
inline constexpr std::array<double, 8> kStirlingSeries = {
    1.0 / 12.0,     -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,   -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0,
};

// B_{2k} / (2k), k = 1..7.
inline constexpr std::array<double, 7> kDigammaSeries = {
    1.0 / 12.0,   -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0,  -691.0 / 32760.0,    1.0 / 12.0,
};

// sum_k c_k z^{-(2k+1)}
inline double odd_series(const double* coeffs, std::size_t n, double z)
{
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    double acc = 0.0;
    for (std::size_t k = n; k-- > 0;) acc = acc * inv2 + coeffs[k];
    return acc * inv;
}

// sum_k c_k z^{-2k}, k >= 1
inline double even_series(const double* coeffs, std::size_t n, double z)
{
    const double inv2 = 1.0 / (z * z);
    double acc = 0.0;
    for (std::size_t k = n; k-- > 0;) acc = acc * inv2 + coeffs[k];
    return acc * inv2;
}

inline void require_positive(double z, const char* fn)
{
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError(std::string(fn) + ": argument must be positive and finite");
}

// exp(-z) I_nu(z) for nu in {0, 1}.
inline double scaled_bessel_i(int nu, double z)
{
    if (z == 0.0) return nu == 0 ? 1.0 : 0.0;
    if (z <= kBesselCrossover) {
        const double q = 0.25 * z * z;
        double term = nu == 0 ? 1.0 : 0.5 * z;
        double sum = term;
        for (int k = 1; k < 500; ++k) {
            term *= q / (double(k) * double(k + nu));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum * std::exp(-z);
    }
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 2 * int(z); ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * z);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

}  // namespace detail

/// ln Gamma(z) for z > 0.
inline double log_gamma(double z)
{
    detail::require_positive(z, "log_gamma");
    if (z == 1.0 || z == 2.0) return 0.0;
    double shift = 0.0;
    if (z < detail::kShiftThreshold) {
        double prod = 1.0;
        while (z < detail::kShiftThreshold) {
            prod *= z;
            z += 1.0;
        }
        shift = std::log(prod);
    }
    const double series = detail::odd_series(detail::kStirlingSeries.data(), detail::kStirlingSeries.size(), z);
    return (z - 0.5) * std::log(z) - z + detail::kHalfLog2Pi + series - shift;
}

/// psi(z) = d/dz ln Gamma(z) for z > 0.
inline double digamma(double z)
{
    detail::require_positive(z, "digamma");
    double shift = 0.0;
    while (z < detail::kShiftThreshold) {
        shift += 1.0 / z;
        z += 1.0;
    }
    const double series = detail::even_series(detail::kDigammaSeries.data(), detail::kDigammaSeries.size(), z);
    return std::log(z) - 0.5 / z - series - shift;
}

/// Stirling error: ln Gamma(z+1) - [(z + 1/2) ln z - z + ln sqrt(2 pi)], z > 0.
inline double stirling_error(double z)
{
    detail::require_positive(z, "stirling_error");
    if (z < 0.5) return log_gamma(z + 1.0) - (z + 0.5) * std::log(z) + z - detail::kHalfLog2Pi;
    // delta(z) - delta(z+1) = (z + 1/2) ln(1 + 1/z) - 1 = sum_k u^{2k}/(2k+1), u = 1/(2z+1)
    double shift = 0.0;
    while (z < detail::kShiftThreshold) {
        const double u2 = 1.0 / ((2.0 * z + 1.0) * (2.0 * z + 1.0));
        double term = u2;
        for (int k = 1; k < 200; ++k) {
            const double add = term / (2 * k + 1);
            shift += add;
            if (add < 1e-18 * shift) break;
            term *= u2;
        }
        z += 1.0;
    }
    return shift + detail::odd_series(detail::kStirlingSeries.data(), detail::kStirlingSeries.size(), z);
}

/// Deviance x ln(x/m) + m - x, accurate when x is close to m (x >= 0, m > 0).
inline double binomial_deviance(double x, double m)
{
    if (x == 0.0) return m;
    const double diff = x - m;
    if (std::abs(diff) < 0.1 * (x + m)) {
        const double v = diff / (x + m);
        double sum = diff * v;
        double ej = 2.0 * x * v;
        const double v2 = v * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v2;
            const double next = sum + ej / (2 * j + 1);
            if (next == sum) return sum;
            sum = next;
        }
        return sum;
    }
    return x * std::log(x / m) + m - x;
}

/// exp(-z) I0(z), z >= 0.
inline double bessel_i0e(double z)
{
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("bessel_i0e: argument must be nonnegative");
    return detail::scaled_bessel_i(0, z);
}

/// exp(-z) I1(z), z >= 0.
inline double bessel_i1e(double z)
{
    if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("bessel_i1e: argument must be nonnegative");
    return detail::scaled_bessel_i(1, z);
}

/// Stirling's formula z^z e^{-z} sqrt(2 pi z) times the first `terms` members
/// of {1 + 1/(12z) + 1/(288 z^2)}. Approximates z! = Gamma(z+1). Test-only use.
inline double stirling_approx(double z, int terms)
{
    if (!(z >= 1.0)) throw DomainError("stirling_approx: z must be >= 1");
    if (terms < 1 || terms > 3) throw DomainError("stirling_approx: terms must be 1, 2 or 3");
    double braces = 1.0;
    if (terms >= 2) braces += 1.0 / (12.0 * z);
    if (terms >= 3) braces += 1.0 / (288.0 * z * z);
    return std::exp(z * std::log(z) - z) * std::sqrt(2.0 * std::numbers::pi * z) * braces;
}

}  // namespace rwlab::specfun
