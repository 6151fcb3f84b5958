#pragma once

// The three candidate point-source solutions of 1D diffusive transport and
// their x-gradients:
//
//   rho_g   Gaussian kernel of dC/dt = D d2C/dx2
//   rho_te  telegraph kernel of dC/dt + tau d2C/dt2 = D d2C/dx2 (no front deltas)
//   rho_rw  gamma-function continuation of the +/-1 walk density P(x,t)/2
//
// Dimensionless overloads use dx = dt = 1 (V = 1, D = 1/2, tau = 1/2). The
// Params overloads rescale. All evaluations go through log-space or
// exponentially scaled Bessel functions with a single final exp().

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "rwlab/error.hpp"
#include "rwlab/params.hpp"
#include "rwlab/specfun.hpp"

namespace rwlab::kernels {

namespace detail {

inline constexpr double kLn2 = std::numbers::ln2;

inline void require_positive_time(double t, const char* fn)
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(fn) + ": t must be positive");
}

// ln of Gamma(t+1) / (Gamma(a+1) Gamma(b+1) 2^{t+1}) with a + b = t, a, b >= 0.
// Saddle-point form when both a and b are at least 1.
inline double log_rw_density(double t, double a, double b)
{
    if (a <= 0.0 || b <= 0.0) return -(t + 1.0) * kLn2;
    using namespace specfun;
    if (a < 1.0 || b < 1.0) return log_gamma(t + 1.0) - log_gamma(a + 1.0) - log_gamma(b + 1.0) - (t + 1.0) * kLn2;
    const double half = 0.5 * t;
    return -specfun::detail::kHalfLog2Pi + 0.5 * std::log(t / (a * b)) + stirling_error(t) - stirling_error(a) -
           stirling_error(b) - binomial_deviance(a, half) - binomial_deviance(b, half) - kLn2;
}

}  // namespace detail

// ---------------------------------------------------------------- Gaussian

inline double rho_g(double x, double t, const Params& p = {})
{
    detail::require_positive_time(t, "rho_g");
    const double four_dt = 4.0 * p.diffusivity() * t;
    return std::exp(-x * x / four_dt) / std::sqrt(std::numbers::pi * four_dt);
}

inline double grad_g(double x, double t, const Params& p = {})
{
    detail::require_positive_time(t, "grad_g");
    return -x / (2.0 * p.diffusivity() * t) * rho_g(x, t, p);
}

// ---------------------------------------------------------------- telegraph

/// exp(-t/2tau) I0(sqrt(t^2 - x^2/V^2) / 2tau) / sqrt(4 D tau) inside the cone,
/// 0 outside; the front |x| = Vt is included.
inline double rho_te(double x, double t, const Params& p = {})
{
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("rho_te: t must be nonnegative");
    const double v = p.velocity();
    const double tau = p.relaxation_time();
    const double xr = std::abs(x) / v;
    if (xr > t) return 0.0;
    const double pref = 1.0 / std::sqrt(4.0 * p.diffusivity() * tau);
    if (t == 0.0) return pref;
    const double u = std::sqrt((t - xr) * (t + xr));
    const double z = u / (2.0 * tau);
    // z - t/2tau without cancellation
    const double lag = -(xr * xr) / ((t + u) * 2.0 * tau);
    return pref * std::exp(lag) * specfun::bessel_i0e(z);
}

/// x-derivative of rho_te. At the front the limit I1(z)/z -> 1/2 is used.
inline double grad_te(double x, double t, const Params& p = {})
{
    detail::require_positive_time(t, "grad_te");
    const double v = p.velocity();
    const double tau = p.relaxation_time();
    const double xr = std::abs(x) / v;
    if (xr > t) throw OutOfCone("grad_te: |x| > V t");
    const double u = std::sqrt((t - xr) * (t + xr));
    const double z = u / (2.0 * tau);
    const double lag = -(xr * xr) / ((t + u) * 2.0 * tau);
    const double i1_over_z = z < 1e-6 ? 0.5 * std::exp(-z) * (1.0 + z * z / 8.0) : specfun::bessel_i1e(z) / z;
    const double pref = 1.0 / std::sqrt(4.0 * p.diffusivity() * tau);
    return -pref * x / (4.0 * tau * tau * v * v) * std::exp(lag) * i1_over_z;
}

// ---------------------------------------------------------------- random walk

/// Exact lattice density P(x,t)/2 of the symmetric +/-1 walk started at 0.
inline double rho_rw_lattice(std::int64_t x, std::int64_t t)
{
    if (t < 0) throw DomainError("rho_rw_lattice: t must be nonnegative");
    if ((x + t) % 2 != 0) throw ParityMismatch("rho_rw_lattice: x and t must have the same parity");
    if (x > t || -x > t) throw OutOfCone("rho_rw_lattice: |x| > t");
    const std::int64_t ax = x < 0 ? -x : x;  // exact evenness
    return std::exp(detail::log_rw_density(double(t), 0.5 * double(t - ax), 0.5 * double(t + ax)));
}

/// Gamma-function continuation of the walk density in lattice units;
/// clamped to 0 outside |x| <= t.
inline double rho_rw(double x, double t)
{
    detail::require_positive_time(t, "rho_rw");
    const double ax = std::abs(x);
    if (ax > t) return 0.0;
    return std::exp(detail::log_rw_density(t, 0.5 * (t - ax), 0.5 * (t + ax)));
}

inline double rho_rw(double x, double t, const Params& p)
{
    return rho_rw(x / p.dx(), t / p.dt()) / p.dx();
}

/// Exact x-derivative of the continuous walk density:
/// (rho/2) [psi((t-x)/2 + 1) - psi((t+x)/2 + 1)]. Open cone only.
inline double grad_rw(double x, double t)
{
    detail::require_positive_time(t, "grad_rw");
    if (!(std::abs(x) < t)) throw OutOfCone("grad_rw: requires |x| < t");
    if (x == 0.0) return 0.0;
    const double ax = std::abs(x);
    const double g = 0.5 * rho_rw(ax, t) * (specfun::digamma(0.5 * (t - ax) + 1.0) - specfun::digamma(0.5 * (t + ax) + 1.0));
    return x < 0.0 ? -g : g;
}

inline double grad_rw(double x, double t, const Params& p)
{
    return grad_rw(x / p.dx(), t / p.dt()) / (p.dx() * p.dx());
}

// ---------------------------------------------------------------- dispatch

inline double density(Model m, double x, double t, const Params& p = {})
{
    switch (m) {
    case Model::RW: return rho_rw(x, t, p);
    case Model::G: return rho_g(x, t, p);
    case Model::TE: return rho_te(x, t, p);
    }
    throw std::invalid_argument("density: bad model");
}

/// Gradient extended by 0 outside each model's support, so profiles and
/// deviation integrands are defined on the whole line.
inline double gradient(Model m, double x, double t, const Params& p = {})
{
    const double front = p.velocity() * t;
    switch (m) {
    case Model::RW: return std::abs(x) < front ? grad_rw(x, t, p) : 0.0;
    case Model::G: return grad_g(x, t, p);
    case Model::TE: return std::abs(x) <= front ? grad_te(x, t, p) : 0.0;
    }
    throw std::invalid_argument("gradient: bad model");
}

/// Support edge: V t for RW and TE, infinity for G.
inline double support_edge(Model m, double t, const Params& p = {})
{
    return m == Model::G ? HUGE_VAL : p.velocity() * t;
}

// ---------------------------------------------------------------- PDE residuals

/// Centered finite-difference residual of each model's governing equation.
///
/// G:  d/dt rho - D d2/dx2 rho
/// TE: d/dt rho + tau d2/dt2 rho - D d2/dx2 rho   (stencil must stay inside the cone)
/// RW: rho(x,t) - [rho(x-1,t-1) + rho(x+1,t-1)] / 2 on the lattice (x, t integers,
///     same parity, h unused); sites outside the cone count as 0.
inline double model_residual(Model m, double x, double t, double h, const Params& p = {})
{
    if (m == Model::RW) {
        if (x != std::floor(x) || t != std::floor(t)) throw DomainError("model_residual(RW): x and t must be integers");
        const auto xi = static_cast<std::int64_t>(x);
        const auto ti = static_cast<std::int64_t>(t);
        if (ti < 1) throw StencilOutOfDomain("model_residual(RW): needs t >= 1");
        if (xi > ti || -xi > ti) throw OutOfCone("model_residual(RW): |x| > t");
        auto site = [](std::int64_t xs, std::int64_t ts) {
            return (xs > ts || -xs > ts) ? 0.0 : rho_rw_lattice(xs, ts);
        };
        return site(xi, ti) - 0.5 * (site(xi - 1, ti - 1) + site(xi + 1, ti - 1));
    }
    if (!(h > 0.0)) throw DomainError("model_residual: h must be positive");
    if (!(t - h > 0.0)) throw StencilOutOfDomain("model_residual: t - h must be positive");
    if (m == Model::TE && !(std::abs(x) + h < p.velocity() * (t - h)))
        throw StencilOutOfDomain("model_residual(TE): stencil leaves the light cone");
    auto f = [&](double xs, double ts) { return density(m, xs, ts, p); };
    const double c = f(x, t);
    const double d_t = (f(x, t + h) - f(x, t - h)) / (2.0 * h);
    const double d_xx = (f(x + h, t) - 2.0 * c + f(x - h, t)) / (h * h);
    double r = d_t - p.diffusivity() * d_xx;
    if (m == Model::TE) r += p.relaxation_time() * (f(x, t + h) - 2.0 * c + f(x, t - h)) / (h * h);
    return r;
}

}  // namespace rwlab::kernels
