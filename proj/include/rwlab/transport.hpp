#pragma once

// Tail masses and probability currents.
//
// The flux through x* is the rate of change of the mass to its right,
//   J(x*, t) = d/dt  integral_{x*}^{Vt} rho(x, t) dx,
// so positive J is a rightward current and Fick's law reads J = -D grad rho.
// The time derivative is a centered difference with step
// h = max(1e-3 t, 1e-2), optionally Richardson-extrapolated.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>

#include "rwlab/error.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/params.hpp"
#include "rwlab/quadrature.hpp"

namespace rwlab::transport {

struct FluxSample {
    Model model = Model::G;
    double x_star = 0.0;
    double t = 0.0;
    double j = 0.0;
};

struct FluxOptions {
    std::optional<double> h;  ///< time step; default_step(t) when unset
    bool richardson = false;  ///< combine h and h/2 to cancel the O(h^2) term
};

inline double default_step(double t) { return std::max(1e-3 * t, 1e-2); }

/// Tail-mass quadrature tolerance. Kept well below the 1e-10 contract so that
/// time differences of tail masses stay smooth in t.
inline constexpr quadrature::Options kTailQuadrature{1e-13, 10};

/// Mass to the right of x_star: closed form for G, 61-point Gauss-Kronrod over
/// [x_star, Vt] for TE and for the continuous RW density.
inline double tail_mass(Model m, double x_star, double t, const Params& p = {})
{
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("tail_mass: t must be positive");
    if (m == Model::G) return 0.5 * std::erfc(x_star / std::sqrt(4.0 * p.diffusivity() * t));
    const double front = p.velocity() * t;
    if (x_star >= front) return 0.0;
    const double lo = std::max(x_star, -front);
    const double width = std::sqrt(2.0 * p.diffusivity() * t);
    auto rho = [&](double x) { return kernels::density(m, x, t, p); };
    return quadrature::integrate_panels(rho, lo, front, quadrature::symmetric_breaks(width, 12), kTailQuadrature);
}

/// Tail mass of the lattice walk at integer time: sum of P(x,t) over sites
/// right of x_star, a site exactly at x_star contributing half.
inline double lattice_tail_mass(double x_star, std::int64_t t)
{
    if (t < 0) throw DomainError("lattice_tail_mass: t must be nonnegative");
    double sum = 0.0;
    for (std::int64_t x = t; x >= -t; x -= 2) {
        const double xd = double(x);
        if (xd < x_star) break;
        const double prob = 2.0 * kernels::rho_rw_lattice(x, t);
        sum += xd == x_star ? 0.5 * prob : prob;
    }
    return sum;
}

namespace detail {

inline double centered_flux(Model m, double x_star, double t, double h, const Params& p)
{
    if (!(h > 0.0) || !(t > h)) throw DomainError("flux: requires t > h > 0");
    return (tail_mass(m, x_star, t + h, p) - tail_mass(m, x_star, t - h, p)) / (2.0 * h);
}

}  // namespace detail

inline FluxSample flux(Model m, double x_star, double t, const Params& p = {}, FluxOptions opt = {})
{
    const double h = opt.h.value_or(default_step(t));
    double j = detail::centered_flux(m, x_star, t, h, p);
    if (opt.richardson) j = (4.0 * detail::centered_flux(m, x_star, t, 0.5 * h, p) - j) / 3.0;
    return {m, x_star, t, j};
}

/// Exact net rightward probability current of the lattice walk across the
/// bond between sites `left_site` and `left_site + 1` during the hop from t
/// to t + 1: [P(left) - P(right)] / 2.
inline double discrete_bond_flux(std::int64_t left_site, std::int64_t t)
{
    if (t < 0) throw DomainError("discrete_bond_flux: t must be nonnegative");
    auto prob = [t](std::int64_t x) {
        if (x > t || -x > t || (x + t) % 2 != 0) return 0.0;
        return 2.0 * kernels::rho_rw_lattice(x, t);
    };
    return 0.5 * (prob(left_site) - prob(left_site + 1));
}

/// Bond current averaged over the hops t-1 -> t and t -> t+1. On the parity
/// lattice the per-hop current alternates in sign; this average is the one
/// comparable with the continuous flux at (left_site + 1/2, t).
inline double averaged_bond_flux(std::int64_t left_site, std::int64_t t)
{
    if (t < 1) throw DomainError("averaged_bond_flux: t must be >= 1");
    return 0.5 * (discrete_bond_flux(left_site, t - 1) + discrete_bond_flux(left_site, t));
}

/// flux(G) - (-D grad rho_G). Zero up to differencing error for the Gaussian;
/// uses the Richardson-extrapolated flux.
inline double fick_check(double x, double t, const Params& p = {})
{
    if (!(t > 0.0)) throw DomainError("fick_check: t must be positive");
    const double j = flux(Model::G, x, t, p, {.h = std::nullopt, .richardson = true}).j;
    return j + p.diffusivity() * kernels::grad_g(x, t, p);
}

}  // namespace rwlab::transport
