#pragma once

// Corrected flux-gradient law for the random-walk density.
//
// The Cattaneo form J + tau dJ/dt = -D grad rho holds exactly for the
// telegraph kernel. For the walk density it holds only with a correction
// factor F(x, t):
//
//   J_RW + tau dJ_RW/dt = -D F(x, t) grad rho_RW,
//
// approximated in closed form by F ~ (1 - exp(-2Vt/|x|)) Theta(Vt - |x|).
// J is the time derivative of the tail mass (see transport.hpp); dJ/dt is
// its second centered difference with the same step policy.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "rwlab/error.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/params.hpp"
#include "rwlab/quadrature.hpp"
#include "rwlab/transport.hpp"

namespace rwlab::correction {

struct CorrectionField {
    double x = 0.0;
    double t = 0.0;
    double f_exact = std::numeric_limits<double>::quiet_NaN();  ///< NaN where undefined
    double f_approx = 0.0;
};

/// J and J + tau dJ/dt for one model at (x, t), from three tail masses.
struct RelaxedFlux {
    double j = 0.0;
    double relaxed = 0.0;  ///< J + tau dJ/dt
};

inline RelaxedFlux relaxed_flux(Model m, double x, double t, const Params& p = {}, std::optional<double> tau = {})
{
    const double h = transport::default_step(t);
    if (!(t > h)) throw DomainError("relaxed_flux: requires t > h");
    const double lo = transport::tail_mass(m, x, t - h, p);
    const double mid = transport::tail_mass(m, x, t, p);
    const double hi = transport::tail_mass(m, x, t + h, p);
    const double j = (hi - lo) / (2.0 * h);
    const double dj = (hi - 2.0 * mid + lo) / (h * h);
    return {j, j + tau.value_or(p.relaxation_time()) * dj};
}

/// Pointwise mismatch (-D grad rho) - (J + tau dJ/dt) for one model.
/// For G with tau = 0 this is Fick's law and vanishes.
inline double cattaneo_defect(Model m, double x, double t, const Params& p = {}, std::optional<double> tau = {})
{
    if (m != Model::G && !(std::abs(x) < p.velocity() * t)) return 0.0;
    return -p.diffusivity() * kernels::gradient(m, x, t, p) - relaxed_flux(m, x, t, p, tau).relaxed;
}

/// L2 norm over 0 <= x <= Vt of cattaneo_defect. The default (RW, tau) is the
/// residual of the Cattaneo law for the walk density.
inline double cattaneo_residual(Model m, double t, const Params& p = {}, std::optional<double> tau = {})
{
    if (!(t > 0.0)) throw DomainError("cattaneo_residual: t must be positive");
    auto sq = [&](double x) {
        const double d = cattaneo_defect(m, x, t, p, tau);
        return d * d;
    };
    const double width = std::sqrt(2.0 * p.diffusivity() * t);
    std::vector<double> breaks;
    for (int k = 1; k <= 12; ++k) breaks.push_back(k * width);
    return std::sqrt(quadrature::integrate_panels(sq, 0.0, p.velocity() * t, breaks, {1e-8, 6}));
}

inline double cattaneo_residual_profile(double t, const Params& p = {})
{
    return cattaneo_residual(Model::RW, t, p);
}

/// |grad rho_RW| below this makes F a 0/0 quotient.
inline constexpr double kGradientFloor = 1e-290;

/// F(x, t) = -(J_RW + tau dJ_RW/dt) / (D grad rho_RW), 0 < |x| < Vt.
inline double f_exact(double x, double t, const Params& p = {})
{
    if (!(t > 0.0)) throw DomainError("f_exact: t must be positive");
    if (!(std::abs(x) < p.velocity() * t)) throw OutOfCone("f_exact: requires |x| < V t");
    const double g = kernels::grad_rw(x, t, p);
    if (!(std::abs(g) >= kGradientFloor)) throw DegenerateGradient("f_exact: gradient vanishes at this point");
    return -relaxed_flux(Model::RW, x, t, p).relaxed / (p.diffusivity() * g);
}

/// (1 - exp(-2Vt/|x|)) Theta(Vt - |x|) with Theta(0) = 1.
inline double f_approx(double x, double t, const Params& p = {})
{
    if (x == 0.0) throw DomainError("f_approx: x must be nonzero");
    const double vt = p.velocity() * t;
    if (std::abs(x) > vt) return 0.0;
    return -std::expm1(-2.0 * vt / std::abs(x));
}

/// Position where 1 - f_approx = eps: 2Vt / ln(1/eps).
inline double x_epsilon(double eps, double t, const Params& p = {})
{
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("x_epsilon: eps must lie in (0, 1)");
    if (!(t > 0.0)) throw DomainError("x_epsilon: t must be positive");
    return 2.0 * p.velocity() * t / std::log(1.0 / eps);
}

/// Defect of the modified law: (J + tau dJ/dt) + D f_approx grad rho_RW.
/// Zero outside the cone, where every term vanishes.
inline double modified_law_residual(double x, double t, const Params& p = {})
{
    if (!(t > 0.0)) throw DomainError("modified_law_residual: t must be positive");
    if (!(std::abs(x) < p.velocity() * t)) return 0.0;
    if (x == 0.0) throw DomainError("modified_law_residual: x must be nonzero");
    return relaxed_flux(Model::RW, x, t, p).relaxed +
           p.diffusivity() * f_approx(x, t, p) * kernels::grad_rw(x, t, p);
}

/// L2 norm of modified_law_residual over 0 < x < Vt.
inline double modified_law_norm(double t, const Params& p = {})
{
    auto sq = [&](double x) {
        if (x == 0.0) return 0.0;
        const double d = modified_law_residual(x, t, p);
        return d * d;
    };
    const double width = std::sqrt(2.0 * p.diffusivity() * t);
    std::vector<double> breaks;
    for (int k = 1; k <= 12; ++k) breaks.push_back(k * width);
    return std::sqrt(quadrature::integrate_panels(sq, 0.0, p.velocity() * t, breaks, {1e-8, 6}));
}

/// Both correction functions at one point; f_exact is NaN where it is
/// undefined (|x| < min_x, outside the open cone, or degenerate gradient).
inline CorrectionField correction_field(double x, double t, const Params& p = {}, double min_x = 1.0)
{
    CorrectionField c{x, t};
    c.f_approx = x == 0.0 ? 0.0 : f_approx(x, t, p);
    if (std::abs(x) >= min_x && std::abs(x) < p.velocity() * t) {
        try {
            c.f_exact = f_exact(x, t, p);
        } catch (const DegenerateGradient&) {
        }
    }
    return c;
}

/// Earliest sampled time after which |F(x, s) - 1| <= eps for every sample s
/// up to t_max. F is evaluated on `n` geometric steps of (x/V, t_max]; the
/// last crossing is refined by bisection. Returns NaN if F never settles.
template <class F>
double settling_time(F&& f, double t_lo, double t_max, double eps, int n = 400)
{
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = t_lo * std::pow(t_max / t_lo, double(i + 1) / n);
    int last_bad = -1;
    for (int i = 0; i < n; ++i)
        if (!(std::abs(f(ts[i]) - 1.0) <= eps)) last_bad = i;
    if (last_bad == n - 1) return std::numeric_limits<double>::quiet_NaN();
    if (last_bad < 0) return t_lo;
    double bad = ts[last_bad];
    double good = ts[last_bad + 1];
    for (int k = 0; k < 60 && good - bad > 1e-9 * good; ++k) {
        const double mid = 0.5 * (bad + good);
        (std::abs(f(mid) - 1.0) <= eps ? good : bad) = mid;
    }
    return good;
}

/// Time after which f_exact(x, .) stays within eps of 1 (up to t_max).
inline double f_exact_settling_time(double x, double eps, double t_max, const Params& p = {})
{
    const double t_front = std::abs(x) / p.velocity();
    return settling_time([&](double t) { return f_exact(x, t, p); }, t_front, t_max, eps);
}

/// Time after which f_approx(x, .) stays within eps of 1: |x| ln(1/eps) / 2V.
inline double f_approx_settling_time(double x, double eps, const Params& p = {})
{
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("f_approx_settling_time: eps must lie in (0, 1)");
    return std::abs(x) * std::log(1.0 / eps) / (2.0 * p.velocity());
}

}  // namespace rwlab::correction
