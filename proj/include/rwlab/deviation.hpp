#pragma once

// Comparison machinery between the three kernels: L2 deviations over the
// half-cone 0 <= x <= Vt, log-log power-law fits, central-value asymptotics,
// gradient-maximum statistics and the applicability criterion.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "rwlab/error.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/parallel.hpp"
#include "rwlab/params.hpp"
#include "rwlab/quadrature.hpp"
#include "rwlab/transport.hpp"

namespace rwlab::deviation {

/// A pair of quantities compared by an L2 deviation integral.
struct Metric {
    Quantity kind = Quantity::Density;
    Model first = Model::RW;
    Model second = Model::G;

    friend bool operator==(const Metric&, const Metric&) = default;
};

/// "rw-te", "grad:rw-g", "flux:te-g", ...
inline std::string metric_name(const Metric& m)
{
    std::string prefix;
    if (m.kind == Quantity::Gradient) prefix = "grad:";
    if (m.kind == Quantity::Flux) prefix = "flux:";
    return prefix + std::string(to_string(m.first)) + "-" + std::string(to_string(m.second));
}

inline Metric parse_metric(std::string_view name)
{
    Metric m;
    std::string_view rest = name;
    if (rest.starts_with("grad:")) {
        m.kind = Quantity::Gradient;
        rest.remove_prefix(5);
    } else if (rest.starts_with("flux:")) {
        m.kind = Quantity::Flux;
        rest.remove_prefix(5);
    }
    const auto dash = rest.find('-');
    if (dash == std::string_view::npos) throw UnknownMetric("unknown metric '" + std::string(name) + "'");
    try {
        m.first = parse_model(rest.substr(0, dash));
        m.second = parse_model(rest.substr(dash + 1));
    } catch (const std::invalid_argument&) {
        throw UnknownMetric("unknown metric '" + std::string(name) + "'");
    }
    return m;
}

/// The nine deviations: densities, gradients, fluxes; each as RW-TE, RW-G, TE-G.
inline std::array<Metric, 9> standard_metrics()
{
    std::array<Metric, 9> out{};
    std::size_t i = 0;
    for (Quantity q : {Quantity::Density, Quantity::Gradient, Quantity::Flux}) {
        out[i++] = {q, Model::RW, Model::TE};
        out[i++] = {q, Model::RW, Model::G};
        out[i++] = {q, Model::TE, Model::G};
    }
    return out;
}

/// Value of one quantity, 0 outside the model's support.
inline double quantity_value(Quantity q, Model m, double x, double t, const Params& p = {})
{
    switch (q) {
    case Quantity::Density: return kernels::density(m, x, t, p);
    case Quantity::Gradient: return kernels::gradient(m, x, t, p);
    case Quantity::Flux:
        if (m != Model::G && std::abs(x) >= p.velocity() * t) return 0.0;
        return transport::flux(m, x, t, p).j;
    }
    return 0.0;
}

/// Flux integrands are time differences of quadratures; their relative noise
/// floor is near 1e-9, so their L2 integrals are converged to 1e-8 instead of 1e-10.
inline quadrature::Options deviation_quadrature(Quantity q)
{
    return q == Quantity::Flux ? quadrature::Options{1e-8, 6} : quadrature::Options{1e-10, 12};
}

/// sqrt( integral_0^{Vt} (f1 - f2)^2 dx ).
inline double l2_deviation(const Metric& metric, double t, const Params& p = {})
{
    if (!(t > 0.0)) throw DomainError("l2_deviation: t must be positive");
    if (metric.first == metric.second) return 0.0;
    auto sq = [&](double x) {
        const double d = quantity_value(metric.kind, metric.first, x, t, p) -
                         quantity_value(metric.kind, metric.second, x, t, p);
        return d * d;
    };
    const double width = std::sqrt(2.0 * p.diffusivity() * t);
    std::vector<double> breaks;
    for (int k = 1; k <= 12; ++k) breaks.push_back(k * width);
    return std::sqrt(quadrature::integrate_panels(sq, 0.0, p.velocity() * t, breaks, deviation_quadrature(metric.kind)));
}

/// max over 0 <= x <= Vt of |f1 - f2| sampled on `n` uniform points of [0, 6 sqrt(2Dt)].
inline double peak_difference(const Metric& metric, double t, const Params& p = {}, int n = 2001)
{
    const double hi = std::min(p.velocity() * t, 6.0 * std::sqrt(2.0 * p.diffusivity() * t));
    double peak = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = hi * i / (n - 1);
        peak = std::max(peak, std::abs(quantity_value(metric.kind, metric.first, x, t, p) -
                                       quantity_value(metric.kind, metric.second, x, t, p)));
    }
    return peak;
}

// ---------------------------------------------------------------- series and fits

struct Sample {
    double t = 0.0;
    double value = 0.0;
};

struct DeviationSeries {
    std::string metric;
    std::vector<Sample> samples;
};

/// n geometrically spaced points from t_min to t_max inclusive.
inline std::vector<double> log_grid(double t_min, double t_max, int n)
{
    if (!(t_min > 0.0) || !(t_max > t_min) || n < 2) throw DomainError("log_grid: need 0 < t_min < t_max and n >= 2");
    std::vector<double> ts(n);
    const double step = std::log(t_max / t_min) / (n - 1);
    for (int i = 0; i < n; ++i) ts[i] = t_min * std::exp(step * i);
    ts.back() = t_max;
    return ts;
}

template <class Fn>
DeviationSeries make_series(std::string name, const std::vector<double>& ts, Fn&& eval)
{
    DeviationSeries s{std::move(name), std::vector<Sample>(ts.size())};
    parallel_for(ts.size(), [&](std::size_t i) { s.samples[i] = {ts[i], eval(ts[i])}; });
    return s;
}

inline DeviationSeries deviation_series(const Metric& metric, const std::vector<double>& ts, const Params& p = {})
{
    return make_series(metric_name(metric), ts, [&](double t) { return l2_deviation(metric, t, p); });
}

struct PowerLawFit {
    double exponent = 0.0;
    double log_amplitude = 0.0;
    double rms_residual = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
};

/// Ordinary least squares of ln(value) on ln(t) over samples with t in [t_min, t_max].
inline PowerLawFit fit_power_law(const DeviationSeries& series, std::pair<double, double> window)
{
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : series.samples) {
        if (s.t < window.first || s.t > window.second) continue;
        if (!(s.value > 0.0)) throw FitError("fit_power_law: nonpositive value at t = " + std::to_string(s.t));
        pts.emplace_back(std::log(s.t), std::log(s.value));
    }
    if (pts.size() < 5) throw FitError("fit_power_law: fewer than 5 samples in window");
    const double n = double(pts.size());
    double mx = 0.0, my = 0.0;
    for (auto [lx, ly] : pts) {
        mx += lx;
        my += ly;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (auto [lx, ly] : pts) {
        sxx += (lx - mx) * (lx - mx);
        sxy += (lx - mx) * (ly - my);
    }
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_amplitude = my - fit.exponent * mx;
    double ss = 0.0;
    for (auto [lx, ly] : pts) {
        const double r = ly - (fit.log_amplitude + fit.exponent * lx);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    fit.t_min = window.first;
    fit.t_max = window.second;
    return fit;
}

// ---------------------------------------------------------------- central values

struct CentralValue {
    double exact = 0.0;
    double asymptotic = 0.0;
};

/// Kernel value at x = 0 and its two-term large-t expansion
/// (2 pi t)^{-1/2} (1 + c/t) with c = -1/4 (RW), 1/8 (TE), 0 (G).
inline CentralValue central_asymptotics(Model m, double t)
{
    if (!(t >= 10.0)) throw DomainError("central_asymptotics: requires t >= 10");
    const double lead = 1.0 / std::sqrt(2.0 * std::numbers::pi * t);
    switch (m) {
    case Model::RW: return {kernels::rho_rw(0.0, t), lead * (1.0 - 0.25 / t)};
    case Model::TE: return {kernels::rho_te(0.0, t), lead * (1.0 + 0.125 / t)};
    case Model::G: return {kernels::rho_g(0.0, t), lead};
    }
    throw std::invalid_argument("central_asymptotics: bad model");
}

// ---------------------------------------------------------------- gradient maxima

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double tol)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

struct MaxGradient {
    double x_max = 0.0;
    double g_max = 0.0;      ///< max |gradient|
    double halfwidth = 0.0;  ///< full width at half maximum of |gradient|
};

/// Location, value and FWHM of the maximum of |grad rho| on (0, Vt).
inline MaxGradient max_gradient_stats(Model m, double t, const Params& p = {})
{
    if (!(t > 1.0)) throw DomainError("max_gradient_stats: requires t > 1");
    const double front = p.velocity() * t;
    auto mag = [&](double x) { return std::abs(kernels::gradient(m, x, t, p)); };
    MaxGradient out;
    out.x_max = golden_section_max(mag, 0.0, front, 1e-6 * p.dx());
    out.g_max = mag(out.x_max);

    // unimodality: no sample may beat the located maximum, and |grad| must
    // be nondecreasing before it and nonincreasing after it.
    const double width = std::sqrt(2.0 * p.diffusivity() * t);
    const double span = std::min(front, out.x_max + 20.0 * width);
    double prev = 0.0;
    bool past_peak = false;
    for (int i = 1; i < 400; ++i) {
        const double x = span * i / 400.0;
        const double g = mag(x);
        bool bad = g > out.g_max * (1.0 + 1e-9);
        if (x > out.x_max) {
            bad = bad || (past_peak && g > prev * (1.0 + 1e-9));
            past_peak = true;
        } else {
            bad = bad || g < prev * (1.0 - 1e-9);
        }
        if (bad) throw SearchFailure("max_gradient_stats: profile is not unimodal");
        prev = g;
    }

    const double half = 0.5 * out.g_max;
    auto excess = [&](double x) { return mag(x) - half; };
    boost::math::tools::eps_tolerance<double> tol(45);
    auto left = boost::math::tools::bisect(excess, 0.0, out.x_max, tol);
    const double right_hi = std::min(front, out.x_max + 20.0 * width);
    auto right = boost::math::tools::bisect(excess, out.x_max, right_hi, tol);
    out.halfwidth = 0.5 * (right.first + right.second) - 0.5 * (left.first + left.second);
    return out;
}

struct GradientRatio {
    double c_te = 0.0;  ///< t (1 - g_RW / g_TE)
    double c_g = 0.0;   ///< t (1 - g_RW / g_G)
};

/// Relative gap between the RW gradient maximum and the TE / G maxima, scaled
/// by t. Each curve's own maximum is used.
inline GradientRatio gradient_ratio_coeffs(double t, const Params& p = {})
{
    if (!(t >= 100.0)) throw DomainError("gradient_ratio_coeffs: requires t >= 100");
    const double rw = max_gradient_stats(Model::RW, t, p).g_max;
    const double te = max_gradient_stats(Model::TE, t, p).g_max;
    const double g = max_gradient_stats(Model::G, t, p).g_max;
    return {t * (1.0 - rw / te), t * (1.0 - rw / g)};
}

// ---------------------------------------------------------------- criteria

struct Applicability {
    bool ok = false;
    double time_ratio = 0.0;   ///< t / dt
    double space_ratio = 0.0;  ///< x dt / (t dx)
};

/// Continuum description is trusted when t/dt >= factor and x dt/(t dx) <= 1/factor.
inline Applicability applicability(double x, double t, const Params& p = {}, double factor = 10.0)
{
    if (!(t > 0.0)) throw DomainError("applicability: t must be positive");
    Applicability a;
    a.time_ratio = t / p.dt();
    a.space_ratio = std::abs(x) * p.dt() / (t * p.dx());
    a.ok = a.time_ratio >= factor && a.space_ratio <= 1.0 / factor;
    return a;
}

/// Relative thermodynamic fluctuation of an n-particle subsystem, 1/sqrt(n).
inline double relative_fluctuation(long long n)
{
    if (n < 1) throw DomainError("relative_fluctuation: n must be >= 1");
    return 1.0 / std::sqrt(double(n));
}

}  // namespace rwlab::deviation
