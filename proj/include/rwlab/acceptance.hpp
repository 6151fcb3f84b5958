#pragma once

// Reproduction checks for the headline numbers: central values, t^{-3/2}
// decay, gradient-maximum coefficients, the nine deviation exponents, the
// Cattaneo residual exponent, the correction function, oracle equivalence,
// PDE residual convergence, normalization, and figure scaling. Every
// tolerance is fixed here. Used by `rwlab report` and by the acceptance suite.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwlab/correction.hpp"
#include "rwlab/deviation.hpp"
#include "rwlab/kernels.hpp"
#include "rwlab/montecarlo.hpp"
#include "rwlab/quadrature.hpp"
#include "rwlab/transport.hpp"

namespace rwlab::acceptance {

struct Check {
    std::string id;
    std::string what;
    bool pass = false;
    nlohmann::json detail = nlohmann::json::object();
};

inline constexpr double kFitTMin = 30.0;
inline constexpr double kFitTMax = 3000.0;
inline constexpr int kFitSamples = 40;

/// Published exponents in standard_metrics() order, and their tolerance.
inline constexpr std::array<double, 9> kPublishedExponents = {-1.272, -1.255, -1.269, -1.626, -1.7335,
                                                              -1.626, -1.022, -1.032, -1.029};
inline constexpr double kExponentTolerance = 0.08;
inline constexpr double kCattaneoExponent = -2.0;
inline constexpr double kCattaneoTolerance = 0.1;

struct Sweeps {
    std::vector<deviation::DeviationSeries> nine;
    deviation::DeviationSeries cattaneo;
};

inline std::string label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

inline std::vector<double> fit_grid() { return deviation::log_grid(kFitTMin, kFitTMax, kFitSamples); }

/// The expensive part: nine deviation series plus the Cattaneo residual series.
inline Sweeps run_sweeps(const std::vector<double>& ts = fit_grid())
{
    Sweeps s;
    for (const auto& m : deviation::standard_metrics()) s.nine.push_back(deviation::deviation_series(m, ts));
    s.cattaneo = deviation::make_series("cattaneo", ts, [](double t) { return correction::cattaneo_residual_profile(t); });
    return s;
}

inline Check central_values()
{
    Check c{"C1", "central values at t=100 within 1e-5 of 0.0397945 / 0.0399441 / 0.0398942"};
    const double rw = kernels::rho_rw(0.0, 100.0);
    const double te = kernels::rho_te(0.0, 100.0);
    const double g = kernels::rho_g(0.0, 100.0);
    c.pass = std::abs(rw - 0.0397945) <= 1e-5 && std::abs(te - 0.0399441) <= 1e-5 && std::abs(g - 0.0398942) <= 1e-5;
    c.detail = {{"rho_rw", rw}, {"rho_te", te}, {"rho_g", g}};
    return c;
}

inline Check three_halves_law()
{
    Check c{"C2", "|rho_RW(0,t) - rho_G(0,t)| t^1.5 constant within 5% at t = 1e2, 1e3, 1e4, near 1/(4 sqrt(2 pi))"};
    const double target = 1.0 / (4.0 * std::sqrt(2.0 * std::numbers::pi));
    double lo = HUGE_VAL, hi = 0.0;
    bool near = true;
    nlohmann::json vals = nlohmann::json::array();
    for (double t : {1e2, 1e3, 1e4}) {
        const double v = std::abs(kernels::rho_rw(0.0, t) - kernels::rho_g(0.0, t)) * std::pow(t, 1.5);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        near = near && std::abs(v / target - 1.0) <= 0.05;
        vals.push_back({{"t", t}, {"scaled_difference", v}});
    }
    c.pass = near && hi / lo - 1.0 <= 0.05;
    c.detail = {{"target", target}, {"values", vals}};
    return c;
}

inline Check gradient_maxima()
{
    Check c{"C3", "t(1 - g_RW/g_TE) = 0.89961 +/- 2% and t(1 - g_RW/g_G) = 0.54298 +/- 2% at t = 500, 1000, 2000"};
    c.pass = true;
    nlohmann::json vals = nlohmann::json::array();
    for (double t : {500.0, 1000.0, 2000.0}) {
        const auto r = deviation::gradient_ratio_coeffs(t);
        const bool ok = std::abs(r.c_te / 0.89961 - 1.0) <= 0.02 && std::abs(r.c_g / 0.54298 - 1.0) <= 0.02;
        c.pass = c.pass && ok;
        vals.push_back({{"t", t}, {"c_te", r.c_te}, {"c_g", r.c_g}, {"pass", ok}});
    }
    c.detail = {{"coefficients", vals}};
    return c;
}

inline std::pair<double, double> fit_window() { return {kFitTMin, kFitTMax}; }

/// One check per metric, plus the "all faster than 1/t" and ordering checks.
inline std::vector<Check> exponents(const Sweeps& s)
{
    std::vector<Check> out;
    bool all_below = true;
    std::array<double, 9> fitted{};
    for (std::size_t i = 0; i < s.nine.size(); ++i) {
        const auto fit = deviation::fit_power_law(s.nine[i], fit_window());
        fitted[i] = fit.exponent;
        Check c{"C4." + std::to_string(i + 1),
                "exponent of " + s.nine[i].metric + " within 0.08 of " + label(kPublishedExponents[i])};
        c.pass = std::abs(fit.exponent - kPublishedExponents[i]) <= kExponentTolerance;
        c.detail = {{"metric", s.nine[i].metric},
                    {"exponent", fit.exponent},
                    {"published", kPublishedExponents[i]},
                    {"log_amplitude", fit.log_amplitude},
                    {"rms_residual", fit.rms_residual}};
        all_below = all_below && fit.exponent < -1.0;
        out.push_back(std::move(c));
    }
    Check below{"C4.all", "all nine fitted exponents strictly below -1"};
    below.pass = all_below;
    out.push_back(below);

    // gradient exponents < density exponents < flux exponents
    const double dens_max = std::max({fitted[0], fitted[1], fitted[2]});
    const double dens_min = std::min({fitted[0], fitted[1], fitted[2]});
    const double grad_max = std::max({fitted[3], fitted[4], fitted[5]});
    const double flux_min = std::min({fitted[6], fitted[7], fitted[8]});
    Check order{"C4.order", "ordering: gradient exponents < density exponents < flux exponents"};
    order.pass = grad_max < dens_min && dens_max < flux_min;
    order.detail = {{"gradient_max", grad_max}, {"density_min", dens_min}, {"density_max", dens_max},
                    {"flux_min", flux_min}};
    out.push_back(order);
    return out;
}

inline Check cattaneo_exponent(const Sweeps& s)
{
    Check c{"C5", "Cattaneo residual exponent -2 +/- 0.1 over [30, 3000]"};
    const auto fit = deviation::fit_power_law(s.cattaneo, fit_window());
    c.pass = std::abs(fit.exponent - kCattaneoExponent) <= kCattaneoTolerance;
    c.detail = {{"exponent", fit.exponent}, {"rms_residual", fit.rms_residual}};
    return c;
}

inline Check correction_round_trip()
{
    Check c{"C6.a", "f_approx(x, t) = 1 - 1e-3 to 1e-12 at x = 2t/ln(1000) = 0.2895 t"};
    const double ratio = 2.0 / std::log(1000.0);
    double worst = 0.0;
    for (double t : {10.0, 100.0, 1000.0, 1e4}) worst = std::max(worst, std::abs(correction::f_approx(ratio * t, t) - (1.0 - 1e-3)));
    c.pass = worst <= 1e-12 && std::abs(ratio - 0.2895) < 5e-5;
    c.detail = {{"ratio", ratio}, {"max_error", worst}};
    return c;
}

inline Check correction_settling()
{
    Check c{"C6.b", "time for f_exact to settle within 1e-3 of 1 at x = 5, 10, 30 equals 3.45 x within 10%"};
    c.pass = true;
    nlohmann::json vals = nlohmann::json::array();
    for (double x : {5.0, 10.0, 30.0}) {
        const double t_settle = correction::f_exact_settling_time(x, 1e-3, 400.0 * x);
        const double ratio = t_settle / x;
        const bool ok = std::isfinite(ratio) && std::abs(ratio / 3.45 - 1.0) <= 0.10;
        c.pass = c.pass && ok;
        vals.push_back({{"x", x}, {"t_settle", t_settle}, {"ratio", ratio}, {"pass", ok}});
    }
    c.detail = {{"settling", vals}};
    return c;
}

inline Check monte_carlo_equivalence(std::uint64_t seed = 42)
{
    Check c{"C7.a", "Monte Carlo N=1e6, t=100: max |z| < 4.5 and chi-square p > 1e-3"};
    const auto hist = montecarlo::simulate(1'000'000, 100, seed);
    const auto cmp = montecarlo::histogram_compare(hist);
    c.pass = cmp.max_z < 4.5 && cmp.p_value > 1e-3;
    c.detail = {{"seed", seed}, {"max_z", cmp.max_z}, {"chi2", cmp.chi2}, {"dof", cmp.dof}, {"p_value", cmp.p_value}};
    return c;
}

inline Check lattice_master_equation(std::uint64_t seed = 7)
{
    Check c{"C7.b", "lattice master-equation residual of rho_RW <= 1e-14 at 100 random sites"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> t_dist(1, 2000);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::int64_t t = t_dist(rng);
        const std::int64_t span = std::min<std::int64_t>(t, 4 * std::int64_t(std::sqrt(double(t))) + 2);
        std::uniform_int_distribution<std::int64_t> k_dist(0, span);
        std::int64_t x = -span + 2 * k_dist(rng);
        if ((x + t) % 2 != 0) x += 1;
        x = std::clamp(x, -t, t);
        worst = std::max(worst, std::abs(kernels::model_residual(Model::RW, double(x), double(t), 0.0)));
    }
    c.pass = worst <= 1e-14;
    c.detail = {{"max_residual", worst}};
    return c;
}

/// Observed order of the finite-difference PDE residual under h-halving at 20
/// random interior points: every point must decrease, and the RMS ratio must
/// be 4 within 10%.
inline Check pde_residual_order(Model m, std::uint64_t seed = 11)
{
    Check c{m == Model::G ? "C8.G" : "C8.TE",
            std::string("PDE residual of rho_") + (m == Model::G ? "G" : "TE") + " is O(h^2) under h-halving"};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t_dist(20.0, 200.0);
    std::uniform_real_distribution<double> u_dist(-2.5, 2.5);
    const double h = 0.2;
    double ss_h = 0.0, ss_h2 = 0.0;
    bool monotone = true;
    for (int i = 0; i < 20; ++i) {
        const double t = t_dist(rng);
        const double x = u_dist(rng) * std::sqrt(t);
        const double r1 = kernels::model_residual(m, x, t, h);
        const double r2 = kernels::model_residual(m, x, t, 0.5 * h);
        ss_h += r1 * r1;
        ss_h2 += r2 * r2;
        monotone = monotone && std::abs(r2) < std::abs(r1);
    }
    const double ratio = std::sqrt(ss_h / ss_h2);
    c.pass = monotone && std::abs(ratio / 4.0 - 1.0) <= 0.10;
    c.detail = {{"rms_ratio", ratio}, {"all_points_decrease", monotone}};
    return c;
}

inline Check normalization()
{
    Check c{"C9", "2 sum rho_RW lattice = 1 to 1e-12 (t = 10, 100, 1000); TE cone mass = 1 - exp(-2t) to 1e-8 (t = 1, 5, 20)"};
    nlohmann::json vals = nlohmann::json::array();
    c.pass = true;
    for (std::int64_t t : {10, 100, 1000}) {
        long double sum = 0.0L;
        for (std::int64_t x = -t; x <= t; x += 2) sum += kernels::rho_rw_lattice(x, t);
        const double err = std::abs(double(2.0L * sum - 1.0L));
        c.pass = c.pass && err <= 1e-12;
        vals.push_back({{"model", "rw"}, {"t", t}, {"error", err}});
    }
    for (double t : {1.0, 5.0, 20.0}) {
        const double mass = transport::tail_mass(Model::TE, -t, t);
        const double err = std::abs(mass - (1.0 - std::exp(-2.0 * t)));
        c.pass = c.pass && err <= 1e-8;
        vals.push_back({{"model", "te"}, {"t", t}, {"error", err}});
    }
    c.detail = {{"errors", vals}};
    return c;
}

inline Check figure_peak_ratio()
{
    Check c{"C10", "peak |rho_RW - rho_G| at t=30 over t=100 equals (100/30)^1.5 within 15%"};
    const deviation::Metric m{Quantity::Density, Model::RW, Model::G};
    const double ratio = deviation::peak_difference(m, 30.0) / deviation::peak_difference(m, 100.0);
    const double target = std::pow(100.0 / 30.0, 1.5);
    c.pass = std::abs(ratio / target - 1.0) <= 0.15;
    c.detail = {{"ratio", ratio}, {"target", target}};
    return c;
}

inline Check flux_discrepancy()
{
    Check c{"C11", "relative flux discrepancy |J_RW - J_G| / J_G at x = sqrt(t) below 1e-3 for t >= 1e3"};
    c.pass = true;
    nlohmann::json vals = nlohmann::json::array();
    for (double t : {1e3, 3e3, 1e4}) {
        const double x = std::sqrt(t);
        const double jg = transport::flux(Model::G, x, t).j;
        const double rel = std::abs(transport::flux(Model::RW, x, t).j - jg) / jg;
        c.pass = c.pass && rel < 1e-3;
        vals.push_back({{"t", t}, {"relative", rel}});
    }
    c.detail = {{"values", vals}};
    return c;
}

/// All checks; `sweeps` supplies C4/C5 so callers can reuse the series.
inline std::vector<Check> evaluate_all(const Sweeps& sweeps)
{
    std::vector<Check> out{central_values(), three_halves_law(), gradient_maxima()};
    for (auto& c : exponents(sweeps)) out.push_back(std::move(c));
    out.push_back(cattaneo_exponent(sweeps));
    out.push_back(correction_round_trip());
    out.push_back(correction_settling());
    out.push_back(monte_carlo_equivalence());
    out.push_back(lattice_master_equation());
    out.push_back(pde_residual_order(Model::G));
    out.push_back(pde_residual_order(Model::TE));
    out.push_back(normalization());
    out.push_back(figure_peak_ratio());
    out.push_back(flux_discrepancy());
    return out;
}

}  // namespace rwlab::acceptance
