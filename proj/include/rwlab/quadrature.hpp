#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rwlab::quadrature {

struct Options {
    double rel_tol = 1e-10;
    unsigned max_depth = 12;
};

/// Adaptive 61-point Gauss-Kronrod over [a, b].
template <class F>
double integrate(F&& f, double a, double b, Options opt = {})
{
    if (!(b > a)) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, opt.max_depth, opt.rel_tol, &err);
}

/// Integrates panel by panel over sorted breakpoints; points outside [a, b] are ignored.
template <class F>
double integrate_panels(F&& f, double a, double b, std::vector<double> breaks, Options opt = {})
{
    if (!(b > a)) return 0.0;
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double x) { return !(x > a && x < b); }), breaks.end());
    std::sort(breaks.begin(), breaks.end());
    double sum = 0.0;
    double lo = a;
    for (double hi : breaks) {
        sum += integrate(f, lo, hi, opt);
        lo = hi;
    }
    return sum + integrate(f, lo, b, opt);
}

/// Breakpoints at k*width for integer |k| <= count, for integrands concentrated near the origin.
inline std::vector<double> symmetric_breaks(double width, int count)
{
    std::vector<double> out;
    out.reserve(2 * count + 1);
    for (int k = -count; k <= count; ++k) out.push_back(k * width);
    return out;
}

}  // namespace rwlab::quadrature
