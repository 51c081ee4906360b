#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "mollow/errors.hpp"

namespace mollow::numerics {

/// n uniformly spaced points on [lo, hi], endpoints included exactly.
inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n < 2 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw Error(ErrorKind::InvalidGrid, "linspace needs n >= 2 and lo < hi");
    std::vector<double> xs(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k)
        xs[k] = lo + step * static_cast<double>(k);
    xs.back() = hi;
    return xs;
}

struct Extremum {
    double x;
    double value;
    double bracket_width;
    int iterations;
};

/// Golden-section search for the maximum of a unimodal f on [a, b].
/// Stops once the bracket is narrower than tol.
template <typename F>
Extremum golden_section_max(F&& f, double a, double b, double tol = 1e-9)
{
    constexpr double inv_phi = 0.6180339887498948482;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    int it = 0;
    while (b - a > tol && it < 200) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    const double x = 0.5 * (a + b);
    return {x, f(x), b - a, it};
}

/// Indices k of interior grid samples that are local maxima
/// (ys[k-1] < ys[k] >= ys[k+1]); plateaus report their left edge.
inline std::vector<std::size_t> local_maxima(const std::vector<double>& ys)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k + 1 < ys.size(); ++k)
        if (ys[k] > ys[k - 1] && ys[k] >= ys[k + 1])
            idx.push_back(k);
    return idx;
}

inline std::vector<std::size_t> local_minima(const std::vector<double>& ys)
{
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k + 1 < ys.size(); ++k)
        if (ys[k] < ys[k - 1] && ys[k] <= ys[k + 1])
            idx.push_back(k);
    return idx;
}

/// Vertex offset (in units of the grid step) of the parabola through three
/// equally spaced samples; 0 when the samples are collinear.
inline double parabolic_offset(double y_left, double y_mid, double y_right)
{
    const double denom = y_left - 2.0 * y_mid + y_right;
    if (denom == 0.0)
        return 0.0;
    return 0.5 * (y_left - y_right) / denom;
}

} // namespace mollow::numerics
