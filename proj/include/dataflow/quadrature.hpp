#pragma once

#include <cmath>

#include "dataflow/errors.hpp"

namespace dataflow {

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    if (depth <= 0)
        throw ConfigError("adaptive quadrature failed to converge on ["
                          + std::to_string(a) + ", " + std::to_string(b) + "]");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
         + simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive composite Simpson integration of f over [a, b] to the requested
// absolute tolerance.  Throws ConfigError if the recursion limit is reached
// (treated as a configuration problem: the supplied profile is too wild).
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 40) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace dataflow
