#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

namespace dataflow {

// ---------------------------------------------------------------------------
// Fifth-order WENO one-sided first derivatives for Hamilton-Jacobi equations
// (Jiang-Peng variant): the derivative is reconstructed from five consecutive
// one-sided differences through three quadratic candidate stencils blended by
// Jiang-Shu smoothness weights (regularization 1e-6).  On smooth data the
// nonlinear weights collapse to the linear ones (1/10, 6/10, 3/10) and the
// result is the fifth-order upwind formula.
// ---------------------------------------------------------------------------

inline constexpr double kWenoEps = 1e-6;

// Biased derivative estimate from differences v1..v5 (ordered toward the bias
// side).  For the minus-biased value at node i, v1..v5 are the forward
// differences of u_{i-3}..u_{i+2}; the plus-biased value uses the reversed
// window (differences of u_{i+3}..u_{i-2}).
inline double weno5_kernel(double v1, double v2, double v3, double v4, double v5) {
    const double p1 = v1 / 3.0 - 7.0 * v2 / 6.0 + 11.0 * v3 / 6.0;
    const double p2 = -v2 / 6.0 + 5.0 * v3 / 6.0 + v4 / 3.0;
    const double p3 = v3 / 3.0 + 5.0 * v4 / 6.0 - v5 / 6.0;

    const double c1 = v1 - 2.0 * v2 + v3;
    const double c2 = v2 - 2.0 * v3 + v4;
    const double c3 = v3 - 2.0 * v4 + v5;
    const double s1 = (13.0 / 12.0) * c1 * c1 + 0.25 * (v1 - 4.0 * v2 + 3.0 * v3) * (v1 - 4.0 * v2 + 3.0 * v3);
    const double s2 = (13.0 / 12.0) * c2 * c2 + 0.25 * (v2 - v4) * (v2 - v4);
    const double s3 = (13.0 / 12.0) * c3 * c3 + 0.25 * (3.0 * v3 - 4.0 * v4 + v5) * (3.0 * v3 - 4.0 * v4 + v5);

    const double a1 = 0.1 / ((kWenoEps + s1) * (kWenoEps + s1));
    const double a2 = 0.6 / ((kWenoEps + s2) * (kWenoEps + s2));
    const double a3 = 0.3 / ((kWenoEps + s3) * (kWenoEps + s3));
    return (a1 * p1 + a2 * p2 + a3 * p3) / (a1 + a2 + a3);
}

// Both biased derivatives at one node.  u points at the node value; samples
// u[-3*stride] .. u[3*stride] must be valid.
struct BiasedPair {
    double minus;
    double plus;
};

inline BiasedPair weno5_biased_at(const double* u, std::ptrdiff_t stride, double h) {
    const double inv = 1.0 / h;
    double d[6];  // forward differences between consecutive samples
    for (int j = 0; j < 6; ++j)
        d[j] = (u[(j - 2) * stride] - u[(j - 3) * stride]) * inv;
    return {weno5_kernel(d[0], d[1], d[2], d[3], d[4]),
            weno5_kernel(d[5], d[4], d[3], d[2], d[1])};
}

// Biased derivatives along a contiguous line of n nodes.  `u` spans the line
// including 3 ghost values on each side (n + 6 values, node j at u[j + 3]).
inline void weno5_line(std::span<const double> u, double h,
                       std::span<double> minus, std::span<double> plus) {
    const std::size_t n = minus.size();
    if (u.size() != n + 6 || plus.size() != n)
        throw std::invalid_argument("weno5_line: span sizes inconsistent");
    const double inv = 1.0 / h;
    // All n + 5 consecutive differences once, then sliding kernel windows.
    double dprev[5];
    for (int j = 0; j < 5; ++j) dprev[j] = (u[j + 1] - u[j]) * inv;
    for (std::size_t i = 0; i < n; ++i) {
        const double dnext = (u[i + 6] - u[i + 5]) * inv;
        minus[i] = weno5_kernel(dprev[0], dprev[1], dprev[2], dprev[3], dprev[4]);
        plus[i] = weno5_kernel(dnext, dprev[4], dprev[3], dprev[2], dprev[1]);
        dprev[0] = dprev[1];
        dprev[1] = dprev[2];
        dprev[2] = dprev[3];
        dprev[3] = dprev[4];
        dprev[4] = dnext;
    }
}

// Central three-point second difference.
inline double second_difference(double um, double uc, double up, double h) {
    return (um - 2.0 * uc + up) / (h * h);
}

}  // namespace dataflow
