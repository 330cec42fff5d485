#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dataflow/params.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Throttling functions.  The unscaled pair (v1, v2) drives the lattice ODE
// model; the rescaled pair (w1, w2) and their composite w drive the continuum
// flux.  All are pure and thread-safe.
// ---------------------------------------------------------------------------

// Self-throttle: fraction of the nominal rate available at stage occupancy q
// against the threshold q_star.  Clamped into [0,1]; negative q yields 0.
inline double v1_self_throttle(double q, double q_star) {
    if (!(q_star > 0.0)) throw std::invalid_argument("v1_self_throttle: q_star must be positive");
    return std::max(0.0, std::min(1.0, q / q_star));
}

// Neighbor throttle: amount transferable out of a stage holding q given the
// neighbor headroom differences delta_plus/delta_minus.  Zero headroom (or
// negative, i.e. a neighbor lagging behind) stops the transfer entirely.
inline double v2_neighbor_throttle(double q, double delta_plus, double delta_minus, double beta) {
    if (!(beta > 0.0) || beta > 1.0)
        throw std::invalid_argument("v2_neighbor_throttle: beta must lie in (0, 1]");
    const double headroom = std::min(std::max(delta_plus, 0.0), std::max(delta_minus, 0.0));
    return std::min(q, headroom / beta);
}

// Rescaled self-throttle.
inline double w1(double r, double r_star) {
    if (!(r_star > 0.0)) throw std::invalid_argument("w1: r_star must be positive");
    return std::max(0.0, std::min(1.0, r / r_star));
}

namespace detail {

// Core of the rescaled neighbor throttle, valid for any real r: a negative r
// passes straight through the min and is clamped to zero flux downstream by
// w1.  This total extension is what the continuum solver evaluates, since
// fifth-order reconstruction can undershoot rho below 0 near kinks.
inline double w2_core(double r, double d_minus, double d_plus, double eta, double beta) {
    const double hp = std::max(eta * d_plus + r, 0.0);
    const double hm = std::max(eta * d_minus + r, 0.0);
    return std::min(r, std::min(hp, hm) / beta);
}

inline double w1_core(double r, double r_star) {
    return std::max(0.0, std::min(1.0, r / r_star));
}

// Total composite alpha * w1(w2(...)): no domain checks, defined for all r.
inline double w_total(double r, double d_minus, double d_plus,
                      double r_star, double beta, double eta, double alpha) {
    return alpha * w1_core(w2_core(r, d_minus, d_plus, eta, beta), r_star);
}

}  // namespace detail

// Rescaled neighbor throttle.
inline double w2(double r, double d_minus, double d_plus, double eta, double beta) {
    if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("w2: beta must lie in (0, 1]");
    if (!(eta > 0.0)) throw std::invalid_argument("w2: eta must be positive");
    return detail::w2_core(r, d_minus, d_plus, eta, beta);
}

// Composite throttle alpha * w1(w2(r, D-, D+)), the microscopic flux in
// rescaled variables.  Always lies in [0, alpha].  Rejects negative r.
inline double w_composite(double r, double d_minus, double d_plus,
                          const ModelParams& params, double alpha) {
    if (!(r >= 0.0)) throw std::domain_error("w_composite: r must be nonnegative");
    if (!(alpha >= 0.0)) throw std::invalid_argument("w_composite: alpha must be nonnegative");
    return detail::w_total(r, d_minus, d_plus, params.r_star, params.beta, params.eta1(), alpha);
}

// n-dimensional composite: the neighbor throttle is the min over lattice axes.
inline double w_composite(const ThrottleState& state, const ModelParams& params, double alpha) {
    if (!(state.r >= 0.0)) throw std::domain_error("w_composite: r must be nonnegative");
    if (!(alpha >= 0.0)) throw std::invalid_argument("w_composite: alpha must be nonnegative");
    const std::size_t n = params.eta.size();
    if (state.d_plus.size() != n || state.d_minus.size() != n)
        throw std::invalid_argument("w_composite: axis count mismatch between state and params");
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < n; ++d)
        m = std::min(m, detail::w2_core(state.r, state.d_minus[d], state.d_plus[d],
                                        params.eta[d], params.beta));
    return alpha * detail::w1_core(m, params.r_star);
}

// ---------------------------------------------------------------------------
// Closed-form first-order flux Phi0(r, D) with a region tag.  The (D, r)
// half-plane r >= 0 splits into:
//   Omega1: r >= r*      and |eta D| <= r - beta r*      -> alpha
//   Omega2: r <= r*      and |eta D| <= (1 - beta) r     -> alpha r / r*
//   Omega3: D <= 0, rest                                  -> alpha (r + eta D) / (beta r*)
//   Omega4: D >  0, rest                                  -> alpha (r - eta D) / (beta r*)
// The Omega3/4 value is written with a zero clamp so it extends continuously
// to the outer wedge |eta D| > r, where the composite is identically 0.
// Boundary ties report the lowest-numbered region (labels are diagnostic).
// ---------------------------------------------------------------------------

enum class FluxRegion { omega1 = 1, omega2 = 2, omega3 = 3, omega4 = 4 };

struct PiecewiseFlux {
    double value;
    FluxRegion region;
};

inline PiecewiseFlux phi0_piecewise(double r, double D, const ModelParams& params, double alpha) {
    if (!(r >= 0.0)) throw std::domain_error("phi0_piecewise: r must be nonnegative");
    const double rs = params.r_star;
    const double beta = params.beta;
    const double s = std::abs(params.eta1() * D);
    if (r >= rs && s <= r - beta * rs) return {alpha, FluxRegion::omega1};
    if (r <= rs && s <= (1.0 - beta) * r) return {alpha * r / rs, FluxRegion::omega2};
    const double value = alpha * std::max(r - s, 0.0) / (beta * rs);
    return {value, D <= 0.0 ? FluxRegion::omega3 : FluxRegion::omega4};
}

// Second-order flux Phi1(r, D, D2): the epsilon/2 * D2 correction shifts both
// neighbor increments.  With epsilon = 0 it routes through the Phi0 evaluation
// bit-for-bit.
inline double phi1(double r, double D, double D2, double epsilon,
                   const ModelParams& params, double alpha) {
    if (!(r >= 0.0)) throw std::domain_error("phi1: r must be nonnegative");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("phi1: epsilon must be nonnegative");
    const double corr = 0.5 * epsilon * D2;
    if (corr == 0.0) return phi0_piecewise(r, D, params, alpha).value;
    return detail::w_total(r, -D + corr, D + corr,
                           params.r_star, params.beta, params.eta1(), alpha);
}

}  // namespace dataflow
