#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "dataflow/errors.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// AlphaProfile: the per-processor maximum-throughput profile alpha(x), a
// nonnegative 1-periodic function on the unit torus.  Evaluation wraps the
// argument into [0,1) first, so alpha(x) == alpha(x+1) exactly whenever x+1 is
// representable.  The supported shapes are the ones the experiments need plus
// a tabulated fallback.
// ---------------------------------------------------------------------------

enum class AlphaKind {
    constant,
    sine_power,    // base - amplitude * sin(pi x)^2
    sine_power6,   // base - amplitude * sin(pi x)^6
    notch,         // base - amplitude * c(x), c = piecewise-linear unit notch at x = 1/2
    cosine,        // base + amplitude * cos(2 pi harmonic x)
    tabulated,     // periodic linear interpolation of samples at x = j/n
};

class AlphaProfile {
public:
    AlphaProfile() : AlphaProfile(AlphaKind::constant, {1.0}, 0) {}

    static AlphaProfile constant(double value) {
        return AlphaProfile(AlphaKind::constant, {value}, 0);
    }
    static AlphaProfile sine_power(double base, double amplitude) {
        return AlphaProfile(AlphaKind::sine_power, {base, amplitude}, 0);
    }
    static AlphaProfile sine_power6(double base, double amplitude) {
        return AlphaProfile(AlphaKind::sine_power6, {base, amplitude}, 0);
    }
    static AlphaProfile notch(double base, double amplitude) {
        return AlphaProfile(AlphaKind::notch, {base, amplitude}, 0);
    }
    static AlphaProfile cosine(double base, double amplitude, int harmonic) {
        if (harmonic < 1) throw ConfigError("alpha cosine: harmonic must be >= 1");
        return AlphaProfile(AlphaKind::cosine, {base, amplitude}, harmonic);
    }
    static AlphaProfile tabulated(std::vector<double> samples) {
        if (samples.empty()) throw ConfigError("alpha tabulated: no samples");
        return AlphaProfile(AlphaKind::tabulated, std::move(samples), 0);
    }

    double operator()(double x) const {
        x -= std::floor(x);         // wrap to [0,1); exact for representable inputs
        if (x >= 1.0) x = 0.0;      // guards x = -eps rounding up through the wrap
        return eval_unit(x);
    }

    double max_value() const { return max_value_; }
    double min_value() const { return min_value_; }
    AlphaKind kind() const { return kind_; }
    const std::vector<double>& parameters() const { return params_; }
    int harmonic() const { return harmonic_; }

private:
    AlphaProfile(AlphaKind kind, std::vector<double> params, int harmonic)
        : kind_(kind), params_(std::move(params)), harmonic_(harmonic) {
        for (double p : params_)
            if (!std::isfinite(p)) throw ConfigError("alpha profile: non-finite parameter");
        std::tie(min_value_, max_value_) = analytic_range();
        if (min_value_ < 0.0)
            throw ConfigError("alpha profile: negative values (min = "
                              + std::to_string(min_value_) + ")");
    }

    // The unit notch of the slowdown experiment: 0 away from x = 1/2, ramps
    // linearly on [0.45, 0.475] and [0.525, 0.55], plateau 1 on [0.475, 0.525].
    static double notch_shape(double x) {
        if (x <= 0.45 || x >= 0.55) return 0.0;
        if (x < 0.475) return 40.0 * x - 18.0;
        if (x <= 0.525) return 1.0;
        return -40.0 * x + 22.0;
    }

    double eval_unit(double x) const {
        switch (kind_) {
            case AlphaKind::constant:
                return params_[0];
            case AlphaKind::sine_power: {
                const double s = std::sin(std::numbers::pi * x);
                return params_[0] - params_[1] * s * s;
            }
            case AlphaKind::sine_power6: {
                const double s = std::sin(std::numbers::pi * x);
                const double s2 = s * s;
                return params_[0] - params_[1] * s2 * s2 * s2;
            }
            case AlphaKind::notch:
                return params_[0] - params_[1] * notch_shape(x);
            case AlphaKind::cosine:
                return params_[0] + params_[1] * std::cos(2.0 * std::numbers::pi * harmonic_ * x);
            case AlphaKind::tabulated: {
                const auto n = params_.size();
                const double u = x * static_cast<double>(n);
                auto j = static_cast<std::size_t>(u);
                if (j >= n) j = n - 1;
                const double frac = u - static_cast<double>(j);
                const double a = params_[j];
                const double b = params_[(j + 1) % n];
                return a + frac * (b - a);
            }
        }
        return 0.0;  // unreachable
    }

    // All supported shapes attain their extrema at known points, so the range
    // is exact (no sampling).
    std::pair<double, double> analytic_range() const {
        switch (kind_) {
            case AlphaKind::constant:
                return {params_[0], params_[0]};
            case AlphaKind::sine_power:
            case AlphaKind::sine_power6:
            case AlphaKind::notch: {
                const double a = params_[0];
                const double b = params_[0] - params_[1];
                return {std::min(a, b), std::max(a, b)};
            }
            case AlphaKind::cosine: {
                const double a = params_[0] + std::abs(params_[1]);
                const double b = params_[0] - std::abs(params_[1]);
                return {b, a};
            }
            case AlphaKind::tabulated: {
                const auto [lo, hi] = std::minmax_element(params_.begin(), params_.end());
                return {*lo, *hi};
            }
        }
        return {0.0, 0.0};  // unreachable
    }

    AlphaKind kind_;
    std::vector<double> params_;
    int harmonic_ = 0;
    double min_value_ = 0.0;
    double max_value_ = 0.0;
};

// ---------------------------------------------------------------------------
// ModelParams: the shared O(1) parameters of both models.  alpha_max caches
// the supremum of the alpha profile (needed for dissipation speeds and step
// bounds) and is computed, not supplied, so it cannot drift out of sync.
// ---------------------------------------------------------------------------

struct ModelParams {
    double r_star = 1.0;        // rescaled self-throttle threshold, > 0
    double beta = 1.0;          // neighbor-dependence fraction, in (0, 1]
    std::vector<double> eta;    // per-axis ratio eps_d/delta, each > 0
    double alpha_max = 1.0;     // sup of the alpha profile

    static ModelParams make(double r_star, double beta, std::vector<double> eta,
                            const AlphaProfile& alpha) {
        ModelParams p;
        p.r_star = r_star;
        p.beta = beta;
        p.eta = std::move(eta);
        p.alpha_max = alpha.max_value();
        p.validate();
        return p;
    }

    static ModelParams make1d(double r_star, double beta, double eta,
                              const AlphaProfile& alpha) {
        return make(r_star, beta, {eta}, alpha);
    }

    void validate() const {
        std::vector<std::string> issues;
        if (!(r_star > 0.0)) issues.push_back("r_star must be positive");
        if (!(beta > 0.0) || beta > 1.0) issues.push_back("beta must lie in (0, 1]");
        if (eta.empty()) issues.push_back("eta must have at least one axis entry");
        for (std::size_t d = 0; d < eta.size(); ++d)
            if (!(eta[d] > 0.0))
                issues.push_back("eta[" + std::to_string(d) + "] must be positive");
        if (!(alpha_max > 0.0)) issues.push_back("alpha_max must be positive");
        if (!issues.empty()) throw ConfigError(std::move(issues));
    }

    double eta1() const { return eta.at(0); }
};

// Rescaled throttle inputs at one lattice site: stage density r plus the
// per-axis neighbor increments D+/D-.  Negative r is an input error at the
// throttle level (positivity is a theorem, so a negative r means the caller's
// solver already failed).
struct ThrottleState {
    double r = 0.0;
    std::vector<double> d_plus;
    std::vector<double> d_minus;
};

}  // namespace dataflow
