#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

#include "dataflow/errors.hpp"
#include "dataflow/quadrature.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Initial-density profiles rho0(x, z) and the closed-form tail integrals
// int_z^1 rho0(x, s) ds the potential initialization needs.  The stock shapes
// cover the experiments; `custom` falls back to adaptive quadrature.
// ---------------------------------------------------------------------------

enum class DensityKind { zero, constant, indicator, sine6_band, custom };

class DensityProfile {
public:
    DensityProfile() = default;

    static DensityProfile zero() { return DensityProfile(); }

    static DensityProfile constant(double amplitude) {
        DensityProfile p;
        p.kind_ = DensityKind::constant;
        p.amplitude_ = amplitude;
        return p;
    }

    // amplitude on {z <= z_cut}, zero above.
    static DensityProfile indicator(double amplitude, double z_cut) {
        DensityProfile p;
        p.kind_ = DensityKind::indicator;
        p.amplitude_ = amplitude;
        p.z_cut_ = z_cut;
        return p;
    }

    // amplitude * sin(2 pi z)^6 on {z <= z_cut}, zero above.
    static DensityProfile sine6_band(double amplitude, double z_cut) {
        DensityProfile p;
        p.kind_ = DensityKind::sine6_band;
        p.amplitude_ = amplitude;
        p.z_cut_ = z_cut;
        return p;
    }

    static DensityProfile custom(std::function<double(double, double)> f) {
        DensityProfile p;
        p.kind_ = DensityKind::custom;
        p.fn_ = std::move(f);
        return p;
    }

    double operator()(double x, double z) const {
        switch (kind_) {
            case DensityKind::zero:
                return 0.0;
            case DensityKind::constant:
                return amplitude_;
            case DensityKind::indicator:
                return z <= z_cut_ ? amplitude_ : 0.0;
            case DensityKind::sine6_band: {
                if (z > z_cut_) return 0.0;
                const double s = std::sin(2.0 * std::numbers::pi * z);
                const double s2 = s * s;
                return amplitude_ * s2 * s2 * s2;
            }
            case DensityKind::custom:
                return fn_(x, z);
        }
        return 0.0;
    }

    // int_z^1 rho0(x, s) ds for z in [0, 1]; closed form except for `custom`,
    // which integrates adaptively to 1e-10 absolute.
    double integral_to_top(double x, double z) const {
        switch (kind_) {
            case DensityKind::zero:
                return 0.0;
            case DensityKind::constant:
                return amplitude_ * (1.0 - z);
            case DensityKind::indicator:
                return amplitude_ * std::max(0.0, z_cut_ - std::max(z, 0.0));
            case DensityKind::sine6_band: {
                const double hi = std::min(z_cut_, 1.0);
                if (z >= hi) return 0.0;
                const double lo = std::max(z, 0.0);
                const double twopi = 2.0 * std::numbers::pi;
                return amplitude_ * (sine6_antiderivative(twopi * hi)
                                     - sine6_antiderivative(twopi * lo)) / twopi;
            }
            case DensityKind::custom:
                return adaptive_simpson([&](double s) { return fn_(x, s); }, z, 1.0, 1e-10);
        }
        return 0.0;
    }

    DensityKind kind() const { return kind_; }
    double amplitude() const { return amplitude_; }
    double z_cut() const { return z_cut_; }

private:
    // int sin(u)^6 du = (10 u - 7.5 sin(2u) + 1.5 sin(4u) - sin(6u)/6) / 32
    static double sine6_antiderivative(double u) {
        return (10.0 * u - 7.5 * std::sin(2.0 * u) + 1.5 * std::sin(4.0 * u)
                - std::sin(6.0 * u) / 6.0) / 32.0;
    }

    DensityKind kind_ = DensityKind::zero;
    double amplitude_ = 0.0;
    double z_cut_ = 0.0;
    std::function<double(double, double)> fn_;
};

// Inflow boundary density rho_bc(x, t).  Every shipped experiment uses zero;
// the constant/custom shapes exist for user scenarios and tests.
class BoundaryProfile {
public:
    BoundaryProfile() = default;

    static BoundaryProfile zero() { return BoundaryProfile(); }

    static BoundaryProfile constant(double value) {
        BoundaryProfile p;
        p.zero_ = (value == 0.0);
        p.value_ = value;
        return p;
    }

    static BoundaryProfile custom(std::function<double(double, double)> f) {
        BoundaryProfile p;
        p.zero_ = false;
        p.fn_ = std::move(f);
        return p;
    }

    double operator()(double x, double t) const {
        if (fn_) return fn_(x, t);
        return value_;
    }

    // True when the profile is identically zero, enabling exact fast paths
    // (pinned Dirichlet row, no inflow work).
    bool is_zero() const { return zero_; }

private:
    bool zero_ = true;
    double value_ = 0.0;
    std::function<double(double, double)> fn_;
};

}  // namespace dataflow
