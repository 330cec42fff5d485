#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dataflow/errors.hpp"
#include "dataflow/field.hpp"
#include "dataflow/grid.hpp"
#include "dataflow/params.hpp"
#include "dataflow/profiles.hpp"
#include "dataflow/throttle.hpp"
#include "dataflow/weno.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Parameters of the Hamilton-Jacobi solve.  The dissipation speeds are the
// global Lax-Friedrichs bounds lambda_x = alpha_max eta/(beta r*) and
// lambda_z = alpha_max/(beta r*) (never local alpha), computed here so they
// cannot disagree with the model parameters.
// ---------------------------------------------------------------------------
struct HJParams {
    ModelParams model;
    int flux_order = 0;      // 0 -> Phi0, 1 -> Phi1
    double epsilon = 0.0;    // Phi1 correction scale; <= 0 lets the solver use dx
    double cfl = 0.6;
    double lambda_x = 0.0;
    double lambda_z = 0.0;

    static HJParams make(ModelParams model, int flux_order = 0, double cfl = 0.6,
                         double epsilon = 0.0) {
        model.validate();
        if (model.eta.size() != 1)
            throw ConfigError("hj: continuum solver is 1D (eta must have one axis)");
        if (flux_order != 0 && flux_order != 1)
            throw ConfigError("hj: flux_order must be 0 or 1");
        if (!(cfl > 0.0) || cfl > 0.6)
            throw ConfigError("hj: cfl must lie in (0, 0.6]");
        HJParams p;
        p.model = std::move(model);
        p.flux_order = flux_order;
        p.cfl = cfl;
        p.epsilon = epsilon;
        p.lambda_x = p.model.alpha_max * p.model.eta1() / (p.model.beta * p.model.r_star);
        p.lambda_z = p.model.alpha_max / (p.model.beta * p.model.r_star);
        return p;
    }
};

// Numerical Hamiltonian H_hat at one node from the biased derivatives:
// H_hat = H(sigma_bar, tau_bar, ups) - lambda_x/2 (s+ - s-) - lambda_z/2 (t+ - t-)
// with H(sigma, tau, ups) = -Phi(-tau, sigma, ups).  The field evolves by
// dP/dt = -H_hat.  Phi is evaluated through the total composite extension
// (zero flux for rho <= 0), so reconstruction undershoots cannot throw.
inline double lax_friedrichs_hamiltonian(double sigma_minus, double sigma_plus,
                                         double tau_minus, double tau_plus, double upsilon,
                                         const HJParams& p, double alpha_at_x) {
    const double sbar = 0.5 * (sigma_minus + sigma_plus);
    const double tbar = 0.5 * (tau_minus + tau_plus);
    const double r = -tbar;
    const double corr = p.flux_order == 1 ? 0.5 * p.epsilon * upsilon : 0.0;
    const double phi = detail::w_total(r, -sbar + corr, sbar + corr,
                                       p.model.r_star, p.model.beta, p.model.eta1(),
                                       alpha_at_x);
    return -phi - 0.5 * p.lambda_x * (sigma_plus - sigma_minus)
                - 0.5 * p.lambda_z * (tau_plus - tau_minus);
}

// ---------------------------------------------------------------------------
// WENO5 + global Lax-Friedrichs + SSP-RK3 solver for the potential system
//   dP/dt = Phi(-dP/dz, dP/dx, d2P/dx2),  P(x,z,0) = int_z^1 rho0,
//   P(x,0,t) = int_0^1 rho0 + int_0^t phi_bc   (Dirichlet inflow row),
// x periodic, outflow at z = 1 via cubic ghost extrapolation.  The Dirichlet
// row is evolved alongside the field with rhs = phi_bc, which advances the
// boundary integral with the exact SSP stage weights; with rho_bc identically
// zero the row's rhs is exactly 0, so it stays pinned bit-for-bit.
//
// The semi-discrete rate at each node is projected into the physical range
// [0, alpha(x)] of the flux (see eval_rhs); combined with the convexity of the
// SSP stages this guarantees 0 <= P_new - P_old <= dt * alpha_max per step at
// every node, which run() cross-checks through StepStats.
// ---------------------------------------------------------------------------
class HJSolver {
public:
    enum class Monotonicity { warn, abort_run };

    struct StepStats {
        double min_dp = 0.0;  // min over nodes of P_new - P_old
        double max_dp = 0.0;  // max over nodes
    };

    struct RunInfo {
        long steps = 0;
        double dt = 0.0;              // nominal CFL step
        double min_dp = 0.0;          // most negative per-step increment seen
        double max_dp_excess = 0.0;   // max over steps of (max_dp - h alpha_max)
        long monotonicity_violations = 0;
        double wall_seconds = 0.0;
    };

    HJSolver(const SolverGrid& grid, HJParams params, AlphaProfile alpha,
             DensityProfile rho0, BoundaryProfile rho_bc)
        : grid_(grid), params_(std::move(params)), alpha_(std::move(alpha)),
          rho0_(std::move(rho0)), rho_bc_(std::move(rho_bc)),
          u1_(grid), u2_(grid) {
        if (params_.epsilon <= 0.0) params_.epsilon = grid_.dx();
        const int N = grid_.nx;
        const int rows = grid_.nz + 1;
        alpha_x_.resize(static_cast<std::size_t>(N));
        for (int n = 0; n < N; ++n) alpha_x_[static_cast<std::size_t>(n)] = alpha_(grid_.x(n));
        sm_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        sp_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        tm_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        tp_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        if (params_.flux_order == 1) ups_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        L_.assign(static_cast<std::size_t>(N) * rows, 0.0);
        col_.assign(static_cast<std::size_t>(rows) + 6, 0.0);
        colm_.assign(static_cast<std::size_t>(rows), 0.0);
        colp_.assign(static_cast<std::size_t>(rows), 0.0);
    }

    const SolverGrid& grid() const { return grid_; }
    const HJParams& params() const { return params_; }

    // P(x, z, 0) = int_z^1 rho0; also validates rho0 >= 0 on the nodes.
    PotentialField initial_field() const {
        PotentialField u(grid_);
        for (int m = 0; m <= grid_.nz; ++m) {
            const double zm = grid_.z(m);
            for (int n = 0; n < grid_.nx; ++n) {
                const double rho = rho0_(grid_.x(n), zm);
                if (!(rho >= 0.0))
                    throw ConfigError("rho0 sample negative (or NaN) at x="
                                      + std::to_string(grid_.x(n)) + ", z=" + std::to_string(zm));
                u.at(n, m) = rho0_.integral_to_top(grid_.x(n), zm);
            }
        }
        u.t = 0.0;
        fill_boundary(u);
        return u;
    }

    // Ghost fill: cubic extrapolation past both z ends (the same chained
    // 4-point rule on each side; the inflow-side ghosts only feed biased
    // stencils), then periodic wrap in x across every row incl. the z ghosts.
    void fill_boundary(PotentialField& u) const {
        const int N = grid_.nx;
        const int M = grid_.nz;
        for (int n = 0; n < N; ++n) {
            for (int g = 1; g <= SolverGrid::ghost; ++g) {
                u.at(n, -g) = 4.0 * u.at(n, -g + 1) - 6.0 * u.at(n, -g + 2)
                            + 4.0 * u.at(n, -g + 3) - u.at(n, -g + 4);
                u.at(n, M + g) = 4.0 * u.at(n, M + g - 1) - 6.0 * u.at(n, M + g - 2)
                               + 4.0 * u.at(n, M + g - 3) - u.at(n, M + g - 4);
            }
        }
        for (int m = -SolverGrid::ghost; m <= M + SolverGrid::ghost; ++m) {
            for (int g = 1; g <= SolverGrid::ghost; ++g) {
                u.at(-g, m) = u.at(N - g, m);
                u.at(N - 1 + g, m) = u.at(g - 1, m);
            }
        }
    }

    // CFL bound dt (lambda_x/dx + lambda_z/dz) <= cfl.
    double max_timestep() const {
        return params_.cfl / (params_.lambda_x * grid_.nx + params_.lambda_z * grid_.nz);
    }

    // One Shu-Osher SSP-RK3 step; returns the increment range for the
    // monotonicity diagnostics.
    StepStats step(PotentialField& u, double dt) {
        if (!(dt > 0.0)) throw std::invalid_argument("hj step: dt must be positive");
        if (dt > max_timestep() * (1.0 + 1e-12))
            throw std::invalid_argument("hj step: dt violates the CFL bound");
        const int N = grid_.nx;
        const int M = grid_.nz;
        const double t0 = u.t;

        eval_rhs(u, t0);
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n < N; ++n)
                u1_.at(n, m) = u.at(n, m) + dt * L_[lindex(n, m)];
        u1_.t = t0 + dt;

        eval_rhs(u1_, t0 + dt);
        for (int m = 0; m <= M; ++m)
            for (int n = 0; n < N; ++n)
                u2_.at(n, m) = 0.75 * u.at(n, m)
                             + 0.25 * (u1_.at(n, m) + dt * L_[lindex(n, m)]);
        u2_.t = t0 + 0.5 * dt;

        eval_rhs(u2_, t0 + 0.5 * dt);
        StepStats stats;
        stats.min_dp = std::numeric_limits<double>::infinity();
        stats.max_dp = -std::numeric_limits<double>::infinity();
        const double c0 = 1.0 / 3.0, c2 = 2.0 / 3.0;
        for (int m = 0; m <= M; ++m) {
            for (int n = 0; n < N; ++n) {
                const double old = u.at(n, m);
                const double v = c0 * old + c2 * (u2_.at(n, m) + dt * L_[lindex(n, m)]);
                if (std::isnan(v))
                    throw SimulationError("NaN in potential at x index " + std::to_string(n)
                                          + ", z index " + std::to_string(m)
                                          + ", t=" + std::to_string(t0));
                u.at(n, m) = v;
                const double d = v - old;
                stats.min_dp = std::min(stats.min_dp, d);
                stats.max_dp = std::max(stats.max_dp, d);
            }
        }
        u.t = t0 + dt;
        return stats;
    }

    // Advance to t_final with the fixed CFL step, shortening individual steps
    // to land exactly on snapshot times and the final time.
    std::vector<PotentialField> run(PotentialField& u, double t_final,
                                    std::span<const double> snapshot_times,
                                    RunInfo* info = nullptr,
                                    Monotonicity policy = Monotonicity::warn) {
        if (!(t_final >= u.t))
            throw std::invalid_argument("run: t_final must be >= current time");
        for (std::size_t j = 0; j < snapshot_times.size(); ++j) {
            if (j > 0 && snapshot_times[j] < snapshot_times[j - 1])
                throw std::invalid_argument("run: snapshot times must be sorted");
            if (snapshot_times[j] < 0.0 || snapshot_times[j] > t_final)
                throw std::invalid_argument("run: snapshot times must lie in [0, t_final]");
        }
        const auto wall0 = std::chrono::steady_clock::now();
        const double dt0 = max_timestep();
        const double tiny = 1e-9 * dt0;
        RunInfo local;
        local.dt = dt0;
        local.min_dp = std::numeric_limits<double>::infinity();
        local.max_dp_excess = -std::numeric_limits<double>::infinity();
        std::vector<PotentialField> out;

        std::size_t next_snap = 0;
        while (next_snap < snapshot_times.size() && snapshot_times[next_snap] <= u.t + tiny) {
            out.push_back(u);
            ++next_snap;
        }

        while (u.t < t_final - tiny) {
            double target = t_final;
            if (next_snap < snapshot_times.size())
                target = std::min(target, snapshot_times[next_snap]);
            double h = dt0;
            bool landing = false;
            if (target - u.t <= dt0 * (1.0 + 1e-9)) {
                h = target - u.t;
                landing = true;
            }
            const StepStats st = step(u, h);
            ++local.steps;
            local.min_dp = std::min(local.min_dp, st.min_dp);
            local.max_dp_excess = std::max(local.max_dp_excess,
                                           st.max_dp - h * params_.model.alpha_max);
            if (st.min_dp < -kMonotonicityTol) {
                ++local.monotonicity_violations;
                if (policy == Monotonicity::abort_run)
                    throw SimulationError("monotonicity violated: min dP = "
                                          + std::to_string(st.min_dp)
                                          + " at t = " + std::to_string(u.t));
            }
            if (landing) {
                u.t = target;
                while (next_snap < snapshot_times.size()
                       && std::abs(snapshot_times[next_snap] - u.t) <= tiny) {
                    out.push_back(u);
                    ++next_snap;
                }
            }
        }
        u.t = t_final;

        if (local.steps == 0) {
            local.min_dp = 0.0;
            local.max_dp_excess = 0.0;
        }
        local.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
        if (info) *info = local;
        return out;
    }

    // rho = -dP/dz recovered as the average of the two biased WENO
    // derivatives; no clamping (undershoots are diagnostics, not errors).
    FieldSnapshot recover_rho(const PotentialField& u) {
        PotentialField v = u;
        fill_boundary(v);
        const int N = grid_.nx;
        const int M = grid_.nz;
        FieldSnapshot f;
        f.name = "rho";
        f.t = u.t;
        f.nx = N;
        f.nz = M + 1;
        f.centering = Centering::node;
        f.values.resize(static_cast<std::size_t>(N) * (M + 1));
        for (int n = 0; n < N; ++n) {
            gather_column(v, n);
            weno5_line(std::span<const double>(col_.data(), col_.size()), grid_.dz(),
                       std::span<double>(colm_.data(), colm_.size()),
                       std::span<double>(colp_.data(), colp_.size()));
            for (int m = 0; m <= M; ++m)
                f.values[static_cast<std::size_t>(m) * N + n] =
                    -0.5 * (colm_[static_cast<std::size_t>(m)] + colp_[static_cast<std::size_t>(m)]);
        }
        return f;
    }

    static constexpr double kMonotonicityTol = 1e-8;

private:
    std::size_t lindex(int n, int m) const {
        return static_cast<std::size_t>(m) * grid_.nx + n;
    }

    void gather_column(const PotentialField& u, int n) {
        const int M = grid_.nz;
        for (int j = 0; j < M + 7; ++j)
            col_[static_cast<std::size_t>(j)] = u.at(n, j - 3);
    }

    // Semi-discrete rhs L = -H_hat on rows m >= 1; the Dirichlet row m = 0
    // evolves by the inflow flux phi_bc = Phi0(rho_bc, dP/dx) instead (zero
    // when rho_bc is zero).
    void eval_rhs(PotentialField& u, double t_stage) {
        fill_boundary(u);
        const int N = grid_.nx;
        const int M = grid_.nz;
        const double dx = grid_.dx();
        const double dz = grid_.dz();
        const bool second = params_.flux_order == 1;

        for (int m = 0; m <= M; ++m) {
            const double* row = u.row(m);  // starts at n = -ghost
            weno5_line(std::span<const double>(row, static_cast<std::size_t>(N) + 6), dx,
                       std::span<double>(sm_.data() + lindex(0, m), static_cast<std::size_t>(N)),
                       std::span<double>(sp_.data() + lindex(0, m), static_cast<std::size_t>(N)));
            if (second) {
                for (int n = 0; n < N; ++n)
                    ups_[lindex(n, m)] =
                        second_difference(u.at(n - 1, m), u.at(n, m), u.at(n + 1, m), dx);
            }
        }
        for (int n = 0; n < N; ++n) {
            gather_column(u, n);
            weno5_line(std::span<const double>(col_.data(), col_.size()), dz,
                       std::span<double>(colm_.data(), colm_.size()),
                       std::span<double>(colp_.data(), colp_.size()));
            for (int m = 0; m <= M; ++m) {
                tm_[lindex(n, m)] = colm_[static_cast<std::size_t>(m)];
                tp_[lindex(n, m)] = colp_[static_cast<std::size_t>(m)];
            }
        }

        const double rs = params_.model.r_star;
        const double beta = params_.model.beta;
        const double eta = params_.model.eta1();
        const double lx = params_.lambda_x;
        const double lz = params_.lambda_z;
        for (int m = 1; m <= M; ++m) {
            for (int n = 0; n < N; ++n) {
                const std::size_t j = lindex(n, m);
                const double sbar = 0.5 * (sm_[j] + sp_[j]);
                const double tbar = 0.5 * (tm_[j] + tp_[j]);
                const double corr = second ? 0.5 * params_.epsilon * ups_[j] : 0.0;
                const double ax = alpha_x_[static_cast<std::size_t>(n)];
                const double phi = detail::w_total(-tbar, -sbar + corr, sbar + corr,
                                                   rs, beta, eta, ax);
                const double raw =
                    phi + 0.5 * lx * (sp_[j] - sm_[j]) + 0.5 * lz * (tp_[j] - tm_[j]);
                // The continuous rate dP/dt lies in [0, alpha(x)]; project the
                // discrete rate into that range.  Artificial-dissipation spikes at
                // under-resolved kinks would otherwise leak outside it, and the SSP
                // stages preserve the projected bounds, giving
                // 0 <= dP <= dt*alpha_max per accepted step at every node.
                // (min/max argument order keeps NaN in `raw` propagating to L.)
                L_[j] = std::min(std::max(raw, 0.0), ax);
            }
        }
        if (rho_bc_.is_zero()) {
            std::fill_n(L_.begin(), static_cast<std::size_t>(N), 0.0);
        } else {
            for (int n = 0; n < N; ++n) {
                const std::size_t j = lindex(n, 0);
                const double sbar = 0.5 * (sm_[j] + sp_[j]);
                const double r = rho_bc_(grid_.x(n), t_stage);
                L_[j] = detail::w_total(r, -sbar, sbar, rs, beta, eta,
                                        alpha_x_[static_cast<std::size_t>(n)]);
            }
        }
    }

    SolverGrid grid_;
    HJParams params_;
    AlphaProfile alpha_;
    DensityProfile rho0_;
    BoundaryProfile rho_bc_;
    PotentialField u1_, u2_;
    std::vector<double> alpha_x_;
    std::vector<double> sm_, sp_, tm_, tp_, ups_, L_;
    std::vector<double> col_, colm_, colp_;
};

}  // namespace dataflow
