#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dataflow/hj.hpp"

using namespace dataflow;

namespace {

HJParams params_all_one(int flux_order = 0) {
    return HJParams::make(ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::constant(1.0)),
                          flux_order);
}

HJSolver make_solver(int n, HJParams p, AlphaProfile alpha, DensityProfile rho0,
                     BoundaryProfile bc = BoundaryProfile::zero()) {
    const SolverGrid grid = SolverGrid::make(n, n);
    return HJSolver(grid, std::move(p), std::move(alpha), std::move(rho0), std::move(bc));
}

}  // namespace

TEST_CASE("dissipation speeds and parameter validation") {
    const HJParams p1 = params_all_one();
    REQUIRE(p1.lambda_x == 1.0);
    REQUIRE(p1.lambda_z == 1.0);
    REQUIRE(p1.cfl == 0.6);
    REQUIRE(p1.flux_order == 0);

    // lambda_x = alpha_max eta / (beta r*), lambda_z = alpha_max / (beta r*).
    const HJParams p2 = HJParams::make(
        ModelParams::make1d(0.4, 0.5, 0.2, AlphaProfile::constant(2.0)));
    REQUIRE(p2.lambda_x == Catch::Approx(2.0).epsilon(1e-14));
    REQUIRE(p2.lambda_z == Catch::Approx(10.0).epsilon(1e-14));

    REQUIRE_THROWS_AS(HJParams::make(ModelParams::make(1.0, 1.0, {1.0, 1.0},
                                                       AlphaProfile::constant(1.0))),
                      ConfigError);
    REQUIRE_THROWS_AS(
        HJParams::make(ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::constant(1.0)), 2),
        ConfigError);
    REQUIRE_THROWS_AS(
        HJParams::make(ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::constant(1.0)), 0, 0.7),
        ConfigError);
    REQUIRE_THROWS_AS(
        HJParams::make(ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::constant(1.0)), 0, 0.0),
        ConfigError);
}

TEST_CASE("numerical Hamiltonian values") {
    const HJParams p = params_all_one();

    // Saturated vertical gradient, no lateral slope: H_hat = -Phi = -alpha.
    REQUIRE(lax_friedrichs_hamiltonian(0.0, 0.0, -2.0, -2.0, 0.0, p, 1.0) == -1.0);

    // With matched one-sided derivatives the dissipation terms vanish and the
    // value reduces to -Phi(rho = -tau, sigma).
    const double h = lax_friedrichs_hamiltonian(0.2, 0.2, -0.5, -0.5, 0.0, p, 1.0);
    const double phi = w_composite(0.5, -0.2, 0.2, p.model, 1.0);
    REQUIRE(h == Catch::Approx(-phi).margin(1e-15));

    // Splitting sigma adds exactly -lambda_x/2 (sigma_plus - sigma_minus).
    const double split = lax_friedrichs_hamiltonian(-0.3, 0.3, -2.0, -2.0, 0.0, p, 1.0);
    REQUIRE(split == Catch::Approx(-1.0 - 0.3 * p.lambda_x).margin(1e-14));

    // Same for tau.
    const double tsplit = lax_friedrichs_hamiltonian(0.0, 0.0, -2.2, -1.8, 0.0, p, 1.0);
    REQUIRE(tsplit == Catch::Approx(-1.0 - 0.2 * p.lambda_z).margin(1e-14));

    // Vacuum is inert.
    REQUIRE(lax_friedrichs_hamiltonian(0.0, 0.0, 0.0, 0.0, 0.0, p, 1.0) == 0.0);
}

TEST_CASE("initial potential is the column integral of rho0") {
    // Constant density: P = c (1 - z) exactly.
    {
        HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::constant(3.0));
        const PotentialField u = s.initial_field();
        for (int m = 0; m <= 16; ++m)
            for (int n = 0; n < 16; ++n)
                REQUIRE(u.at(n, m) == 3.0 * (1.0 - s.grid().z(m)));
        // Ghosts are already consistent: periodic wrap in x.
        REQUIRE(u.at(-1, 5) == u.at(15, 5));
        REQUIRE(u.at(16, 5) == u.at(0, 5));
        REQUIRE(u.t == 0.0);
    }

    // Indicator band: P = amplitude * max(0, z_cut - z).
    {
        HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::indicator(1.5, 0.2));
        const PotentialField u = s.initial_field();
        for (int m = 0; m <= 16; ++m) {
            const double z = s.grid().z(m);
            for (int n = 0; n < 16; ++n)
                REQUIRE(u.at(n, m) == 1.5 * std::max(0.0, 0.2 - z));
        }
    }

    // Zero density: P identically zero.
    {
        HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::zero());
        const PotentialField u = s.initial_field();
        for (int m = 0; m <= 16; ++m)
            for (int n = 0; n < 16; ++n) REQUIRE(u.at(n, m) == 0.0);
    }

    // Negative density is rejected.
    {
        HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::custom([](double, double) { return -0.5; }));
        REQUIRE_THROWS_AS(s.initial_field(), ConfigError);
    }
}

TEST_CASE("ghost fill: periodic in x, cubic extrapolation in z") {
    const SolverGrid g = SolverGrid::make(8, 8);
    HJSolver s(g, params_all_one(), AlphaProfile::constant(1.0), DensityProfile::zero(),
               BoundaryProfile::zero());
    PotentialField u(g);
    auto cubic = [](double x, double z) {
        return 1.0 + 0.5 * x + (0.3 - 0.8 * x) * z + 0.25 * z * z - 0.6 * z * z * z;
    };
    for (int m = 0; m <= 8; ++m)
        for (int n = 0; n < 8; ++n) u.at(n, m) = cubic(g.x(n), g.z(m));
    s.fill_boundary(u);

    // x-wrap is exact copying, across every row including z ghosts.
    for (int m = -3; m <= 11; ++m)
        for (int gg = 1; gg <= 3; ++gg) {
            REQUIRE(u.at(-gg, m) == u.at(8 - gg, m));
            REQUIRE(u.at(7 + gg, m) == u.at(gg - 1, m));
        }

    // Cubic-in-z columns extrapolate exactly through both z ends.
    for (int n = 0; n < 8; ++n)
        for (int gg = 1; gg <= 3; ++gg) {
            REQUIRE(u.at(n, -gg) == Catch::Approx(cubic(g.x(n), g.z(-gg))).margin(1e-10));
            REQUIRE(u.at(n, 8 + gg) == Catch::Approx(cubic(g.x(n), g.z(8 + gg))).margin(1e-10));
        }
}

TEST_CASE("CFL step bound") {
    HJSolver s = make_solver(32, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::zero());
    REQUIRE(s.max_timestep() == Catch::Approx(0.6 / 64.0).epsilon(1e-14));
    PotentialField u = s.initial_field();
    REQUIRE_NOTHROW(s.step(u, s.max_timestep()));
    REQUIRE_THROWS_AS(s.step(u, s.max_timestep() * 1.01), std::invalid_argument);
    REQUIRE_THROWS_AS(s.step(u, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(s.step(u, -1.0), std::invalid_argument);
}

TEST_CASE("vacuum is a bitwise fixed point") {
    HJSolver s = make_solver(16, params_all_one(), AlphaProfile::sine_power(1.0, 0.4),
                             DensityProfile::zero());
    PotentialField u = s.initial_field();
    for (int step = 0; step < 5; ++step) {
        const HJSolver::StepStats st = s.step(u, s.max_timestep());
        REQUIRE(st.min_dp == 0.0);
        REQUIRE(st.max_dp == 0.0);
    }
    for (int m = 0; m <= 16; ++m)
        for (int n = 0; n < 16; ++n) REQUIRE(u.at(n, m) == 0.0);
}

TEST_CASE("saturated constant state advances at exactly rate alpha") {
    // rho = 3 everywhere with a matching inflow density: dP/dt = alpha = 1 at
    // every node, and each SSP step lands within round-off of dt * alpha.
    HJSolver s = make_solver(32, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::constant(3.0), BoundaryProfile::constant(3.0));
    PotentialField u = s.initial_field();
    PotentialField prev = u;
    const double dt = s.max_timestep();
    double worst = 0.0;
    for (int step = 0; step < 20; ++step) {
        prev = u;
        s.step(u, dt);
        for (int m = 0; m <= 32; ++m)
            for (int n = 0; n < 32; ++n)
                worst = std::max(worst, std::abs(u.at(n, m) - prev.at(n, m) - dt));
    }
    REQUIRE(worst <= 1e-12);
}

TEST_CASE("deep linear profile stays exact away from the boundary layer") {
    // rho0 = 3, alpha = r* = 1, zero inflow: the interior keeps
    // P = 3 (1 - z) + t until the rarefaction climbing from z = 0 reaches the
    // probe depth; at t = 0.1 the window z in [0.3, 0.7] is still clean.
    HJSolver s = make_solver(64, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::constant(3.0));
    PotentialField u = s.initial_field();
    HJSolver::RunInfo info;
    s.run(u, 0.1, {}, &info);
    REQUIRE(u.t == 0.1);
    REQUIRE(info.steps > 0);
    REQUIRE(info.dt == s.max_timestep());
    REQUIRE(info.min_dp >= -1e-8);
    REQUIRE(info.max_dp_excess <= 1e-8);
    REQUIRE(info.monotonicity_violations == 0);

    double worst = 0.0;
    for (int m = 0; m <= 64; ++m) {
        const double z = s.grid().z(m);
        if (z < 0.3 - 1e-12 || z > 0.7 + 1e-12) continue;
        for (int n = 0; n < 64; ++n)
            worst = std::max(worst, std::abs(u.at(n, m) - (3.0 * (1.0 - z) + 0.1)));
    }
    REQUIRE(worst <= 1e-6);
}

TEST_CASE("per-step increments stay inside [0, dt alpha_max]") {
    // A stressed configuration: sharp band, strong slowdown, beta < 1.
    const HJParams p = HJParams::make(
        ModelParams::make1d(1.0, 0.8, 1.0, AlphaProfile::sine_power6(1.0, 0.4)));
    HJSolver s = make_solver(48, p, AlphaProfile::sine_power6(1.0, 0.4),
                             DensityProfile::indicator(1.5, 0.2));
    PotentialField u = s.initial_field();
    const double dt = s.max_timestep();
    for (int step = 0; step < 60; ++step) {
        const HJSolver::StepStats st = s.step(u, dt);
        REQUIRE(st.min_dp >= -1e-8);
        REQUIRE(st.max_dp <= dt * p.model.alpha_max + 1e-8);
    }
}

TEST_CASE("solution is symmetric under the x reflection of its data") {
    // alpha even about x = 1/2 and x-independent rho0: the evolution commutes
    // with n -> (N - n) mod N.
    const int N = 64;
    const HJParams p = HJParams::make(
        ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::sine_power6(1.0, 0.4)));
    HJSolver s = make_solver(N, p, AlphaProfile::sine_power6(1.0, 0.4),
                             DensityProfile::indicator(1.5, 0.2));
    PotentialField u = s.initial_field();
    s.run(u, 0.1, {});
    double worst_p = 0.0;
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n < N; ++n)
            worst_p = std::max(worst_p,
                               std::abs(u.at(n, m) - u.at((N - n) % N, m)));
    REQUIRE(worst_p <= 1e-10);

    const FieldSnapshot rho = s.recover_rho(u);
    double worst_r = 0.0;
    for (int m = 0; m < rho.nz; ++m)
        for (int n = 0; n < N; ++n)
            worst_r = std::max(worst_r,
                               std::abs(rho.at(n, m) - rho.at((N - n) % N, m)));
    REQUIRE(worst_r <= 1e-8);
}

TEST_CASE("density recovery") {
    // Linear potential: rho = c exactly everywhere, boundary rows included.
    {
        HJSolver s = make_solver(32, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::constant(2.5));
        const PotentialField u = s.initial_field();
        const FieldSnapshot rho = s.recover_rho(u);
        REQUIRE(rho.nx == 32);
        REQUIRE(rho.nz == 33);
        REQUIRE(rho.centering == Centering::node);
        REQUIRE(rho.name == "rho");
        for (double v : rho.values) REQUIRE(v == Catch::Approx(2.5).margin(1e-10));
    }

    // Indicator band: exact amplitude below the jump, exact zero above it,
    // once the stencil clears the kink.
    {
        HJSolver s = make_solver(64, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::indicator(1.5, 0.2));
        const PotentialField u = s.initial_field();
        const FieldSnapshot rho = s.recover_rho(u);
        for (int m = 0; m <= 64; ++m) {
            const double z = s.grid().z(m);
            if (z <= 0.2 - 4.0 / 64) {
                for (int n = 0; n < 64; ++n)
                    REQUIRE(rho.at(n, m) == Catch::Approx(1.5).margin(1e-9));
            } else if (z >= 0.2 + 4.0 / 64) {
                for (int n = 0; n < 64; ++n)
                    REQUIRE(rho.at(n, m) == Catch::Approx(0.0).margin(1e-9));
            }
        }
        // The column integral of the recovered density still carries the band
        // mass (trapezoid in z).
        double integral = 0.0;
        const double dz = 1.0 / 64;
        for (int m = 0; m <= 64; ++m) {
            const double w = (m == 0 || m == 64) ? 0.5 : 1.0;
            integral += w * dz * rho.at(0, m);
        }
        REQUIRE(integral == Catch::Approx(0.3).margin(0.02));
    }
}

TEST_CASE("self-convergence of the smooth advection regime") {
    // Sub-threshold smooth band (rho <= 0.5 < r*): the flux is linear there
    // and the scheme should refine at third order or better (SSP-RK3 limited).
    auto solve = [](int n) {
        HJSolver s = make_solver(n, params_all_one(), AlphaProfile::constant(1.0),
                                 DensityProfile::sine6_band(0.5, 0.5));
        PotentialField u = s.initial_field();
        s.run(u, 0.2, {});
        return std::make_pair(s.grid(), std::move(u));
    };
    const auto [g32, u32] = solve(32);
    const auto [g64, u64] = solve(64);
    const auto [g128, u128] = solve(128);
    (void)g64;
    (void)g128;

    auto diff_to_fine = [&](const PotentialField& coarse, int factor, int n) {
        double worst = 0.0;
        for (int m = 0; m <= n; ++m)
            for (int nn = 0; nn < n; ++nn)
                worst = std::max(worst, std::abs(coarse.at(nn, m)
                                                 - u128.at(nn * factor, m * factor)));
        return worst;
    };
    const double e32 = diff_to_fine(u32, 4, 32);
    const double e64 = diff_to_fine(u64, 2, 64);
    REQUIRE(e64 < e32);
    REQUIRE(std::log2(e32 / e64) >= 2.5);
    (void)g32;
}

TEST_CASE("run schedules snapshots and validates input") {
    HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::constant(1.0), BoundaryProfile::constant(1.0));
    PotentialField u = s.initial_field();
    const std::vector<double> snaps = {0.0, 0.05, 0.1};
    HJSolver::RunInfo info;
    const std::vector<PotentialField> out = s.run(u, 0.1, snaps, &info);
    REQUIRE(out.size() == 3);
    REQUIRE(out[0].t == 0.0);
    REQUIRE(out[1].t == 0.05);
    REQUIRE(out[2].t == 0.1);
    REQUIRE(u.t == 0.1);
    REQUIRE(info.steps > 0);

    // Zero-length run returns only the t = 0 snapshot and touches nothing.
    PotentialField v = s.initial_field();
    const std::vector<double> zero_snap = {0.0};
    const std::vector<PotentialField> only = s.run(v, 0.0, zero_snap);
    REQUIRE(only.size() == 1);
    REQUIRE(v.t == 0.0);

    PotentialField w = s.initial_field();
    const std::vector<double> unsorted = {0.2, 0.1};
    REQUIRE_THROWS_AS(s.run(w, 0.5, unsorted), std::invalid_argument);
    const std::vector<double> outside = {0.9};
    REQUIRE_THROWS_AS(s.run(w, 0.5, outside), std::invalid_argument);
    REQUIRE_THROWS_AS(s.run(w, -0.5, {}), std::invalid_argument);
}

TEST_CASE("NaN in the field aborts the step") {
    HJSolver s = make_solver(16, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::constant(1.0));
    PotentialField u = s.initial_field();
    u.at(5, 5) = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(s.step(u, s.max_timestep()), SimulationError);
}

TEST_CASE("second-order flux option runs and defaults epsilon to dx") {
    const HJParams p = HJParams::make(
        ModelParams::make1d(1.0, 1.0, 1.0, AlphaProfile::constant(1.0)), 1);
    REQUIRE(p.flux_order == 1);
    HJSolver s = make_solver(24, p, AlphaProfile::constant(1.0),
                             DensityProfile::indicator(1.0, 0.3));
    REQUIRE(s.params().epsilon == s.grid().dx());
    PotentialField u = s.initial_field();
    HJSolver::RunInfo info;
    s.run(u, 0.05, {}, &info);
    REQUIRE(info.min_dp >= -1e-8);
    REQUIRE(info.max_dp_excess <= 1e-8);
}

TEST_CASE("abort policy stops on a genuine monotonicity break") {
    // A state with a NaN already trips the NaN guard, so instead check that
    // the warn policy counts nothing on a healthy run under abort mode.
    HJSolver s = make_solver(24, params_all_one(), AlphaProfile::constant(1.0),
                             DensityProfile::indicator(1.5, 0.2));
    PotentialField u = s.initial_field();
    HJSolver::RunInfo info;
    REQUIRE_NOTHROW(s.run(u, 0.05, {}, &info, HJSolver::Monotonicity::abort_run));
    REQUIRE(info.monotonicity_violations == 0);
}
