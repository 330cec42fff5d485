#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "dataflow/params.hpp"
#include "dataflow/throttle.hpp"

using namespace dataflow;

namespace {

ModelParams params1d(double r_star, double beta, double eta, double alpha_max = 1.0) {
    return ModelParams::make1d(r_star, beta, eta, AlphaProfile::constant(alpha_max));
}

// Independent evaluation of the composite throttle, written straight from the
// closed forms: w2 = min{r, max(eta D+ + r, 0)/beta, max(eta D- + r, 0)/beta},
// w1(s) = clamp(s / r_star, 0, 1), w = alpha * w1(w2).
double composite_oracle(double r, double d_minus, double d_plus,
                        double r_star, double beta, double eta, double alpha) {
    const double hp = std::max(eta * d_plus + r, 0.0) / beta;
    const double hm = std::max(eta * d_minus + r, 0.0) / beta;
    const double s = std::min(r, std::min(hp, hm));
    return alpha * std::clamp(s / r_star, 0.0, 1.0);
}

}  // namespace

TEST_CASE("v1 self-throttle clamps into [0,1]") {
    REQUIRE(v1_self_throttle(0.5 * 2.0, 2.0) == 0.5);
    REQUIRE(v1_self_throttle(-1.0, 1.0) == 0.0);
    REQUIRE(v1_self_throttle(2.0, 1.0) == 1.0);
    REQUIRE(v1_self_throttle(0.0, 1.0) == 0.0);
    REQUIRE(v1_self_throttle(1.0, 1.0) == 1.0);
    REQUIRE_THROWS_AS(v1_self_throttle(1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(v1_self_throttle(1.0, -2.0), std::invalid_argument);
}

TEST_CASE("v2 neighbor throttle") {
    REQUIRE(v2_neighbor_throttle(1.0, 0.5, 2.0, 1.0) == 0.5);
    REQUIRE(v2_neighbor_throttle(1.0, -0.3, 2.0, 1.0) == 0.0);
    REQUIRE(v2_neighbor_throttle(1.0, 0.6, 0.9, 0.5) == 1.0);  // both >= beta q
    REQUIRE(v2_neighbor_throttle(1.0, 0.0, 2.0, 1.0) == 0.0);  // zero headroom stops flow
    REQUIRE_THROWS_AS(v2_neighbor_throttle(1.0, 1.0, 1.0, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(v2_neighbor_throttle(1.0, 1.0, 1.0, 1.5), std::invalid_argument);
    REQUIRE_THROWS_AS(v2_neighbor_throttle(1.0, 1.0, 1.0, -0.2), std::invalid_argument);
}

TEST_CASE("rescaled throttles w1 and w2") {
    REQUIRE(w1(0.5, 1.0) == 0.5);
    REQUIRE(w1(-3.0, 1.0) == 0.0);
    REQUIRE(w1(7.0, 2.0) == 1.0);
    REQUIRE_THROWS_AS(w1(1.0, 0.0), std::invalid_argument);

    REQUIRE(w2(2.0, 5.0, 5.0, 1.0, 1.0) == 2.0);
    REQUIRE(w2(1.0, -2.0, 5.0, 1.0, 1.0) == 0.0);  // eta D- + r = -1 clamps to 0
    REQUIRE_THROWS_AS(w2(1.0, 1.0, 1.0, 0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(w2(1.0, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("composite throttle matches hand-derived values") {
    const ModelParams p = params1d(1.0, 1.0, 1.0);

    // Saturated: w2 = min{2, 7, 7} = 2 >= r*, w1 caps at 1.
    REQUIRE(w_composite(2.0, 5.0, 5.0, p, 1.0) == 1.0);
    // No data, no flux.
    REQUIRE(w_composite(0.0, 3.0, -4.0, p, 5.0) == 0.0);
    // Sub-threshold with a binding forward increment:
    // w2 = min{0.5, (0.1+0.5)/1, (5+0.5)/1} = 0.5, w1 = 0.5, alpha = 2 -> 1.0.
    const double w = w_composite(0.5, 5.0, 0.1, p, 2.0);
    REQUIRE(w == 1.0);
    REQUIRE(w == composite_oracle(0.5, 5.0, 0.1, 1.0, 1.0, 1.0, 2.0));
}

TEST_CASE("composite throttle rejects invalid inputs") {
    const ModelParams p = params1d(1.0, 1.0, 1.0);
    REQUIRE_THROWS_AS(w_composite(-0.1, 1.0, 1.0, p, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(w_composite(1.0, 1.0, 1.0, p, -1.0), std::invalid_argument);
}

TEST_CASE("n-dimensional composite minimizes the neighbor throttle over axes") {
    // Two axes with different eta; the second axis binds.
    const ModelParams p =
        ModelParams::make(1.0, 0.5, {1.0, 2.0}, AlphaProfile::constant(1.0));
    ThrottleState st;
    st.r = 0.8;
    st.d_plus = {5.0, -0.2};   // axis 2 forward increment kills the transfer
    st.d_minus = {5.0, 5.0};
    const double expect_axis2 =
        std::min(0.8, std::max(2.0 * -0.2 + 0.8, 0.0) / 0.5);  // = min{0.8, 0.8} = 0.8
    REQUIRE(w_composite(st, p, 1.0) == std::clamp(expect_axis2, 0.0, 1.0));

    st.d_plus = {5.0, -0.6};   // now eta D+ + r = -0.4 -> 0 headroom
    REQUIRE(w_composite(st, p, 1.0) == 0.0);

    // Axis count mismatch is an error.
    st.d_plus = {5.0};
    REQUIRE_THROWS_AS(w_composite(st, p, 1.0), std::invalid_argument);

    // With identical per-axis data the n-D form reduces to 1D.
    const ModelParams q1 = params1d(1.0, 0.7, 1.3);
    const ModelParams qn =
        ModelParams::make(1.0, 0.7, {1.3, 1.3}, AlphaProfile::constant(1.0));
    ThrottleState same;
    same.r = 0.6;
    same.d_plus = {0.21, 0.21};
    same.d_minus = {4.0, 4.0};
    REQUIRE(w_composite(same, qn, 0.9) == w_composite(0.6, 4.0, 0.21, q1, 0.9));
}

TEST_CASE("phi0 piecewise branch values and region labels") {
    const ModelParams p = params1d(1.0, 1.0, 1.0);

    auto f = phi0_piecewise(2.0, 0.0, p, 1.0);
    REQUIRE(f.value == 1.0);
    REQUIRE(f.region == FluxRegion::omega1);

    f = phi0_piecewise(0.5, 0.0, p, 1.0);
    REQUIRE(f.value == 0.5);
    REQUIRE(f.region == FluxRegion::omega2);

    // Boundary tie r = r*, D = 0 reports the lowest-numbered region.
    f = phi0_piecewise(1.0, 0.0, p, 1.0);
    REQUIRE(f.value == 1.0);
    REQUIRE(f.region == FluxRegion::omega1);

    // Transfer-limited wedges.
    f = phi0_piecewise(0.5, -0.4, p, 1.0);
    REQUIRE(f.region == FluxRegion::omega3);
    REQUIRE(f.value == Catch::Approx(0.5 - 0.4).margin(1e-15));  // alpha (r + eta D)/(beta r*)

    f = phi0_piecewise(0.5, 0.4, p, 1.0);
    REQUIRE(f.region == FluxRegion::omega4);
    REQUIRE(f.value == Catch::Approx(0.5 - 0.4).margin(1e-15));  // alpha (r - eta D)/(beta r*)

    // Outside the wedge |eta D| > r the extension clamps to zero flux.
    f = phi0_piecewise(0.5, 2.0, p, 1.0);
    REQUIRE(f.value == 0.0);
    REQUIRE(f.region == FluxRegion::omega4);
    f = phi0_piecewise(0.5, -2.0, p, 1.0);
    REQUIRE(f.value == 0.0);
    REQUIRE(f.region == FluxRegion::omega3);

    REQUIRE_THROWS_AS(phi0_piecewise(-0.5, 0.0, p, 1.0), std::domain_error);
}

TEST_CASE("phi0 piecewise equals the composite on a dense parameter sweep") {
    // (D, r) grid including the region boundaries D = 0, r = r*, |eta D| = r.
    const int nd = 301, nr = 301;
    double worst = 0.0;
    for (double beta : {0.1, 0.5, 1.0})
        for (double eta : {0.2, 1.0, 5.0})
            for (double alpha : {0.5, 1.0}) {
                const ModelParams p = params1d(1.0, beta, eta, alpha);
                for (int a = 0; a < nd; ++a) {
                    const double D = -3.0 + 6.0 * a / (nd - 1);
                    for (int b = 0; b < nr; ++b) {
                        const double r = 3.0 * b / (nr - 1);
                        const double piecewise = phi0_piecewise(r, D, p, alpha).value;
                        const double composite = w_composite(r, -D, D, p, alpha);
                        worst = std::max(worst, std::abs(piecewise - composite));
                    }
                }
            }
    REQUIRE(worst <= 1e-12);
}

TEST_CASE("composite throttle stays in [0, alpha] over a large random sample") {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> ur(0.0, 4.0);
    std::uniform_real_distribution<double> ud(-6.0, 6.0);
    std::uniform_real_distribution<double> up(0.05, 1.0);
    long violations = 0;
    for (int trial = 0; trial < 1000000; ++trial) {
        const double beta = up(rng);
        const double eta = 0.2 + 4.8 * up(rng);
        const double alpha = 2.0 * up(rng);
        const ModelParams p = params1d(1.0, beta, eta, std::max(alpha, 1e-3));
        const double w = w_composite(ur(rng), ud(rng), ud(rng), p, alpha);
        if (!(w >= 0.0 && w <= alpha)) ++violations;
    }
    REQUIRE(violations == 0);
}

TEST_CASE("composite throttle is nondecreasing in each neighbor increment") {
    std::mt19937_64 rng(7150123);
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    std::uniform_real_distribution<double> ud(-4.0, 4.0);
    std::uniform_real_distribution<double> step(0.0, 2.0);
    const ModelParams p = params1d(1.0, 0.5, 1.5);
    for (int trial = 0; trial < 20000; ++trial) {
        const double r = ur(rng), dm = ud(rng), dp = ud(rng), h = step(rng);
        const double base = w_composite(r, dm, dp, p, 1.0);
        REQUIRE(w_composite(r, dm + h, dp, p, 1.0) >= base);
        REQUIRE(w_composite(r, dm, dp + h, p, 1.0) >= base);
    }
}

TEST_CASE("composite throttle is Lipschitz per coordinate") {
    std::mt19937_64 rng(991231);
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    std::uniform_real_distribution<double> ud(-4.0, 4.0);
    std::uniform_real_distribution<double> dstep(-1.0, 1.0);
    std::uniform_int_distribution<int> which(0, 2);
    const double r_star = 0.8, beta = 0.4, eta = 2.5, alpha = 1.7;
    const ModelParams p = params1d(r_star, beta, eta, alpha);
    const double L = alpha * std::max({1.0 / r_star, eta / (beta * r_star),
                                       1.0 / (beta * r_star)});
    for (int trial = 0; trial < 20000; ++trial) {
        double r = ur(rng), dm = ud(rng), dp = ud(rng);
        const double base = w_composite(r, dm, dp, p, alpha);
        const double h = dstep(rng);
        switch (which(rng)) {
            case 0: r = std::max(0.0, r + h); break;
            case 1: dm += h; break;
            default: dp += h; break;
        }
        const double moved = w_composite(r, dm, dp, p, alpha);
        REQUIRE(std::abs(moved - base) <= L * std::abs(h) + 1e-12);
    }
}

TEST_CASE("phi1 reduces to phi0 and matches scripted values") {
    const ModelParams p = params1d(1.0, 1.0, 1.0);

    // Vanishing correction routes through the phi0 evaluation bit-for-bit.
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> ur(0.0, 3.0);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const double r = ur(rng), D = ud(rng);
        REQUIRE(phi1(r, D, ud(rng), 0.0, p, 1.0) == phi0_piecewise(r, D, p, 1.0).value);
    }

    // r=2, D=0, D2=4, eps=1: both shifted increments become 2 + 2 = 4 >= r*.
    REQUIRE(phi1(2.0, 0.0, 4.0, 1.0, p, 1.0) == 1.0);
    // r=1, D=10: -eta D + r = -9 < 0 clamps the available data to zero.
    REQUIRE(phi1(1.0, 10.0, 0.0, 0.1, p, 1.0) == 0.0);

    // Nonzero correction agrees with the composite at shifted increments.
    for (int trial = 0; trial < 10000; ++trial) {
        const double r = ur(rng), D = ud(rng), D2 = ud(rng), eps = 0.3;
        const double corr = 0.5 * eps * D2;
        const double direct = composite_oracle(r, -D + corr, D + corr, 1.0, 1.0, 1.0, 1.0);
        REQUIRE(std::abs(phi1(r, D, D2, eps, p, 1.0) - direct) <= 1e-12);
    }

    REQUIRE_THROWS_AS(phi1(-1.0, 0.0, 0.0, 0.0, p, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(phi1(1.0, 0.0, 0.0, -0.5, p, 1.0), std::invalid_argument);
}
