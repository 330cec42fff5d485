#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "dataflow/compare.hpp"
#include "dataflow/discrete.hpp"
#include "dataflow/errors.hpp"
#include "dataflow/field.hpp"
#include "dataflow/grid.hpp"
#include "dataflow/hj.hpp"
#include "dataflow/scenario.hpp"

namespace dataflow {

struct RefinementRung {
    int i_max = 0;
    int k_max = 0;
    ErrorReport report;
    double rel_l1 = 0.0;
    long clamped_nodes = 0;
};

struct RefinementResult {
    std::vector<RefinementRung> rungs;
    // Strict L1 improvement from the first (coarsest) to the last (finest)
    // rung; trivially true for a single rung.
    bool l1_improves = true;
    // Whether L1 decreases at every consecutive rung (reported, never fatal).
    bool monotone = true;
};

// Run the discrete model at each ladder rung against one fixed continuum
// reference (the scenario's nx-by-nz grid at t_final) and report the
// discrepancy norms per rung.  The ladder must keep k_max/i_max equal to the
// scenario's eta.
inline RefinementResult refinement_study(const ScenarioConfig& cfg,
                                         const std::vector<std::pair<int, int>>& ladder) {
    if (ladder.empty()) throw ConfigError("refinement_study: ladder must not be empty");
    std::vector<std::string> issues;
    for (const auto& [im, km] : ladder) {
        if (im < 3 || km < 1) {
            issues.push_back("refinement_study: rung " + std::to_string(im) + "x"
                             + std::to_string(km) + " is degenerate");
            continue;
        }
        const double expect = cfg.eta * im;
        if (std::abs(expect - km) > 1e-9 * std::max(1.0, std::abs(expect)))
            issues.push_back("refinement_study: rung " + std::to_string(im) + "x"
                             + std::to_string(km) + " violates eta = "
                             + detail::format_double(cfg.eta));
    }
    if (!issues.empty()) throw ConfigError(issues);

    const AlphaProfile alpha = cfg.make_alpha();
    const DensityProfile rho0 = cfg.make_rho0();
    const BoundaryProfile bc = cfg.make_bc();
    const ModelParams params = cfg.make_params();

    const SolverGrid grid = SolverGrid::make(cfg.nx, cfg.nz);
    const HJParams hp = HJParams::make(params, cfg.flux_order(), cfg.cfl, cfg.flux_epsilon);
    HJSolver solver(grid, hp, alpha, rho0, bc);
    PotentialField field = solver.initial_field();
    solver.run(field, cfg.t_final, {});
    const FieldSnapshot reference = solver.recover_rho(field);

    RefinementResult result;
    for (const auto& [im, km] : ladder) {
        const LatticeConfig lat = LatticeConfig::make({im}, km, cfg.r_star);
        DiscreteModel model(lat, params, alpha, rho0, bc);
        DiscreteState state = model.init();
        model.run(state, cfg.t_final, {});
        RefinementRung rung;
        rung.i_max = im;
        rung.k_max = km;
        const PiecewiseField pf = reconstruct_piecewise(model, state);
        const FieldSnapshot resampled = resample_discrete(pf, grid, &rung.clamped_nodes);
        auto [diff, report] = diff_fields(reference, resampled);
        (void)diff;
        rung.report = report;
        rung.rel_l1 = report.norm_b_l1 > 0.0 ? report.l1 / report.norm_b_l1 : 0.0;
        result.rungs.push_back(rung);
    }
    for (std::size_t j = 1; j < result.rungs.size(); ++j)
        if (!(result.rungs[j].report.l1 < result.rungs[j - 1].report.l1))
            result.monotone = false;
    if (result.rungs.size() >= 2)
        result.l1_improves = result.rungs.back().report.l1 < result.rungs.front().report.l1;
    return result;
}

}  // namespace dataflow
