#pragma once

#include <cstddef>
#include <string>

#include "dataflow/discrete.hpp"
#include "dataflow/field.hpp"
#include "dataflow/grid.hpp"

namespace dataflow {

// Sample the piecewise-constant rescaled density onto the continuum node grid
// (nx columns by nz + 1 rows).  Nodes on the z = 0 line sit outside the cell
// cover; they are clamped to the first stage row and counted in
// *clamped_nodes so callers can report the substitution.
inline FieldSnapshot resample_discrete(const PiecewiseField& pf, const SolverGrid& grid,
                                       long* clamped_nodes = nullptr) {
    FieldSnapshot f;
    f.name = "r_resampled";
    f.t = pf.t();
    f.nx = grid.nx;
    f.nz = grid.nz + 1;
    f.centering = Centering::node;
    f.values.resize(static_cast<std::size_t>(f.nx) * f.nz);
    long clamped = 0;
    for (int m = 0; m <= grid.nz; ++m) {
        const double z = grid.z(m);
        int row;
        if (z <= 0.0) {
            row = 1;
            clamped += grid.nx;  // every node of this row substitutes the first stage
        } else {
            row = PiecewiseField::cell_row(z, pf.k_max());
        }
        for (int n = 0; n < grid.nx; ++n) {
            const int col = PiecewiseField::cell_col(grid.x(n), pf.i_max());
            f.values[static_cast<std::size_t>(m) * grid.nx + n] = pf.value(col, row);
        }
    }
    if (clamped_nodes) *clamped_nodes = clamped;
    return f;
}

// Convenience: reconstruct + resample in one call.
inline FieldSnapshot resample_discrete(const DiscreteModel& model, const DiscreteState& state,
                                       const SolverGrid& grid, long* clamped_nodes = nullptr) {
    const PiecewiseField pf = reconstruct_piecewise(model, state);
    return resample_discrete(pf, grid, clamped_nodes);
}

// Cell-centered snapshot of the raw reconstruction: row k-1 holds stage k.
inline FieldSnapshot to_cell_field(const PiecewiseField& pf, std::string name) {
    FieldSnapshot f;
    f.name = std::move(name);
    f.t = pf.t();
    f.nx = pf.i_max();
    f.nz = pf.k_max();
    f.centering = Centering::cell;
    f.values.resize(static_cast<std::size_t>(f.nx) * f.nz);
    for (int k = 1; k <= pf.k_max(); ++k)
        for (int i = 0; i < pf.i_max(); ++i)
            f.values[static_cast<std::size_t>(k - 1) * f.nx + i] = pf.value(i, k);
    return f;
}

// Column of the reconstruction through the cell containing x, labeled by the
// stage heights z_k = k delta (the grid-point identification rho(x_i, z_k) =
// r_{i,k} that defines the comparison).
inline Lineout discrete_lineout(const PiecewiseField& pf, double x) {
    if (!(x >= 0.0) || x >= 1.0)
        throw std::invalid_argument("discrete_lineout: x must lie in [0, 1)");
    Lineout l;
    l.name = "r";
    l.t = pf.t();
    l.x_requested = x;
    l.column = PiecewiseField::cell_col(x, pf.i_max());
    l.x_actual = (l.column + 0.5) / pf.i_max();
    l.z.resize(static_cast<std::size_t>(pf.k_max()));
    l.values.resize(static_cast<std::size_t>(pf.k_max()));
    for (int k = 1; k <= pf.k_max(); ++k) {
        l.z[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) / pf.k_max();
        l.values[static_cast<std::size_t>(k - 1)] = pf.value(l.column, k);
    }
    return l;
}

// Agreement metric used by the comparison experiments: L1 distance normalized
// by the L1 norm of the discrete (resampled) field.
inline double relative_l1(const FieldSnapshot& continuum_rho, const FieldSnapshot& discrete_r) {
    const auto [diff, report] = diff_fields(continuum_rho, discrete_r);
    (void)diff;
    if (!(report.norm_b_l1 > 0.0))
        throw SimulationError("relative_l1: discrete field has zero L1 norm");
    return report.l1 / report.norm_b_l1;
}

}  // namespace dataflow
