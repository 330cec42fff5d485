#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dataflow/errors.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Uniform node grid for the Hamilton-Jacobi solver: x_n = n/N (n = 0..N-1,
// periodic) and z_m = m/M (m = 0..M, both boundaries are rows), plus three
// ghost layers on every side for the WENO stencils.
// ---------------------------------------------------------------------------
struct SolverGrid {
    int nx = 0;  // N: x nodes (and cells, periodic)
    int nz = 0;  // M: z cells; M + 1 node rows
    static constexpr int ghost = 3;

    static SolverGrid make(int nx, int nz) {
        if (nx < 7 || nz < 7)
            throw ConfigError("solver grid: need nx >= 7 and nz >= 7 for the WENO stencil");
        return SolverGrid{nx, nz};
    }

    double dx() const { return 1.0 / nx; }
    double dz() const { return 1.0 / nz; }
    double x(int n) const { return static_cast<double>(n) / nx; }
    double z(int m) const { return static_cast<double>(m) / nz; }

    int row_width() const { return nx + 2 * ghost; }
    int row_count() const { return nz + 1 + 2 * ghost; }

    // Flat index for node (n, m), valid for n in [-ghost, nx+ghost) and
    // m in [-ghost, nz+ghost].
    std::size_t index(int n, int m) const {
        return static_cast<std::size_t>(m + ghost) * row_width()
             + static_cast<std::size_t>(n + ghost);
    }
};

// Grid function P with ghost layers and a clock.
class PotentialField {
public:
    PotentialField() = default;

    explicit PotentialField(const SolverGrid& g)
        : grid_(g), data_(static_cast<std::size_t>(g.row_width()) * g.row_count(), 0.0) {}

    const SolverGrid& grid() const { return grid_; }

    double& at(int n, int m) { return data_[grid_.index(n, m)]; }
    double at(int n, int m) const { return data_[grid_.index(n, m)]; }

    double* row(int m) { return data_.data() + grid_.index(-SolverGrid::ghost, m); }
    const double* row(int m) const { return data_.data() + grid_.index(-SolverGrid::ghost, m); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    double t = 0.0;

private:
    SolverGrid grid_;
    std::vector<double> data_;
};

}  // namespace dataflow
