#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dataflow {

// ---------------------------------------------------------------------------
// FieldSnapshot: a named scalar field on a rectangular (x, z) mesh, either
// node-centered (x_j = j/nx with j < nx periodic, z rows m/(nz-1)) or
// cell-centered (centers ((j+1/2)/nx, row heights per the lattice convention)).
// Values are stored row-major in z: values[iz * nx + ix].
// ---------------------------------------------------------------------------

enum class Centering { node, cell };

struct FieldSnapshot {
    std::string name;
    double t = 0.0;
    int nx = 0;
    int nz = 0;  // number of z rows
    Centering centering = Centering::node;
    std::vector<double> values;

    double& at(int ix, int iz) { return values[static_cast<std::size_t>(iz) * nx + ix]; }
    double at(int ix, int iz) const { return values[static_cast<std::size_t>(iz) * nx + ix]; }

    double x_of(int ix) const {
        return centering == Centering::node ? static_cast<double>(ix) / nx
                                            : (ix + 0.5) / nx;
    }
    double z_of(int iz) const {
        return centering == Centering::node ? static_cast<double>(iz) / (nz - 1)
                                            : (iz + 0.5) / nz;
    }

    bool same_shape(const FieldSnapshot& o) const {
        return nx == o.nx && nz == o.nz && centering == o.centering;
    }
};

// Discrepancy norms on the normalized counting measure 1/(nx*nz).
struct ErrorReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double t = 0.0;
    int nx = 0;
    int nz = 0;
    double norm_a_l1 = 0.0;  // L1 of the first field (same measure)
    double norm_b_l1 = 0.0;  // L1 of the second (reference) field
    std::string a_name;
    std::string b_name;
};

// Pointwise difference a - b plus its norms.  Requires matching shapes and
// close snapshot times (comparisons across times are a caller error).
inline std::pair<FieldSnapshot, ErrorReport> diff_fields(const FieldSnapshot& a,
                                                         const FieldSnapshot& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("diff_fields: shape or centering mismatch");
    if (std::abs(a.t - b.t) > 1e-9)
        throw std::invalid_argument("diff_fields: snapshot times differ");

    FieldSnapshot d;
    d.name = a.name + "-" + b.name;
    d.t = a.t;
    d.nx = a.nx;
    d.nz = a.nz;
    d.centering = a.centering;
    d.values.resize(a.values.size());

    ErrorReport rep;
    rep.t = a.t;
    rep.nx = a.nx;
    rep.nz = a.nz;
    rep.a_name = a.name;
    rep.b_name = b.name;
    double sum1 = 0.0, sum2 = 0.0, mx = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t j = 0; j < d.values.size(); ++j) {
        const double v = a.values[j] - b.values[j];
        d.values[j] = v;
        sum1 += std::abs(v);
        sum2 += v * v;
        mx = std::max(mx, std::abs(v));
        na += std::abs(a.values[j]);
        nb += std::abs(b.values[j]);
    }
    const double inv = 1.0 / (static_cast<double>(a.nx) * a.nz);
    rep.l1 = sum1 * inv;
    rep.l2 = std::sqrt(sum2 * inv);
    rep.linf = mx;
    rep.norm_a_l1 = na * inv;
    rep.norm_b_l1 = nb * inv;
    return {std::move(d), rep};
}

// One column of a field at (nearest) abscissa x, with the actual x recorded.
struct Lineout {
    std::string name;
    double t = 0.0;
    double x_requested = 0.0;
    double x_actual = 0.0;
    int column = 0;
    std::vector<double> z;       // row coordinates
    std::vector<double> values;  // field values down the column
};

inline Lineout lineout(const FieldSnapshot& f, double x) {
    if (!(x >= 0.0) || x >= 1.0)
        throw std::invalid_argument("lineout: x must lie in [0, 1)");
    int col;
    if (f.centering == Centering::node) {
        col = static_cast<int>(std::lround(x * f.nx)) % f.nx;  // nearest node
    } else {
        col = static_cast<int>(std::floor(x * f.nx + 1e-9));   // containing cell
        col = std::min(std::max(col, 0), f.nx - 1);
    }
    Lineout line;
    line.name = f.name;
    line.t = f.t;
    line.x_requested = x;
    line.x_actual = f.x_of(col);
    line.column = col;
    line.z.resize(static_cast<std::size_t>(f.nz));
    line.values.resize(static_cast<std::size_t>(f.nz));
    for (int iz = 0; iz < f.nz; ++iz) {
        line.z[static_cast<std::size_t>(iz)] = f.z_of(iz);
        line.values[static_cast<std::size_t>(iz)] = f.at(col, iz);
    }
    return line;
}

}  // namespace dataflow
