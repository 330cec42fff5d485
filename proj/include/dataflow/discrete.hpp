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
#include "dataflow/params.hpp"
#include "dataflow/profiles.hpp"
#include "dataflow/throttle.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Lattice geometry: dims[d] processors along each periodic axis, k_max stages
// per processor.  Mesh spacings are eps_d = 1/dims[d] in x and delta = 1/k_max
// in z; the cell volume V = prod eps_d generalizes eps to n dimensions, and
// the unscaled threshold is q_star = V * delta * r_star.
// ---------------------------------------------------------------------------
struct LatticeConfig {
    std::vector<int> dims;
    int k_max = 0;
    double q_star = 0.0;

    static LatticeConfig make(std::vector<int> dims, int k_max, double r_star) {
        LatticeConfig c;
        c.dims = std::move(dims);
        c.k_max = k_max;
        c.validate_geometry();
        if (!(r_star > 0.0)) throw ConfigError("lattice: r_star must be positive");
        c.q_star = c.volume() * c.delta() * r_star;
        return c;
    }

    void validate_geometry() const {
        std::vector<std::string> issues;
        if (dims.empty()) issues.push_back("lattice: dims must be non-empty");
        for (std::size_t d = 0; d < dims.size(); ++d)
            if (dims[d] < 3)
                issues.push_back("lattice: dims[" + std::to_string(d)
                                 + "] must be >= 3 (distinct neighbors)");
        if (k_max < 1) issues.push_back("lattice: k_max must be >= 1");
        if (!issues.empty()) throw ConfigError(std::move(issues));
    }

    int ndim() const { return static_cast<int>(dims.size()); }

    int cells() const {
        int n = 1;
        for (int d : dims) n *= d;
        return n;
    }

    double delta() const { return 1.0 / k_max; }
    double eps(int d) const { return 1.0 / dims[static_cast<std::size_t>(d)]; }

    double volume() const {
        double v = 1.0;
        for (int d : dims) v /= d;
        return v;
    }

    // Cell-center coordinate along one axis, x = (idx + 1/2) * eps.
    double coord(int d, int idx) const { return (idx + 0.5) * eps(d); }

    // Stage height z_k = k * delta.
    double z(int k) const { return k * delta(); }
};

// Full lattice state.  Stage rows are stored flattened, row-major in the stage
// index: row k = 0 is the prescribed inflow stage q_{i,0}, rows 1..k_max are
// the evolving stages.  The inflow/outflow accumulators integrate the boundary
// fluxes with the same multistep weights as q so the unwrap identity
// telescopes exactly.
struct DiscreteState {
    std::vector<double> q;               // (k_max + 1) rows of cells() values
    std::vector<double> outflow_accum;   // per processor
    std::vector<double> inflow_accum;    // per processor
    double t = 0.0;

    // Adams-Bashforth history
    std::vector<double> prev_rhs;        // k_max rows (stages 1..k_max)
    std::vector<double> prev_out_rate;
    std::vector<double> prev_in_rate;
    double prev_dt = 0.0;
    bool have_history = false;
};

struct DiscreteRunInfo {
    long steps = 0;
    double dt = 0.0;            // nominal step from the stability formula
    double min_q = 0.0;         // min over all stages and all steps
    double wall_seconds = 0.0;
};

struct DiscreteRunPolicy {
    enum class Positivity { at_snapshots, every_step };
    Positivity positivity = Positivity::at_snapshots;
    double dt_override = 0.0;   // > 0 forces the nominal step (testing hook)
};

inline constexpr double kPositivityTol = 1e-12;

// ---------------------------------------------------------------------------
// The lattice ODE model dq_{i,k}/dt = F_{i,k-1} - F_{i,k} with the throttled
// flux F = a_i v1(min over axes of v2(q, Delta+, Delta-; beta); q*), advanced
// by explicit two-step Adams-Bashforth.  alpha, rho0 and rho_bc are sampled
// on the first-axis coordinate (profiles vary along x only).
// ---------------------------------------------------------------------------
class DiscreteModel {
public:
    struct Workspace {
        std::vector<double> Q;        // (k_max+1) x cells suffix sums
        std::vector<double> F;        // (k_max+1) x cells fluxes
        std::vector<double> new_rhs;  // k_max x cells
    };

    DiscreteModel(LatticeConfig config, ModelParams params, AlphaProfile alpha,
                  DensityProfile rho0, BoundaryProfile rho_bc)
        : cfg_(std::move(config)), params_(std::move(params)), alpha_(std::move(alpha)),
          rho0_(std::move(rho0)), rho_bc_(std::move(rho_bc)) {
        params_.validate();
        if (static_cast<int>(params_.eta.size()) != cfg_.ndim())
            throw ConfigError("discrete model: eta axis count must match lattice dimension");
        build_tables();
    }

    const LatticeConfig& config() const { return cfg_; }
    const ModelParams& params() const { return params_; }
    const std::vector<double>& rates() const { return a_; }
    const AlphaProfile& alpha() const { return alpha_; }

    // First-axis coordinate of a flat cell index.
    double x_first(int cell) const { return x_[static_cast<std::size_t>(cell)]; }

    Workspace make_workspace() const {
        Workspace ws;
        const std::size_t C = static_cast<std::size_t>(cfg_.cells());
        const std::size_t K = static_cast<std::size_t>(cfg_.k_max);
        ws.Q.assign((K + 1) * C, 0.0);
        ws.F.assign((K + 1) * C, 0.0);
        ws.new_rhs.assign(K * C, 0.0);
        return ws;
    }

    // Initial state: q_{i,k}(0) = V * delta * rho0(x_i, z_k), inflow row from
    // rho_bc at t = 0.  Rejects negative density samples.
    DiscreteState init() const {
        const int C = cfg_.cells();
        const int K = cfg_.k_max;
        const double scale = cfg_.volume() * cfg_.delta();
        DiscreteState s;
        s.q.assign(static_cast<std::size_t>(K + 1) * C, 0.0);
        s.outflow_accum.assign(C, 0.0);
        s.inflow_accum.assign(C, 0.0);
        s.prev_rhs.assign(static_cast<std::size_t>(K) * C, 0.0);
        s.prev_out_rate.assign(C, 0.0);
        s.prev_in_rate.assign(C, 0.0);
        for (int k = 1; k <= K; ++k) {
            const double zk = cfg_.z(k);
            for (int i = 0; i < C; ++i) {
                const double rho = rho0_(x_[static_cast<std::size_t>(i)], zk);
                if (!(rho >= 0.0))
                    throw ConfigError("rho0 sample negative (or NaN) at x="
                                      + std::to_string(x_[static_cast<std::size_t>(i)])
                                      + ", z=" + std::to_string(zk));
                s.q[static_cast<std::size_t>(k) * C + i] = scale * rho;
            }
        }
        set_inflow_row(s);
        return s;
    }

    // Prescribed inflow stage q_{i,0}(t) = V * delta * rho_bc(x_i, t).
    void set_inflow_row(DiscreteState& s) const {
        const int C = cfg_.cells();
        if (rho_bc_.is_zero()) {
            std::fill_n(s.q.begin(), C, 0.0);
            return;
        }
        const double scale = cfg_.volume() * cfg_.delta();
        for (int i = 0; i < C; ++i)
            s.q[static_cast<std::size_t>(i)] = scale * rho_bc_(x_[static_cast<std::size_t>(i)], s.t);
    }

    // Suffix sums Q_{i,k} = sum_{j=k}^{k_max} q_{i,j} + outflow_accum_i for
    // k = 0..k_max (k = 0 includes the inflow stage).
    void compute_Q(const DiscreteState& s, std::vector<double>& Q) const {
        const int C = cfg_.cells();
        const int K = cfg_.k_max;
        Q.resize(static_cast<std::size_t>(K + 1) * C);
        std::copy(s.outflow_accum.begin(), s.outflow_accum.end(),
                  Q.begin() + static_cast<std::size_t>(K) * C);
        for (int i = 0; i < C; ++i)
            Q[static_cast<std::size_t>(K) * C + i] += s.q[static_cast<std::size_t>(K) * C + i];
        for (int k = K - 1; k >= 0; --k) {
            const std::size_t row = static_cast<std::size_t>(k) * C;
            const std::size_t above = row + static_cast<std::size_t>(C);
            for (int i = 0; i < C; ++i)
                Q[row + i] = Q[above + i] + s.q[row + i];
        }
    }

    // Throttled fluxes F_{i,k} for k = 0..k_max.
    void compute_fluxes(const DiscreteState& s, const std::vector<double>& Q,
                        std::vector<double>& F) const {
        const int C = cfg_.cells();
        const int K = cfg_.k_max;
        const int nd = cfg_.ndim();
        const double beta = params_.beta;
        const double qs = cfg_.q_star;
        F.resize(static_cast<std::size_t>(K + 1) * C);
        for (int k = 0; k <= K; ++k) {
            const std::size_t row = static_cast<std::size_t>(k) * C;
            for (int i = 0; i < C; ++i) {
                const double qv = s.q[row + i];
                const double Qc = Q[row + i];
                double headroom = std::numeric_limits<double>::infinity();
                for (int d = 0; d < nd; ++d) {
                    const double dp = Q[row + nb_plus_[d][static_cast<std::size_t>(i)]] - Qc + qv;
                    const double dm = Q[row + nb_minus_[d][static_cast<std::size_t>(i)]] - Qc + qv;
                    headroom = std::min(headroom, std::min(std::max(dp, 0.0), std::max(dm, 0.0)));
                }
                const double v2 = std::min(qv, headroom / beta);
                const double v1 = std::max(0.0, std::min(1.0, v2 / qs));
                F[row + i] = a_[static_cast<std::size_t>(i)] * v1;
            }
        }
    }

    // dq_{i,k}/dt = F_{i,k-1} - F_{i,k} for the evolving stages k = 1..k_max.
    void rhs(const std::vector<double>& F, std::vector<double>& dq) const {
        const int C = cfg_.cells();
        const int K = cfg_.k_max;
        dq.resize(static_cast<std::size_t>(K) * C);
        for (int k = 1; k <= K; ++k) {
            const std::size_t frow = static_cast<std::size_t>(k) * C;
            const std::size_t drow = static_cast<std::size_t>(k - 1) * C;
            for (int i = 0; i < C; ++i)
                dq[drow + i] = F[frow - C + i] - F[frow + i];
        }
    }

    // Stability step q* / (2 max_i a_i sqrt(#cells * k_max)).
    double ab2_timestep() const {
        const double amax = *std::max_element(a_.begin(), a_.end());
        if (!(amax > 0.0)) throw ConfigError("ab2_timestep: all processor rates are zero");
        return cfg_.q_star
               / (2.0 * amax * std::sqrt(static_cast<double>(cfg_.cells()) * cfg_.k_max));
    }

    struct StepStats {
        double min_q = std::numeric_limits<double>::infinity();
        bool has_nan = false;
    };

    // One Adams-Bashforth step.  The first step is forward Euler (builds the
    // history); afterwards variable-step AB2 weights are used so a shortened
    // snapshot-landing step keeps second order: for step h after a step h_prev
    // the weights are h(1 + h/(2 h_prev)) and -h^2/(2 h_prev), which reduce to
    // 3/2 h and -1/2 h for uniform steps.  The accumulators advance with the
    // identical weights.
    StepStats step_ab2(DiscreteState& s, Workspace& ws, double dt) const {
        if (!(dt > 0.0)) throw std::invalid_argument("step_ab2: dt must be positive");
        const int C = cfg_.cells();
        const int K = cfg_.k_max;
        set_inflow_row(s);
        compute_Q(s, ws.Q);
        compute_fluxes(s, ws.Q, ws.F);

        double w_now = dt, w_prev = 0.0;
        if (s.have_history) {
            w_now = dt * (1.0 + dt / (2.0 * s.prev_dt));
            w_prev = -dt * dt / (2.0 * s.prev_dt);
        }

        StepStats stats;
        for (int k = 1; k <= K; ++k) {
            const std::size_t frow = static_cast<std::size_t>(k) * C;
            const std::size_t rrow = static_cast<std::size_t>(k - 1) * C;
            for (int i = 0; i < C; ++i) {
                const double d = ws.F[frow - C + i] - ws.F[frow + i];
                const double qn = s.q[frow + i] + w_now * d + w_prev * s.prev_rhs[rrow + i];
                s.q[frow + i] = qn;
                ws.new_rhs[rrow + i] = d;
                if (std::isnan(qn)) stats.has_nan = true;
                else if (qn < stats.min_q) stats.min_q = qn;
            }
        }
        const std::size_t top = static_cast<std::size_t>(K) * C;
        for (int i = 0; i < C; ++i) {
            s.outflow_accum[static_cast<std::size_t>(i)] +=
                w_now * ws.F[top + i] + w_prev * s.prev_out_rate[static_cast<std::size_t>(i)];
            s.inflow_accum[static_cast<std::size_t>(i)] +=
                w_now * ws.F[static_cast<std::size_t>(i)] + w_prev * s.prev_in_rate[static_cast<std::size_t>(i)];
            s.prev_out_rate[static_cast<std::size_t>(i)] = ws.F[top + i];
            s.prev_in_rate[static_cast<std::size_t>(i)] = ws.F[static_cast<std::size_t>(i)];
        }
        std::swap(s.prev_rhs, ws.new_rhs);
        s.prev_dt = dt;
        s.have_history = true;
        s.t += dt;
        return stats;
    }

    // Convenience single-step entry (owns a throwaway workspace).
    StepStats step_ab2(DiscreteState& s, double dt) const {
        Workspace ws = make_workspace();
        return step_ab2(s, ws, dt);
    }

    // Advance to t_final with the fixed stability step, shortening individual
    // steps only to land exactly on snapshot times and the final time.
    // Returns one state copy per requested snapshot time.
    std::vector<DiscreteState> run(DiscreteState& s, double t_final,
                                   std::span<const double> snapshot_times,
                                   DiscreteRunInfo* info = nullptr,
                                   const DiscreteRunPolicy& policy = {}) const {
        if (!(t_final >= s.t))
            throw std::invalid_argument("run: t_final must be >= current time");
        for (std::size_t j = 0; j < snapshot_times.size(); ++j) {
            if (j > 0 && snapshot_times[j] < snapshot_times[j - 1])
                throw std::invalid_argument("run: snapshot times must be sorted");
            if (snapshot_times[j] < 0.0 || snapshot_times[j] > t_final)
                throw std::invalid_argument("run: snapshot times must lie in [0, t_final]");
        }

        const auto t0 = std::chrono::steady_clock::now();
        const double dt0 = policy.dt_override > 0.0 ? policy.dt_override : ab2_timestep();
        const double tiny = 1e-9 * dt0;
        Workspace ws = make_workspace();
        std::vector<DiscreteState> out;
        DiscreteRunInfo local;
        local.dt = dt0;
        local.min_q = std::numeric_limits<double>::infinity();

        std::size_t next_snap = 0;
        while (next_snap < snapshot_times.size() && snapshot_times[next_snap] <= s.t + tiny) {
            set_inflow_row(s);
            out.push_back(s);
            ++next_snap;
        }

        while (s.t < t_final - tiny) {
            double target = t_final;
            if (next_snap < snapshot_times.size())
                target = std::min(target, snapshot_times[next_snap]);
            double h = dt0;
            bool landing = false;
            if (target - s.t <= dt0 * (1.0 + 1e-9)) {
                h = target - s.t;
                landing = true;
            }
            const StepStats st = step_ab2(s, ws, h);
            ++local.steps;
            if (st.has_nan) abort_on_nan(s);
            local.min_q = std::min(local.min_q, st.min_q);
            if (policy.positivity == DiscreteRunPolicy::Positivity::every_step)
                enforce_positivity(st.min_q, s.t);
            if (landing) {
                s.t = target;
                while (next_snap < snapshot_times.size()
                       && std::abs(snapshot_times[next_snap] - s.t) <= tiny) {
                    enforce_positivity(st.min_q, s.t);
                    set_inflow_row(s);
                    out.push_back(s);
                    ++next_snap;
                }
            }
        }
        s.t = t_final;
        enforce_positivity(current_min(s), s.t);

        if (local.min_q == std::numeric_limits<double>::infinity()) local.min_q = current_min(s);
        local.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (info) *info = local;
        return out;
    }

private:
    void build_tables() {
        const int C = cfg_.cells();
        const int nd = cfg_.ndim();
        std::vector<int> stride(static_cast<std::size_t>(nd), 1);
        for (int d = 1; d < nd; ++d)
            stride[static_cast<std::size_t>(d)] =
                stride[static_cast<std::size_t>(d - 1)] * cfg_.dims[static_cast<std::size_t>(d - 1)];

        nb_plus_.assign(static_cast<std::size_t>(nd), {});
        nb_minus_.assign(static_cast<std::size_t>(nd), {});
        for (int d = 0; d < nd; ++d) {
            nb_plus_[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(C));
            nb_minus_[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(C));
        }
        x_.resize(static_cast<std::size_t>(C));
        a_.resize(static_cast<std::size_t>(C));
        const double V = cfg_.volume();

        std::vector<int> idx(static_cast<std::size_t>(nd), 0);
        for (int c = 0; c < C; ++c) {
            int rem = c;
            for (int d = nd - 1; d >= 0; --d) {
                idx[static_cast<std::size_t>(d)] = rem / stride[static_cast<std::size_t>(d)];
                rem %= stride[static_cast<std::size_t>(d)];
            }
            for (int d = 0; d < nd; ++d) {
                const int n = cfg_.dims[static_cast<std::size_t>(d)];
                const int up = (idx[static_cast<std::size_t>(d)] + 1) % n;
                const int dn = (idx[static_cast<std::size_t>(d)] + n - 1) % n;
                nb_plus_[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)] =
                    c + (up - idx[static_cast<std::size_t>(d)]) * stride[static_cast<std::size_t>(d)];
                nb_minus_[static_cast<std::size_t>(d)][static_cast<std::size_t>(c)] =
                    c + (dn - idx[static_cast<std::size_t>(d)]) * stride[static_cast<std::size_t>(d)];
            }
            x_[static_cast<std::size_t>(c)] = cfg_.coord(0, idx[0]);
            a_[static_cast<std::size_t>(c)] = V * alpha_(x_[static_cast<std::size_t>(c)]);
        }
    }

    void enforce_positivity(double min_q, double t) const {
        if (min_q < -kPositivityTol)
            throw SimulationError("positivity violated: min q = " + std::to_string(min_q)
                                  + " at t = " + std::to_string(t));
    }

    double current_min(const DiscreteState& s) const {
        const int C = cfg_.cells();
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t j = static_cast<std::size_t>(C); j < s.q.size(); ++j)
            m = std::min(m, s.q[j]);
        return m;
    }

    [[noreturn]] void abort_on_nan(const DiscreteState& s) const {
        const int C = cfg_.cells();
        for (std::size_t j = 0; j < s.q.size(); ++j) {
            if (std::isnan(s.q[j])) {
                const int k = static_cast<int>(j) / C;
                const int i = static_cast<int>(j) % C;
                throw SimulationError("NaN in state at stage k=" + std::to_string(k)
                                      + ", cell i=" + std::to_string(i)
                                      + ", t=" + std::to_string(s.t));
            }
        }
        throw SimulationError("NaN in state at t=" + std::to_string(s.t));
    }

    LatticeConfig cfg_;
    ModelParams params_;
    AlphaProfile alpha_;
    DensityProfile rho0_;
    BoundaryProfile rho_bc_;
    std::vector<double> x_;                   // first-axis coordinate per cell
    std::vector<double> a_;                   // processor rates a_i = V alpha(x_i)
    std::vector<std::vector<int>> nb_plus_;   // periodic neighbor tables per axis
    std::vector<std::vector<int>> nb_minus_;
};

// ---------------------------------------------------------------------------
// Piecewise-constant reconstruction r(x, z) = q_{i,k} / (eps delta) on the
// half-open cells [x_i - eps/2, x_i + eps/2) x (z_k, z_k + delta], 1D only.
// Points at or below the floor of the k = 1 cell (z <= z_1 = delta) evaluate
// to the k = 1 row.
// ---------------------------------------------------------------------------
class PiecewiseField {
public:
    PiecewiseField(const DiscreteModel& model, const DiscreteState& state) {
        const LatticeConfig& cfg = model.config();
        if (cfg.ndim() != 1)
            throw std::invalid_argument("reconstruct_piecewise: 1D lattice required");
        i_max_ = cfg.dims[0];
        k_max_ = cfg.k_max;
        t_ = state.t;
        const double scale = 1.0 / (cfg.eps(0) * cfg.delta());
        r_.resize(static_cast<std::size_t>(i_max_) * k_max_);
        q_total_ = 0.0;
        for (int k = 1; k <= k_max_; ++k)
            for (int i = 0; i < i_max_; ++i) {
                const double q = state.q[static_cast<std::size_t>(k) * i_max_ + i];
                r_[static_cast<std::size_t>(k - 1) * i_max_ + i] = scale * q;
                q_total_ += q;
            }
    }

    // Containing-cell row for height z, clamped into [1, k_max]; the 1e-9
    // nudge keeps exact cell-edge values on the closed side of (z_lo, z_hi].
    static int cell_row(double z, int k_max) {
        const int k = static_cast<int>(std::ceil(z * k_max - 1e-9)) - 1;
        return std::clamp(k, 1, k_max);
    }

    // Containing-cell column for abscissa x in [0, 1), closed on the left.
    static int cell_col(double x, int i_max) {
        const int i = static_cast<int>(std::floor(x * i_max + 1e-9));
        return std::clamp(i, 0, i_max - 1);
    }

    double operator()(double x, double z) const {
        const double delta = 1.0 / k_max_;
        if (!(x >= 0.0) || x >= 1.0 || !(z > 0.0) || z > 1.0 + delta + 1e-12)
            throw std::domain_error("piecewise field: (x, z) outside [0,1) x (0, 1+delta]");
        return value(cell_col(x, i_max_), cell_row(z, k_max_));
    }

    double value(int col, int row) const {  // row is 1-based (stage index)
        return r_[static_cast<std::size_t>(row - 1) * i_max_ + col];
    }

    // Integral of the reconstruction over its cells; equals sum of q.
    double mass() const { return q_total_; }

    int i_max() const { return i_max_; }
    int k_max() const { return k_max_; }
    double t() const { return t_; }

private:
    int i_max_ = 0, k_max_ = 0;
    double q_total_ = 0.0;
    double t_ = 0.0;
    std::vector<double> r_;
};

inline PiecewiseField reconstruct_piecewise(const DiscreteModel& model,
                                            const DiscreteState& state) {
    return PiecewiseField(model, state);
}

// ---------------------------------------------------------------------------
// Per-processor relative defect of the conservation unwrap identity
//   outflow_accum_i = inflow_accum_i + sum_k q_{i,k}(0) - sum_k q_{i,k}(t)
// (stage sums over k = 1..k_max; both accumulators are advanced with the same
// multistep weights as q, so the identity telescopes to round-off).  Each
// defect is normalized by the largest participating magnitude; a processor
// whose terms are all exactly zero reports 0 (the tiny floor only avoids 0/0).
// ---------------------------------------------------------------------------
inline std::vector<double> unwrap_defects(const LatticeConfig& cfg,
                                          const DiscreteState& initial,
                                          const DiscreteState& state) {
    const int C = cfg.cells();
    const int K = cfg.k_max;
    if (initial.q.size() != state.q.size()
        || state.q.size() != static_cast<std::size_t>(K + 1) * C)
        throw std::invalid_argument("unwrap_defects: state shape mismatch");
    std::vector<double> out(static_cast<std::size_t>(C));
    for (int i = 0; i < C; ++i) {
        double q0 = 0.0, qt = 0.0;
        for (int k = 1; k <= K; ++k) {
            q0 += initial.q[static_cast<std::size_t>(k) * C + i];
            qt += state.q[static_cast<std::size_t>(k) * C + i];
        }
        const double lhs = state.outflow_accum[static_cast<std::size_t>(i)];
        const double rhs = state.inflow_accum[static_cast<std::size_t>(i)] + q0 - qt;
        const double scale = std::max({std::numeric_limits<double>::min(), std::abs(lhs),
                                       std::abs(state.inflow_accum[static_cast<std::size_t>(i)]),
                                       std::abs(q0), std::abs(qt)});
        out[static_cast<std::size_t>(i)] = std::abs(lhs - rhs) / scale;
    }
    return out;
}

}  // namespace dataflow
