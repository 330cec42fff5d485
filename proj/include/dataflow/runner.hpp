#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dataflow/compare.hpp"
#include "dataflow/discrete.hpp"
#include "dataflow/errors.hpp"
#include "dataflow/field.hpp"
#include "dataflow/grid.hpp"
#include "dataflow/hj.hpp"
#include "dataflow/scenario.hpp"

namespace dataflow {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline void append_g17(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string meta_path_for(const std::string& path) {
    const std::string suffix = ".dat";
    if (path.size() > suffix.size()
        && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return path.substr(0, path.size() - suffix.size()) + ".meta.json";
    return path + ".meta.json";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Delimited-text field format: four header lines, then nz rows of nx values
// with 17 significant digits.  A JSON companion carries the same metadata
// plus value range.  Data files contain no timestamps, so identical runs
// produce identical bytes.
// ---------------------------------------------------------------------------
inline void export_field(const FieldSnapshot& f, const std::string& path) {
    if (f.nx <= 0 || f.nz <= 0 || f.values.size() != static_cast<std::size_t>(f.nx) * f.nz)
        throw SimulationError("export_field: inconsistent snapshot dimensions for " + f.name);
    std::string body;
    body.reserve(f.values.size() * 20 + 128);
    body += "# name " + f.name + "\n";
    body += "# t ";
    detail::append_g17(body, f.t);
    body += "\n# nx nz " + std::to_string(f.nx) + " " + std::to_string(f.nz) + "\n";
    body += std::string("# centering ") + (f.centering == Centering::node ? "node" : "cell")
          + "\n";
    double vmin = f.values.empty() ? 0.0 : f.values[0];
    double vmax = vmin;
    for (int iz = 0; iz < f.nz; ++iz) {
        for (int ix = 0; ix < f.nx; ++ix) {
            const double v = f.at(ix, iz);
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
            if (ix) body += ' ';
            detail::append_g17(body, v);
        }
        body += '\n';
    }
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw SimulationError("cannot open '" + path + "' for writing");
        out << body;
        if (!out) throw SimulationError("write failed for '" + path + "'");
    }
    ordered_json meta;
    meta["name"] = f.name;
    meta["t"] = f.t;
    meta["nx"] = f.nx;
    meta["nz"] = f.nz;
    meta["centering"] = f.centering == Centering::node ? "node" : "cell";
    meta["min"] = vmin;
    meta["max"] = vmax;
    meta["data_file"] = std::filesystem::path(path).filename().string();
    std::ofstream mout(detail::meta_path_for(path), std::ios::binary);
    if (!mout) throw SimulationError("cannot open metadata for '" + path + "'");
    mout << meta.dump(2) << "\n";
}

// Inverse of export_field; round-trips values exactly (17 significant digits).
inline FieldSnapshot read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open field file '" + path + "'");
    std::string line;
    const auto header = [&](const char* prefix) -> std::string {
        if (!std::getline(in, line))
            throw ConfigError(path + ": truncated header (missing '" + std::string(prefix) + "')");
        const std::string p(prefix);
        if (line.rfind(p, 0) != 0)
            throw ConfigError(path + ": expected header '" + p + "...', got '" + line + "'");
        return detail::trim(std::string_view(line).substr(p.size()));
    };
    FieldSnapshot f;
    f.name = header("# name ");
    {
        std::istringstream v(header("# t "));
        if (!(v >> f.t)) throw ConfigError(path + ": malformed '# t' header");
    }
    {
        std::istringstream v(header("# nx nz "));
        if (!(v >> f.nx >> f.nz) || f.nx <= 0 || f.nz <= 0)
            throw ConfigError(path + ": malformed '# nx nz' header");
    }
    {
        const std::string c = header("# centering ");
        if (c == "node") f.centering = Centering::node;
        else if (c == "cell") f.centering = Centering::cell;
        else throw ConfigError(path + ": centering must be node or cell, got '" + c + "'");
    }
    f.values.resize(static_cast<std::size_t>(f.nx) * f.nz);
    for (std::size_t j = 0; j < f.values.size(); ++j) {
        if (!(in >> f.values[j]))
            throw ConfigError(path + ": expected " + std::to_string(f.values.size())
                              + " values, failed at index " + std::to_string(j));
        if (!std::isfinite(f.values[j]))
            throw ConfigError(path + ": non-finite value at index " + std::to_string(j));
    }
    in >> std::ws;
    if (in.peek() != std::char_traits<char>::eof())
        throw ConfigError(path + ": trailing data after the field values");
    return f;
}

// Line-outs: four header lines then "z value" rows.
inline void export_lineout(const Lineout& l, const std::string& path) {
    std::string body;
    body += "# name " + l.name + "\n";
    body += "# t ";
    detail::append_g17(body, l.t);
    body += "\n# x ";
    detail::append_g17(body, l.x_actual);
    body += " requested ";
    detail::append_g17(body, l.x_requested);
    body += " column " + std::to_string(l.column) + "\n";
    body += "# rows " + std::to_string(l.z.size()) + "\n";
    for (std::size_t j = 0; j < l.z.size(); ++j) {
        detail::append_g17(body, l.z[j]);
        body += ' ';
        detail::append_g17(body, l.values[j]);
        body += '\n';
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError("cannot open '" + path + "' for writing");
    out << body;
    if (!out) throw SimulationError("write failed for '" + path + "'");
}

// Node-centered snapshot of the potential on the solver grid.
inline FieldSnapshot potential_snapshot(const PotentialField& u, const SolverGrid& g,
                                        std::string name) {
    FieldSnapshot f;
    f.name = std::move(name);
    f.t = u.t;
    f.nx = g.nx;
    f.nz = g.nz + 1;
    f.centering = Centering::node;
    f.values.resize(static_cast<std::size_t>(f.nx) * f.nz);
    for (int m = 0; m <= g.nz; ++m)
        for (int n = 0; n < g.nx; ++n)
            f.values[static_cast<std::size_t>(m) * g.nx + n] = u.at(n, m);
    return f;
}

namespace detail {

inline ordered_json config_json(const ScenarioConfig& c) {
    ordered_json j;
    j["scenario"] = to_string(c.scenario);
    j["models"] = c.model_discrete && c.model_continuum ? "both"
                : c.model_discrete ? "discrete" : "continuum";
    j["eta"] = c.eta;
    j["beta"] = c.beta;
    j["r_star"] = c.r_star;
    j["alpha.kind"] = c.alpha_kind;
    j["alpha.base"] = c.alpha_base;
    j["alpha.amplitude"] = c.alpha_amplitude;
    j["alpha.harmonic"] = c.alpha_harmonic;
    j["rho0.kind"] = c.rho0_kind;
    j["rho0.amplitude"] = c.rho0_amplitude;
    j["rho0.z_cut"] = c.rho0_z_cut;
    j["bc.kind"] = c.bc_kind;
    j["bc.value"] = c.bc_value;
    j["discrete.i_max"] = c.i_max;
    j["discrete.k_max"] = c.k_max;
    j["grid.nx"] = c.nx;
    j["grid.nz"] = c.nz;
    j["flux.order"] = c.flux;
    j["flux.epsilon"] = c.flux_epsilon;
    j["cfl"] = c.cfl;
    j["t_final"] = c.t_final;
    j["snapshots"] = c.snapshots;
    j["lineout_x"] = c.lineout_x;
    j["outdir"] = c.outdir;
    j["checks.monotonicity"] = c.monotonicity;
    j["checks.positivity"] = c.positivity;
    return j;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Execute a validated scenario: run the requested models, compare them when
// both ran, export every field/line-out, and write manifest.json.  Returns
// the manifest.  On simulation failure the partial manifest is written with
// incomplete = true before the error propagates.
// ---------------------------------------------------------------------------
inline ordered_json run_scenario(const ScenarioConfig& cfg) {
    namespace fs = std::filesystem;
    cfg.validate();
    const fs::path dir(cfg.outdir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw SimulationError("cannot create output directory '" + cfg.outdir + "': "
                                  + ec.message());
    const auto wall0 = std::chrono::steady_clock::now();

    ordered_json manifest;
    manifest["scenario"] = to_string(cfg.scenario);
    manifest["models"] = ordered_json::array();
    if (cfg.model_discrete) manifest["models"].push_back("discrete");
    if (cfg.model_continuum) manifest["models"].push_back("continuum");
    manifest["config"] = detail::config_json(cfg);
    manifest["incomplete"] = false;
    std::vector<std::string> files;

    {
        std::ofstream out(dir / "config.txt", std::ios::binary);
        if (!out) throw SimulationError("cannot write config echo in '" + cfg.outdir + "'");
        out << serialize(cfg);
        files.push_back("config.txt");
    }

    // Labeled output times: the configured snapshots, plus the final state
    // when t_final is not already the last snapshot.
    const std::vector<double>& snaps = cfg.snapshots;
    const bool final_extra =
        snaps.empty() || std::abs(snaps.back() - cfg.t_final) > 1e-12;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j < snaps.size(); ++j) labels.push_back("snap" + std::to_string(j));
    if (final_extra) labels.push_back("final");

    const AlphaProfile alpha = cfg.make_alpha();
    const DensityProfile rho0 = cfg.make_rho0();
    const BoundaryProfile bc = cfg.make_bc();
    const ModelParams params = cfg.make_params();

    const auto finalize = [&](bool incomplete, const std::string& error) {
        manifest["incomplete"] = incomplete;
        if (!error.empty()) manifest["error"] = error;
        manifest["outputs"] = files;
        manifest["wall_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
        std::ofstream out(dir / "manifest.json", std::ios::binary);
        if (out) out << manifest.dump(2) << "\n";
    };

    std::vector<PiecewiseField> discrete_fields;
    std::vector<FieldSnapshot> rho_fields;
    try {
        if (cfg.model_discrete) {
            const LatticeConfig lat = LatticeConfig::make({cfg.i_max}, cfg.k_max, cfg.r_star);
            DiscreteModel model(lat, params, alpha, rho0, bc);
            DiscreteState state = model.init();
            DiscreteRunPolicy policy;
            policy.positivity = cfg.positivity == "every-step"
                              ? DiscreteRunPolicy::Positivity::every_step
                              : DiscreteRunPolicy::Positivity::at_snapshots;
            DiscreteRunInfo info;
            std::vector<DiscreteState> states =
                model.run(state, cfg.t_final, snaps, &info, policy);
            if (final_extra) states.push_back(state);

            ordered_json sec;
            sec["i_max"] = cfg.i_max;
            sec["k_max"] = cfg.k_max;
            sec["q_star"] = lat.q_star;
            sec["dt"] = info.dt;
            sec["steps"] = info.steps;
            sec["min_q"] = info.min_q;
            sec["wall_seconds"] = info.wall_seconds;
            manifest["discrete"] = sec;

            for (std::size_t j = 0; j < states.size(); ++j) {
                discrete_fields.push_back(reconstruct_piecewise(model, states[j]));
                const PiecewiseField& pf = discrete_fields.back();
                FieldSnapshot cellf = to_cell_field(pf, "r");
                const std::string name = "discrete_r_" + labels[j] + ".dat";
                export_field(cellf, (dir / name).string());
                files.push_back(name);
                for (std::size_t m = 0; m < cfg.lineout_x.size(); ++m) {
                    const Lineout l = discrete_lineout(pf, cfg.lineout_x[m]);
                    const std::string lname =
                        "discrete_r_x" + std::to_string(m) + "_" + labels[j] + ".dat";
                    export_lineout(l, (dir / lname).string());
                    files.push_back(lname);
                }
            }
        }

        if (cfg.model_continuum) {
            const SolverGrid grid = SolverGrid::make(cfg.nx, cfg.nz);
            const HJParams hp =
                HJParams::make(params, cfg.flux_order(), cfg.cfl, cfg.flux_epsilon);
            HJSolver solver(grid, hp, alpha, rho0, bc);
            PotentialField field = solver.initial_field();
            HJSolver::RunInfo info;
            std::vector<PotentialField> states =
                solver.run(field, cfg.t_final, snaps, &info,
                           cfg.monotonicity == "warn" ? HJSolver::Monotonicity::warn
                                                      : HJSolver::Monotonicity::abort_run);
            if (final_extra) states.push_back(field);

            double min_rho = 0.0;
            for (std::size_t j = 0; j < states.size(); ++j) {
                const std::string plabel = "continuum_P_" + labels[j] + ".dat";
                export_field(potential_snapshot(states[j], grid, "P"), (dir / plabel).string());
                files.push_back(plabel);
                FieldSnapshot rho = solver.recover_rho(states[j]);
                for (double v : rho.values) min_rho = std::min(min_rho, v);
                const std::string rlabel = "continuum_rho_" + labels[j] + ".dat";
                export_field(rho, (dir / rlabel).string());
                files.push_back(rlabel);
                for (std::size_t m = 0; m < cfg.lineout_x.size(); ++m) {
                    const Lineout l = lineout(rho, cfg.lineout_x[m]);
                    const std::string lname =
                        "continuum_rho_x" + std::to_string(m) + "_" + labels[j] + ".dat";
                    export_lineout(l, (dir / lname).string());
                    files.push_back(lname);
                }
                rho_fields.push_back(std::move(rho));
            }

            ordered_json sec;
            sec["nx"] = cfg.nx;
            sec["nz"] = cfg.nz;
            sec["dt"] = info.dt;
            sec["steps"] = info.steps;
            sec["lambda_x"] = hp.lambda_x;
            sec["lambda_z"] = hp.lambda_z;
            sec["epsilon"] = solver.params().epsilon;
            sec["min_dp"] = info.min_dp;
            sec["max_dp_excess"] = info.max_dp_excess;
            sec["monotonicity_violations"] = info.monotonicity_violations;
            sec["min_rho"] = min_rho;
            sec["wall_seconds"] = info.wall_seconds;
            manifest["continuum"] = sec;
        }

        manifest["compared"] = cfg.model_discrete && cfg.model_continuum;
        manifest["comparisons"] = ordered_json::array();
        if (cfg.model_discrete && cfg.model_continuum) {
            const SolverGrid grid = SolverGrid::make(cfg.nx, cfg.nz);
            for (std::size_t j = 0; j < labels.size(); ++j) {
                long clamped = 0;
                FieldSnapshot resampled = resample_discrete(discrete_fields[j], grid, &clamped);
                const std::string rsname = "discrete_r_resampled_" + labels[j] + ".dat";
                export_field(resampled, (dir / rsname).string());
                files.push_back(rsname);
                auto [diff, report] = diff_fields(rho_fields[j], resampled);
                diff.name = "rho_minus_r";
                const std::string dname = "diff_rho_minus_r_" + labels[j] + ".dat";
                export_field(diff, (dir / dname).string());
                files.push_back(dname);

                ordered_json rep;
                rep["label"] = labels[j];
                rep["t"] = report.t;
                rep["l1"] = report.l1;
                rep["l2"] = report.l2;
                rep["linf"] = report.linf;
                if (report.norm_b_l1 > 0.0)
                    rep["rel_l1"] = report.l1 / report.norm_b_l1;
                else
                    rep["rel_l1"] = nullptr;
                rep["clamped_nodes"] = clamped;
                manifest["comparisons"].push_back(rep);
                const std::string repname = "report_" + labels[j] + ".json";
                std::ofstream rout(dir / repname, std::ios::binary);
                if (!rout) throw SimulationError("cannot write '" + repname + "'");
                rout << rep.dump(2) << "\n";
                files.push_back(repname);
            }
        }
    } catch (const SimulationError& e) {
        finalize(true, e.what());
        throw;
    }

    finalize(false, "");
    return manifest;
}

}  // namespace dataflow
