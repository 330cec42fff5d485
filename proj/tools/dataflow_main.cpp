// Command-line front end: scenario runs, preset listing, post-hoc field
// comparison, and grid-refinement studies.
//
// Exit codes: 0 success, 1 configuration error, 2 simulation failure,
// 3 acceptance-check failure (compare/convergence with --assert).

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "dataflow/dataflow.hpp"

namespace {

using namespace dataflow;

std::vector<ConfigEntry> entries_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void append_set_entries(const std::vector<std::string>& sets, std::vector<ConfigEntry>& out) {
    for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + s + "'");
        ConfigEntry e;
        e.key = detail::trim(std::string_view(s).substr(0, eq));
        e.value = detail::trim(std::string_view(s).substr(eq + 1));
        out.push_back(std::move(e));
    }
}

// Options shared by `run` and `convergence`: config file, preset, generic
// overrides, and flag mirrors of the common scenario fields.
struct ScenarioCli {
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> sets;

    std::string models, flux_order, monotonicity, positivity, snapshots, lineout_x, outdir;
    double eta = 0, beta = 0, r_star = 0, t_final = 0, cfl = 0, flux_epsilon = 0;
    int i_max = 0, k_max = 0, nx = 0, nz = 0;

    struct Mirror {
        std::string key;
        CLI::Option* option;
        std::function<std::string()> format;
    };
    std::vector<Mirror> mirrors;

    void attach(CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "Config file (key = value lines)");
        cmd->add_option("-p,--preset", preset_name,
                        "Start from a named preset (see preset-list)");
        cmd->add_option("--set", sets, "Override any config key (key=value); repeatable");

        const auto mirror = [&](std::string key, CLI::Option* opt,
                                std::function<std::string()> fmt) {
            mirrors.push_back({std::move(key), opt, std::move(fmt)});
        };
        mirror("models", cmd->add_option("--models", models, "discrete, continuum, or both"),
               [this] { return models; });
        mirror("eta", cmd->add_option("--eta", eta, "Stage/processor ratio k_max/i_max"),
               [this] { return detail::format_double(eta); });
        mirror("beta", cmd->add_option("--beta", beta, "Throttle threshold fraction in (0,1]"),
               [this] { return detail::format_double(beta); });
        mirror("r_star", cmd->add_option("--r-star", r_star, "Self-throttle density scale"),
               [this] { return detail::format_double(r_star); });
        mirror("t_final", cmd->add_option("--t-final", t_final, "Final time"),
               [this] { return detail::format_double(t_final); });
        mirror("cfl", cmd->add_option("--cfl", cfl, "CFL number in (0, 0.6]"),
               [this] { return detail::format_double(cfl); });
        mirror("discrete.i_max",
               cmd->add_option("--i-max", i_max, "Processors (discrete model)"),
               [this] { return std::to_string(i_max); });
        mirror("discrete.k_max",
               cmd->add_option("--k-max", k_max, "Stages per processor (discrete model)"),
               [this] { return std::to_string(k_max); });
        mirror("grid.nx", cmd->add_option("--nx", nx, "Continuum grid columns"),
               [this] { return std::to_string(nx); });
        mirror("grid.nz", cmd->add_option("--nz", nz, "Continuum grid rows minus one"),
               [this] { return std::to_string(nz); });
        mirror("flux.order", cmd->add_option("--flux-order", flux_order, "phi0 or phi1"),
               [this] { return flux_order; });
        mirror("flux.epsilon",
               cmd->add_option("--flux-epsilon", flux_epsilon,
                               "Correction scale for phi1 (<= 0: use dx)"),
               [this] { return detail::format_double(flux_epsilon); });
        mirror("snapshots",
               cmd->add_option("--snapshots", snapshots, "Comma-separated snapshot times"),
               [this] { return snapshots; });
        mirror("lineout_x",
               cmd->add_option("--lineout-x", lineout_x,
                               "Comma-separated line-out abscissas"),
               [this] { return lineout_x; });
        mirror("outdir", cmd->add_option("-o,--outdir", outdir, "Output directory"),
               [this] { return outdir; });
        mirror("checks.monotonicity",
               cmd->add_option("--monotonicity", monotonicity,
                               "Per-step potential check: warn or abort"),
               [this] { return monotonicity; });
        mirror("checks.positivity",
               cmd->add_option("--positivity", positivity,
                               "Discrete positivity check: at-snapshots or every-step"),
               [this] { return positivity; });
    }

    // Precedence: preset < config file < --set < dedicated flags.
    ScenarioConfig build() const {
        std::vector<ConfigEntry> entries;
        if (!preset_name.empty()) entries.push_back({"scenario", preset_name, 0});
        if (!config_path.empty())
            for (ConfigEntry& e : entries_from_file(config_path)) entries.push_back(std::move(e));
        append_set_entries(sets, entries);
        for (const Mirror& m : mirrors) {
            if (!m.option->count()) continue;
            entries.push_back({m.key, m.format(), 0});
        }
        return build_config(entries);
    }
};

int do_run(const ScenarioCli& cli) {
    const ScenarioConfig cfg = cli.build();
    const ordered_json manifest = run_scenario(cfg);
    std::cout << "scenario " << manifest["scenario"].get<std::string>() << " -> "
              << cfg.outdir << "\n";
    if (manifest.contains("discrete")) {
        const auto& d = manifest["discrete"];
        std::cout << "  discrete: " << d["i_max"] << " x " << d["k_max"] << ", dt "
                  << d["dt"] << ", " << d["steps"] << " steps, min q " << d["min_q"] << "\n";
    }
    if (manifest.contains("continuum")) {
        const auto& c = manifest["continuum"];
        std::cout << "  continuum: " << c["nx"] << " x " << c["nz"] << ", dt " << c["dt"]
                  << ", " << c["steps"] << " steps, min rho " << c["min_rho"] << "\n";
        if (c["monotonicity_violations"].get<long>() > 0)
            std::cout << "  warning: " << c["monotonicity_violations"]
                      << " step(s) violated the potential monotonicity tolerance\n";
    }
    for (const auto& rep : manifest["comparisons"])
        std::cout << "  " << rep["label"].get<std::string>() << " t=" << rep["t"]
                  << ": l1 " << rep["l1"] << ", linf " << rep["linf"] << ", rel_l1 "
                  << rep["rel_l1"] << "\n";
    std::cout << "  " << manifest["outputs"].size() << " files, manifest.json written\n";
    return 0;
}

int do_preset_list() {
    struct Row {
        const char* name;
        const char* summary;
    };
    static constexpr Row rows[] = {
        {"ex1-agreement",
         "discrete vs continuum agreement; banded sine^6 initial load, alpha = 1 - 0.4 sin^2(pi x); "
         "requires eta (0.2, 1, or 5 select the stock resolutions)"},
        {"ex2-eta", "continuum eta sweep; step initial load below z = 0.2, alpha = 1 - 0.4 sin^6(pi x); "
                    "requires eta"},
        {"ex3-beta", "continuum beta sweep; same profiles as ex2-eta at eta = 1; requires beta"},
        {"ex4-slowdown", "localized notch slowdown in alpha around x = 0.5; same load as ex2-eta"},
        {"ex5-longtime", "small alpha variation 1 + 0.1 cos(4 pi x); same load as ex2-eta"},
    };
    for (const Row& r : rows) {
        std::cout << r.name << "\n    " << r.summary << "\n";
        const ScenarioConfig c = preset(scenario_from_string(r.name));
        std::cout << "    defaults: models "
                  << (c.model_discrete && c.model_continuum ? "both"
                      : c.model_discrete ? "discrete" : "continuum")
                  << ", grid " << c.nx << "x" << c.nz << ", t_final "
                  << detail::format_double(c.t_final) << ", snapshots "
                  << detail::format_list(c.snapshots) << "\n";
    }
    return 0;
}

int do_compare(const std::string& path_a, const std::string& path_b, const std::string& norm,
               bool has_tol, double tol) {
    const FieldSnapshot a = read_field(path_a);
    const FieldSnapshot b = read_field(path_b);
    auto [diff, rep] = diff_fields(a, b);
    (void)diff;
    std::printf("a: %s (t = %.17g, %d x %d)\n", a.name.c_str(), a.t, a.nx, a.nz);
    std::printf("b: %s (t = %.17g, %d x %d)\n", b.name.c_str(), b.t, b.nx, b.nz);
    std::printf("l1   = %.17g\nl2   = %.17g\nlinf = %.17g\n", rep.l1, rep.l2, rep.linf);
    double rel = 0.0;
    const bool have_rel = rep.norm_b_l1 > 0.0;
    if (have_rel) {
        rel = rep.l1 / rep.norm_b_l1;
        std::printf("rel_l1 (vs b) = %.17g\n", rel);
    }
    if (!has_tol) return 0;
    double measured = rep.l1;
    if (norm == "l2") measured = rep.l2;
    else if (norm == "linf") measured = rep.linf;
    else if (norm == "rel-l1") {
        if (!have_rel) {
            std::cerr << "compare: rel-l1 undefined (field b has zero L1 norm)\n";
            return 3;
        }
        measured = rel;
    }
    if (measured <= tol) {
        std::printf("ASSERT PASS: %s = %.17g <= %.17g\n", norm.c_str(), measured, tol);
        return 0;
    }
    std::printf("ASSERT FAIL: %s = %.17g > %.17g\n", norm.c_str(), measured, tol);
    return 3;
}

std::vector<std::pair<int, int>> parse_ladder(const std::string& text) {
    std::vector<std::pair<int, int>> ladder;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        const std::string t = detail::trim(token);
        if (t.empty()) continue;
        const auto x = t.find('x');
        int im = 0, km = 0;
        bool ok = x != std::string::npos;
        if (ok) {
            try {
                im = std::stoi(t.substr(0, x));
                km = std::stoi(t.substr(x + 1));
            } catch (const std::exception&) {
                ok = false;
            }
        }
        if (!ok)
            throw ConfigError("--ladder expects comma-separated i_maxxk_max pairs "
                              "like 200x40,500x100; got '" + t + "'");
        ladder.emplace_back(im, km);
    }
    if (ladder.empty()) throw ConfigError("--ladder is empty");
    return ladder;
}

int do_convergence(const ScenarioCli& cli, const std::string& ladder_text, bool assert_trend) {
    const ScenarioConfig cfg = cli.build();
    const std::vector<std::pair<int, int>> ladder = parse_ladder(ladder_text);
    const RefinementResult res = refinement_study(cfg, ladder);
    std::printf("%8s %8s %14s %14s %14s %14s\n", "i_max", "k_max", "l1", "l2", "linf",
                "rel_l1");
    for (const RefinementRung& r : res.rungs)
        std::printf("%8d %8d %14.6e %14.6e %14.6e %14.6e\n", r.i_max, r.k_max, r.report.l1,
                    r.report.l2, r.report.linf, r.rel_l1);
    std::printf("finest-vs-coarsest L1 improvement: %s\n", res.l1_improves ? "yes" : "no");
    std::printf("monotone decrease across rungs:    %s\n", res.monotone ? "yes" : "no");
    if (assert_trend && !res.l1_improves) {
        std::printf("ASSERT FAIL: L1 at the finest rung is not below the coarsest rung\n");
        return 3;
    }
    if (assert_trend) std::printf("ASSERT PASS\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level data-flow model: lattice simulator, Hamilton-Jacobi continuum "
                 "limit, and comparison harness"};
    app.require_subcommand(1);

    auto* cmd_run = app.add_subcommand("run", "Run a scenario and export its fields");
    ScenarioCli run_cli;
    run_cli.attach(cmd_run);

    app.add_subcommand("preset-list", "List the built-in experiment presets");

    auto* cmd_cmp = app.add_subcommand("compare", "Compare two exported field files");
    std::string cmp_a, cmp_b, cmp_norm = "l1";
    double cmp_tol = 0.0;
    cmd_cmp->add_option("a", cmp_a, "First field file")->required();
    cmd_cmp->add_option("b", cmp_b, "Second field file")->required();
    auto* cmp_assert = cmd_cmp->add_option("--assert", cmp_tol,
                                           "Fail (exit 3) when the chosen norm exceeds this");
    cmd_cmp->add_option("--norm", cmp_norm, "Norm for --assert: l1, l2, linf, or rel-l1")
        ->check(CLI::IsMember({"l1", "l2", "linf", "rel-l1"}));

    auto* cmd_conv = app.add_subcommand("convergence", "Discrete-vs-continuum refinement study");
    ScenarioCli conv_cli;
    conv_cli.attach(cmd_conv);
    std::string ladder_text;
    bool conv_assert = false;
    cmd_conv->add_option("--ladder", ladder_text,
                         "Comma-separated i_maxxk_max rungs, coarsest first (e.g. 200x40,500x100)")
        ->required();
    cmd_conv->add_flag("--assert", conv_assert,
                       "Fail (exit 3) unless the finest rung improves on the coarsest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (cmd_run->parsed()) return do_run(run_cli);
        if (app.get_subcommand("preset-list")->parsed()) return do_preset_list();
        if (cmd_cmp->parsed())
            return do_compare(cmp_a, cmp_b, cmp_norm, cmp_assert->count() > 0, cmp_tol);
        if (cmd_conv->parsed()) return do_convergence(conv_cli, ladder_text, conv_assert);
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
