#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataflow/errors.hpp"
#include "dataflow/params.hpp"
#include "dataflow/profiles.hpp"

namespace dataflow {

// ---------------------------------------------------------------------------
// Experiment selection and the flat key = value configuration language.
// ---------------------------------------------------------------------------

enum class ScenarioKind { custom, ex1_agreement, ex2_eta, ex3_beta, ex4_slowdown, ex5_longtime };

inline std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::custom: return "custom";
        case ScenarioKind::ex1_agreement: return "ex1-agreement";
        case ScenarioKind::ex2_eta: return "ex2-eta";
        case ScenarioKind::ex3_beta: return "ex3-beta";
        case ScenarioKind::ex4_slowdown: return "ex4-slowdown";
        case ScenarioKind::ex5_longtime: return "ex5-longtime";
    }
    return "custom";
}

inline ScenarioKind scenario_from_string(const std::string& s) {
    if (s == "custom") return ScenarioKind::custom;
    if (s == "ex1-agreement") return ScenarioKind::ex1_agreement;
    if (s == "ex2-eta") return ScenarioKind::ex2_eta;
    if (s == "ex3-beta") return ScenarioKind::ex3_beta;
    if (s == "ex4-slowdown") return ScenarioKind::ex4_slowdown;
    if (s == "ex5-longtime") return ScenarioKind::ex5_longtime;
    throw ConfigError("unknown scenario '" + s + "' (expected custom, ex1-agreement, "
                      "ex2-eta, ex3-beta, ex4-slowdown, or ex5-longtime)");
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

inline std::string format_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace detail

// One key = value assignment with its source line (0 for programmatic input).
struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Syntax pass: split lines into entries, strip # comments, reject duplicate
// keys and malformed lines.  Semantic checks happen in build_config.
inline std::vector<ConfigEntry> parse_config_text(const std::string& text) {
    std::vector<ConfigEntry> entries;
    std::vector<std::string> issues;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = detail::trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            issues.push_back("line " + std::to_string(lineno) + ": expected key = value, got '"
                             + stripped + "'");
            continue;
        }
        ConfigEntry e;
        e.key = detail::trim(std::string_view(stripped).substr(0, eq));
        e.value = detail::trim(std::string_view(stripped).substr(eq + 1));
        e.line = lineno;
        if (e.key.empty()) {
            issues.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        for (const ConfigEntry& prev : entries)
            if (prev.key == e.key)
                issues.push_back("line " + std::to_string(lineno) + ": duplicate key '" + e.key
                                 + "' (first set on line " + std::to_string(prev.line) + ")");
        entries.push_back(std::move(e));
    }
    if (!issues.empty()) throw ConfigError(issues);
    return entries;
}

// ---------------------------------------------------------------------------
// Complete experiment description.  Profile fields keep their textual kind
// tokens so a config can be round-tripped; make_* builds the live objects.
// ---------------------------------------------------------------------------
struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::custom;
    bool model_discrete = true;
    bool model_continuum = true;

    double eta = 1.0;
    double beta = 1.0;
    double r_star = 1.0;

    std::string alpha_kind = "constant";
    double alpha_base = 1.0;
    double alpha_amplitude = 0.0;
    int alpha_harmonic = 1;

    std::string rho0_kind = "zero";
    double rho0_amplitude = 0.0;
    double rho0_z_cut = 1.0;

    std::string bc_kind = "zero";
    double bc_value = 0.0;

    int i_max = 100;
    int k_max = 100;
    int nx = 100;
    int nz = 100;

    std::string flux = "phi0";
    double flux_epsilon = 0.0;  // <= 0 lets the solver use its dx default
    double cfl = 0.6;

    double t_final = 0.5;
    std::vector<double> snapshots{0.1, 0.25, 0.5};
    std::vector<double> lineout_x{0.3};
    std::string outdir = "out";
    // The solver projects its rate into [0, alpha(x)], so the per-step bound
    // 0 <= dP <= dt alpha_max holds by construction and this check can only
    // trip on rounding noise; warn keeps stock runs going if it ever does.
    std::string monotonicity = "warn";        // warn | abort
    std::string positivity = "at-snapshots";  // at-snapshots | every-step

    // Bookkeeping, not part of config identity: which sweep parameters were
    // given explicitly (presets demand some) and whether the discrete
    // resolutions were chosen by hand (ex1 otherwise derives them from eta).
    bool eta_explicit = false;
    bool beta_explicit = false;
    bool i_max_explicit = false;
    bool k_max_explicit = false;

    bool operator==(const ScenarioConfig& o) const {
        return scenario == o.scenario && model_discrete == o.model_discrete
            && model_continuum == o.model_continuum && eta == o.eta && beta == o.beta
            && r_star == o.r_star && alpha_kind == o.alpha_kind && alpha_base == o.alpha_base
            && alpha_amplitude == o.alpha_amplitude && alpha_harmonic == o.alpha_harmonic
            && rho0_kind == o.rho0_kind && rho0_amplitude == o.rho0_amplitude
            && rho0_z_cut == o.rho0_z_cut && bc_kind == o.bc_kind && bc_value == o.bc_value
            && i_max == o.i_max && k_max == o.k_max && nx == o.nx && nz == o.nz
            && flux == o.flux && flux_epsilon == o.flux_epsilon && cfl == o.cfl
            && t_final == o.t_final && snapshots == o.snapshots && lineout_x == o.lineout_x
            && outdir == o.outdir && monotonicity == o.monotonicity
            && positivity == o.positivity;
    }

    int flux_order() const { return flux == "phi1" ? 1 : 0; }

    AlphaProfile make_alpha() const {
        if (alpha_kind == "constant") return AlphaProfile::constant(alpha_base);
        if (alpha_kind == "sine2") return AlphaProfile::sine_power(alpha_base, alpha_amplitude);
        if (alpha_kind == "sine6") return AlphaProfile::sine_power6(alpha_base, alpha_amplitude);
        if (alpha_kind == "notch") return AlphaProfile::notch(alpha_base, alpha_amplitude);
        if (alpha_kind == "cosine")
            return AlphaProfile::cosine(alpha_base, alpha_amplitude, alpha_harmonic);
        throw ConfigError("alpha.kind must be one of constant, sine2, sine6, notch, cosine "
                          "(got '" + alpha_kind + "')");
    }

    DensityProfile make_rho0() const {
        if (rho0_kind == "zero") return DensityProfile::zero();
        if (rho0_kind == "constant") return DensityProfile::constant(rho0_amplitude);
        if (rho0_kind == "indicator") return DensityProfile::indicator(rho0_amplitude, rho0_z_cut);
        if (rho0_kind == "sine6-band")
            return DensityProfile::sine6_band(rho0_amplitude, rho0_z_cut);
        throw ConfigError("rho0.kind must be one of zero, constant, indicator, sine6-band "
                          "(got '" + rho0_kind + "')");
    }

    BoundaryProfile make_bc() const {
        if (bc_kind == "zero") return BoundaryProfile::zero();
        if (bc_kind == "constant") return BoundaryProfile::constant(bc_value);
        throw ConfigError("bc.kind must be one of zero, constant (got '" + bc_kind + "')");
    }

    ModelParams make_params() const {
        return ModelParams::make1d(r_star, beta, eta, make_alpha());
    }

    // Every invariant violation, collected; empty means valid.
    std::vector<std::string> issues() const {
        std::vector<std::string> out;
        if (!(r_star > 0.0)) out.push_back("r_star must be positive (got "
                                           + detail::format_double(r_star) + ")");
        if (!(beta > 0.0) || beta > 1.0)
            out.push_back("beta must lie in (0, 1] (got " + detail::format_double(beta) + ")");
        if (!(eta > 0.0)) out.push_back("eta must be positive (got "
                                        + detail::format_double(eta) + ")");
        if (!(cfl > 0.0) || cfl > 0.6)
            out.push_back("cfl must lie in (0, 0.6] (got " + detail::format_double(cfl) + ")");
        if (!(t_final >= 0.0))
            out.push_back("t_final must be nonnegative (got "
                          + detail::format_double(t_final) + ")");
        if (!model_discrete && !model_continuum)
            out.push_back("models must select at least one of discrete, continuum");

        if (scenario == ScenarioKind::ex1_agreement && !eta_explicit)
            out.push_back("scenario ex1-agreement requires an explicit eta "
                          "(the study uses eta in {0.2, 1, 5}; pass eta = ...)");
        if (scenario == ScenarioKind::ex2_eta && !eta_explicit)
            out.push_back("scenario ex2-eta requires an explicit eta "
                          "(the sweep is not baked in; pass eta = ...)");
        if (scenario == ScenarioKind::ex3_beta && !beta_explicit)
            out.push_back("scenario ex3-beta requires an explicit beta "
                          "(the sweep is not baked in; pass beta = ...)");

        if (model_discrete) {
            if (i_max < 3) out.push_back("discrete.i_max must be >= 3 (got "
                                         + std::to_string(i_max) + ")");
            if (k_max < 1) out.push_back("discrete.k_max must be >= 1 (got "
                                         + std::to_string(k_max) + ")");
        }
        if (model_continuum) {
            if (nx < 7) out.push_back("grid.nx must be >= 7 (got " + std::to_string(nx) + ")");
            if (nz < 7) out.push_back("grid.nz must be >= 7 (got " + std::to_string(nz) + ")");
        }
        if (model_discrete && model_continuum && i_max >= 1 && eta > 0.0) {
            const double expect = eta * i_max;
            if (std::abs(expect - k_max) > 1e-9 * std::max(1.0, std::abs(expect)))
                out.push_back("eta consistency: k_max/i_max must equal eta when both models run "
                              "(eta = " + detail::format_double(eta) + ", i_max = "
                              + std::to_string(i_max) + " implies k_max = "
                              + detail::format_double(expect) + ", got "
                              + std::to_string(k_max) + ")");
        }

        for (std::size_t j = 0; j < snapshots.size(); ++j) {
            if (j > 0 && snapshots[j] < snapshots[j - 1]) {
                out.push_back("snapshots must be sorted ascending");
                break;
            }
        }
        for (double s : snapshots)
            if (!(s >= 0.0) || s > t_final) {
                out.push_back("snapshots must lie in [0, t_final = "
                              + detail::format_double(t_final) + "]");
                break;
            }
        for (double x : lineout_x)
            if (!(x >= 0.0) || x >= 1.0) {
                out.push_back("lineout_x values must lie in [0, 1)");
                break;
            }

        try { (void)make_alpha(); } catch (const ConfigError& e) { out.push_back(e.what()); }
        try { (void)make_rho0(); } catch (const ConfigError& e) { out.push_back(e.what()); }
        try { (void)make_bc(); } catch (const ConfigError& e) { out.push_back(e.what()); }
        if (rho0_kind != "zero" && !(rho0_amplitude >= 0.0))
            out.push_back("rho0.amplitude must be nonnegative");
        if ((rho0_kind == "indicator" || rho0_kind == "sine6-band")
            && (!(rho0_z_cut > 0.0) || rho0_z_cut > 1.0))
            out.push_back("rho0.z_cut must lie in (0, 1]");
        if (bc_kind == "constant" && !(bc_value >= 0.0))
            out.push_back("bc.value must be nonnegative");

        if (flux != "phi0" && flux != "phi1")
            out.push_back("flux.order must be phi0 or phi1 (got '" + flux + "')");
        if (!std::isfinite(flux_epsilon))
            out.push_back("flux.epsilon must be finite");
        if (monotonicity != "warn" && monotonicity != "abort")
            out.push_back("checks.monotonicity must be warn or abort (got '"
                          + monotonicity + "')");
        if (positivity != "at-snapshots" && positivity != "every-step")
            out.push_back("checks.positivity must be at-snapshots or every-step (got '"
                          + positivity + "')");
        if (outdir.empty()) out.push_back("outdir must not be empty");
        return out;
    }

    void validate() const {
        const std::vector<std::string> v = issues();
        if (!v.empty()) throw ConfigError(v);
    }
};

// Stock experiment defaults.  Sweep parameters (eta for ex1/ex2, beta for
// ex3) are intentionally left demanding an explicit value; ex1's discrete
// resolutions are derived from eta during finalize_config unless overridden.
inline ScenarioConfig preset(ScenarioKind kind) {
    if (kind == ScenarioKind::custom)
        throw ConfigError("preset: 'custom' has no preset; provide a full config");
    ScenarioConfig c;
    c.scenario = kind;
    c.r_star = 1.0;
    c.beta = 1.0;
    c.eta = 1.0;
    c.bc_kind = "zero";
    c.flux = "phi0";
    c.t_final = 0.5;
    c.snapshots = {0.1, 0.25, 0.5};
    c.lineout_x = {0.3};
    switch (kind) {
        case ScenarioKind::ex1_agreement:
            c.model_discrete = true;
            c.model_continuum = true;
            c.alpha_kind = "sine2";
            c.alpha_base = 1.0;
            c.alpha_amplitude = 0.4;
            c.rho0_kind = "sine6-band";
            c.rho0_amplitude = 1.5;
            c.rho0_z_cut = 0.5;
            c.nx = c.nz = 1000;
            break;
        case ScenarioKind::ex2_eta:
        case ScenarioKind::ex3_beta:
        case ScenarioKind::ex4_slowdown:
        case ScenarioKind::ex5_longtime:
            c.model_discrete = false;
            c.model_continuum = true;
            c.alpha_kind = kind == ScenarioKind::ex4_slowdown ? "notch"
                         : kind == ScenarioKind::ex5_longtime ? "cosine" : "sine6";
            c.alpha_base = 1.0;
            c.alpha_amplitude = kind == ScenarioKind::ex5_longtime ? 0.1 : 0.4;
            c.alpha_harmonic = kind == ScenarioKind::ex5_longtime ? 2 : 1;
            c.rho0_kind = "indicator";
            c.rho0_amplitude = 1.5;
            c.rho0_z_cut = 0.2;
            c.nx = c.nz = 100;
            c.i_max = c.k_max = 100;
            break;
        case ScenarioKind::custom:
            break;
    }
    return c;
}

namespace detail {

inline double parse_double_value(const std::string& key, const std::string& value, int line,
                                 std::vector<std::string>& issues, double fallback) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        issues.push_back("line " + std::to_string(line) + ": " + key
                         + " expects a finite number, got '" + value + "'");
        return fallback;
    }
    return v;
}

inline int parse_int_value(const std::string& key, const std::string& value, int line,
                           std::vector<std::string>& issues, int fallback) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0' || v < -1000000000L || v > 1000000000L) {
        issues.push_back("line " + std::to_string(line) + ": " + key
                         + " expects an integer, got '" + value + "'");
        return fallback;
    }
    return static_cast<int>(v);
}

inline std::vector<double> parse_list_value(const std::string& key, const std::string& value,
                                            int line, std::vector<std::string>& issues,
                                            const std::vector<double>& fallback) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(value);
    bool ok = true;
    while (std::getline(in, token, ',')) {
        const std::string t = trim(token);
        if (t.empty()) continue;
        const char* begin = t.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0' || !std::isfinite(v)) {
            issues.push_back("line " + std::to_string(line) + ": " + key
                             + " expects comma-separated numbers, got '" + value + "'");
            ok = false;
            break;
        }
        out.push_back(v);
    }
    return ok ? out : fallback;
}

}  // namespace detail

// Merge entries (last occurrence of a key wins) over the preset named by the
// `scenario` entry, resolve eta-dependent defaults, and validate everything,
// reporting all problems in one error.
inline ScenarioConfig build_config(const std::vector<ConfigEntry>& entries) {
    std::vector<std::string> issues;

    ScenarioKind kind = ScenarioKind::custom;
    for (const ConfigEntry& e : entries) {
        if (e.key != "scenario") continue;
        try {
            kind = scenario_from_string(e.value);
        } catch (const ConfigError& err) {
            issues.push_back("line " + std::to_string(e.line) + ": " + err.what());
        }
    }
    ScenarioConfig c = kind == ScenarioKind::custom ? ScenarioConfig{} : preset(kind);

    for (const ConfigEntry& e : entries) {
        const std::string& k = e.key;
        const std::string& v = e.value;
        const int ln = e.line;
        if (k == "scenario") {
            continue;  // consumed above
        } else if (k == "models") {
            if (v == "both" || v == "discrete, continuum" || v == "discrete,continuum") {
                c.model_discrete = true;
                c.model_continuum = true;
            } else if (v == "discrete") {
                c.model_discrete = true;
                c.model_continuum = false;
            } else if (v == "continuum") {
                c.model_discrete = false;
                c.model_continuum = true;
            } else {
                issues.push_back("line " + std::to_string(ln)
                                 + ": models must be discrete, continuum, or both (got '"
                                 + v + "')");
            }
        } else if (k == "eta") {
            c.eta = detail::parse_double_value(k, v, ln, issues, c.eta);
            c.eta_explicit = true;
        } else if (k == "beta") {
            c.beta = detail::parse_double_value(k, v, ln, issues, c.beta);
            c.beta_explicit = true;
        } else if (k == "r_star") {
            c.r_star = detail::parse_double_value(k, v, ln, issues, c.r_star);
        } else if (k == "alpha.kind") {
            c.alpha_kind = v;
        } else if (k == "alpha.base") {
            c.alpha_base = detail::parse_double_value(k, v, ln, issues, c.alpha_base);
        } else if (k == "alpha.amplitude") {
            c.alpha_amplitude = detail::parse_double_value(k, v, ln, issues, c.alpha_amplitude);
        } else if (k == "alpha.harmonic") {
            c.alpha_harmonic = detail::parse_int_value(k, v, ln, issues, c.alpha_harmonic);
        } else if (k == "rho0.kind") {
            c.rho0_kind = v;
        } else if (k == "rho0.amplitude") {
            c.rho0_amplitude = detail::parse_double_value(k, v, ln, issues, c.rho0_amplitude);
        } else if (k == "rho0.z_cut") {
            c.rho0_z_cut = detail::parse_double_value(k, v, ln, issues, c.rho0_z_cut);
        } else if (k == "bc.kind") {
            c.bc_kind = v;
        } else if (k == "bc.value") {
            c.bc_value = detail::parse_double_value(k, v, ln, issues, c.bc_value);
        } else if (k == "discrete.i_max") {
            c.i_max = detail::parse_int_value(k, v, ln, issues, c.i_max);
            c.i_max_explicit = true;
        } else if (k == "discrete.k_max") {
            c.k_max = detail::parse_int_value(k, v, ln, issues, c.k_max);
            c.k_max_explicit = true;
        } else if (k == "grid.nx") {
            c.nx = detail::parse_int_value(k, v, ln, issues, c.nx);
        } else if (k == "grid.nz") {
            c.nz = detail::parse_int_value(k, v, ln, issues, c.nz);
        } else if (k == "flux.order") {
            c.flux = v;
        } else if (k == "flux.epsilon") {
            c.flux_epsilon = detail::parse_double_value(k, v, ln, issues, c.flux_epsilon);
        } else if (k == "cfl") {
            c.cfl = detail::parse_double_value(k, v, ln, issues, c.cfl);
        } else if (k == "t_final") {
            c.t_final = detail::parse_double_value(k, v, ln, issues, c.t_final);
        } else if (k == "snapshots") {
            c.snapshots = detail::parse_list_value(k, v, ln, issues, c.snapshots);
        } else if (k == "lineout_x") {
            c.lineout_x = detail::parse_list_value(k, v, ln, issues, c.lineout_x);
        } else if (k == "outdir") {
            c.outdir = v;
        } else if (k == "checks.monotonicity") {
            c.monotonicity = v;
        } else if (k == "checks.positivity") {
            c.positivity = v;
        } else {
            issues.push_back("line " + std::to_string(e.line) + ": unknown key '" + k + "'");
        }
    }

    // ex1 couples the discrete resolutions to eta unless both were given.
    if (c.scenario == ScenarioKind::ex1_agreement
        && !(c.i_max_explicit && c.k_max_explicit) && c.eta_explicit) {
        struct Row { double eta; int i_max; int k_max; };
        static constexpr Row table[] = {{0.2, 1000, 200}, {1.0, 500, 500}, {5.0, 200, 1000}};
        bool found = false;
        for (const Row& row : table) {
            if (std::abs(c.eta - row.eta) <= 1e-12) {
                if (!c.i_max_explicit) c.i_max = row.i_max;
                if (!c.k_max_explicit) c.k_max = row.k_max;
                found = true;
                break;
            }
        }
        if (!found && c.model_discrete)
            issues.push_back("ex1-agreement with eta = " + detail::format_double(c.eta)
                             + " has no stock resolution; set discrete.i_max and "
                               "discrete.k_max explicitly");
    }

    for (const std::string& s : c.issues()) issues.push_back(s);
    if (!issues.empty()) throw ConfigError(issues);
    return c;
}

inline ScenarioConfig load_config_text(const std::string& text) {
    return build_config(parse_config_text(text));
}

inline ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_text(buf.str());
}

// Canonical text form; load_config_text(serialize(c)) == c.
inline std::string serialize(const ScenarioConfig& c) {
    using detail::format_double;
    std::string s;
    s += "scenario = " + to_string(c.scenario) + "\n";
    s += std::string("models = ")
       + (c.model_discrete && c.model_continuum ? "both"
          : c.model_discrete ? "discrete" : "continuum") + "\n";
    s += "eta = " + format_double(c.eta) + "\n";
    s += "beta = " + format_double(c.beta) + "\n";
    s += "r_star = " + format_double(c.r_star) + "\n";
    s += "alpha.kind = " + c.alpha_kind + "\n";
    s += "alpha.base = " + format_double(c.alpha_base) + "\n";
    s += "alpha.amplitude = " + format_double(c.alpha_amplitude) + "\n";
    s += "alpha.harmonic = " + std::to_string(c.alpha_harmonic) + "\n";
    s += "rho0.kind = " + c.rho0_kind + "\n";
    s += "rho0.amplitude = " + format_double(c.rho0_amplitude) + "\n";
    s += "rho0.z_cut = " + format_double(c.rho0_z_cut) + "\n";
    s += "bc.kind = " + c.bc_kind + "\n";
    s += "bc.value = " + format_double(c.bc_value) + "\n";
    s += "discrete.i_max = " + std::to_string(c.i_max) + "\n";
    s += "discrete.k_max = " + std::to_string(c.k_max) + "\n";
    s += "grid.nx = " + std::to_string(c.nx) + "\n";
    s += "grid.nz = " + std::to_string(c.nz) + "\n";
    s += "flux.order = " + c.flux + "\n";
    s += "flux.epsilon = " + format_double(c.flux_epsilon) + "\n";
    s += "cfl = " + format_double(c.cfl) + "\n";
    s += "t_final = " + format_double(c.t_final) + "\n";
    s += "snapshots = " + detail::format_list(c.snapshots) + "\n";
    s += "lineout_x = " + detail::format_list(c.lineout_x) + "\n";
    s += "outdir = " + c.outdir + "\n";
    s += "checks.monotonicity = " + c.monotonicity + "\n";
    s += "checks.positivity = " + c.positivity + "\n";
    return s;
}

}  // namespace dataflow
