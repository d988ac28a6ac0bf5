#include "lipft/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lipft/profiles.hpp"

namespace lipft {

namespace {

using nlohmann::json;

[[noreturn]] void unknown_field(const std::string& path) {
    throw ConfigError("unknown config field '" + path + "'");
}

void expect_keys(const json& obj, const std::string& prefix,
                 std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) ok = true;
        if (!ok) unknown_field(prefix.empty() ? item.key() : prefix + "." + item.key());
    }
}

double need_number(const json& obj, const std::string& prefix, const char* key) {
    if (!obj.contains(key))
        throw ConfigError("missing config field '" + prefix + "." + key + "'");
    if (!obj[key].is_number())
        throw ConfigError("config field '" + prefix + "." + key + "' must be a number");
    return obj[key].get<double>();
}

SpaceConfig parse_space(const json& j) {
    expect_keys(j, "space", {"kind", "dim"});
    SpaceConfig s;
    if (!j.contains("kind")) throw ConfigError("missing config field 'space.kind'");
    s.kind = j["kind"].get<std::string>();
    s.dim = static_cast<int>(need_number(j, "space", "dim"));
    return s;
}

ProfileConfig parse_profile(const json& j) {
    expect_keys(j, "profile", {"type", "alpha", "beta", "center", "width"});
    ProfileConfig p;
    if (!j.contains("type")) throw ConfigError("missing config field 'profile.type'");
    p.type = j["type"].get<std::string>();
    if (j.contains("alpha")) p.alpha = j["alpha"].get<double>();
    if (j.contains("beta")) p.beta = j["beta"].get<double>();
    if (j.contains("center")) p.center = j["center"].get<double>();
    if (j.contains("width")) p.width = j["width"].get<double>();
    return p;
}

ModulusConfig parse_modulus(const json& j, const std::string& prefix) {
    expect_keys(j, prefix, {"family", "gamma", "lambda", "k", "delta0", "samples", "schema"});
    ModulusConfig m;
    if (!j.contains("family"))
        throw ConfigError("missing config field '" + prefix + ".family'");
    m.family = j["family"].get<std::string>();
    if (j.contains("gamma")) m.gamma = j["gamma"].get<double>();
    if (j.contains("lambda")) m.lambda = j["lambda"].get<double>();
    if (j.contains("k")) m.k = j["k"].get<double>();
    if (j.contains("delta0")) m.delta0 = j["delta0"].get<double>();
    if (j.contains("samples")) {
        for (const auto& row : j["samples"]) {
            if (!row.is_array() || row.size() != 2)
                throw ConfigError("config field '" + prefix + ".samples' must hold [t, w] pairs");
            m.samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
    }
    return m;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    ExperimentConfig cfg;
    // A bare modulus descriptor ({"family": ...}) is accepted as shorthand.
    if (j.contains("family")) {
        cfg.modulus = parse_modulus(j, "modulus");
        return cfg;
    }

    expect_keys(j, "",
                {"schema", "space", "profile", "modulus", "grid", "out", "recipe"});
    if (j.contains("schema") && j["schema"].get<int>() != 1)
        throw ConfigError("unsupported config schema version");
    if (j.contains("space")) cfg.space = parse_space(j["space"]);
    if (j.contains("profile")) cfg.profile = parse_profile(j["profile"]);
    if (j.contains("modulus")) cfg.modulus = parse_modulus(j["modulus"], "modulus");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        expect_keys(g, "grid", {"t_max", "J", "lambda_cutoff", "tol"});
        if (g.contains("t_max")) cfg.t_max = g["t_max"].get<double>();
        if (g.contains("J")) cfg.grid_J = g["J"].get<int>();
        if (g.contains("lambda_cutoff")) cfg.lambda_cutoff = g["lambda_cutoff"].get<double>();
        if (g.contains("tol")) cfg.tol = g["tol"].get<double>();
    }
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("recipe")) cfg.recipe = j["recipe"].get<std::string>();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_recipe(ExperimentConfig& cfg, const std::string& name) {
    auto fill_space = [&](const std::string& kind, int dim) {
        if (!cfg.space) cfg.space = SpaceConfig{kind, dim};
    };
    auto fill_profile = [&](const std::string& type, double alpha) {
        if (!cfg.profile) {
            ProfileConfig p;
            p.type = type;
            p.alpha = alpha;
            cfg.profile = p;
        }
    };
    auto fill_modulus = [&](double gamma) {
        if (!cfg.modulus) {
            ModulusConfig m;
            m.family = "power";
            m.gamma = gamma;
            m.k = 2.0;
            cfg.modulus = m;
        }
    };
    if (name == "titchmarsh-n1") {
        fill_space("euclidean", 1);
        fill_profile("power-tail", 0.5);
        fill_modulus(cfg.profile->alpha);
    } else if (name == "corollary-power") {
        fill_space("euclidean", 3);
        fill_profile("power-tail", 0.5);
        fill_modulus(cfg.profile->alpha);
    } else if (name == "hyperbolic-h3") {
        fill_space("hyperbolic", 3);
        fill_profile("power-tail", 1.0);
        fill_modulus(cfg.profile->alpha);
    } else {
        throw ConfigError("unknown recipe '" + name + "'");
    }
    if (!cfg.t_max) cfg.t_max = 0.5;
    if (!cfg.grid_J) cfg.grid_J = 20;
    if (!cfg.tol) cfg.tol = 1e-10;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("grid.tol must be positive");
    if (cfg.t_max && !(*cfg.t_max > 0.0)) throw ConfigError("grid.t_max must be positive");
    if (cfg.grid_J && (*cfg.grid_J < 8 || *cfg.grid_J > 40))
        throw ConfigError("grid.J must lie in [8, 40]");
    if (cfg.lambda_cutoff) {
        const double t_min = cfg.t_max_or() * std::ldexp(1.0, -cfg.J_or());
        if (*cfg.lambda_cutoff < 2.0 / t_min)
            throw ConfigError("grid.lambda_cutoff must be at least 2/t_min");
    }
}

SpectralSpace make_space(const ExperimentConfig& cfg) {
    if (!cfg.space) throw ConfigError("missing config field 'space'");
    if (cfg.space->kind == "euclidean") return SpectralSpace::euclidean(cfg.space->dim);
    if (cfg.space->kind == "hyperbolic") return SpectralSpace::hyperbolic(cfg.space->dim);
    throw ConfigError("space.kind must be 'euclidean' or 'hyperbolic'");
}

RadialProfile make_profile(const ExperimentConfig& cfg, const SpectralSpace& space) {
    if (!cfg.profile) throw ConfigError("missing config field 'profile'");
    const auto& p = *cfg.profile;
    if (p.type == "gaussian") return euclidean_gaussian(space, p.beta);
    if (p.type == "power-tail") return power_tail_profile(p.alpha, space.dim());
    if (p.type == "h3-rational") return h3_rational(space);
    if (p.type == "h3-gaussian-bump") return h3_gaussian_bump(space);
    if (p.type == "h2-gaussian") return h2_gaussian(p.beta);
    if (p.type == "spectral-bump") return spectral_bump(p.center, p.width);
    if (p.type == "zero") return zero_profile();
    throw ConfigError("unknown profile.type '" + p.type + "'");
}

Modulus make_modulus(const ExperimentConfig& cfg) {
    if (!cfg.modulus) throw ConfigError("missing config field 'modulus'");
    const auto& m = *cfg.modulus;
    if (!m.k) throw ConfigError("missing config field 'modulus.k'");
    if (m.family == "tabulated") {
        if (m.samples.empty()) throw ConfigError("missing config field 'modulus.samples'");
        return Modulus::tabulated(m.samples, *m.k, m.delta0);
    }
    if (!m.gamma) throw ConfigError("missing config field 'modulus.gamma'");
    if (m.family == "power") return Modulus::power(*m.gamma, *m.k, m.delta0);
    if (m.family == "power-log") return Modulus::power_log(*m.gamma, m.lambda, *m.k, m.delta0);
    if (m.family == "power-log-log")
        return Modulus::power_log_log(*m.gamma, m.lambda, *m.k, m.delta0);
    throw ConfigError("unknown modulus.family '" + m.family + "'");
}

std::string format_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string curve_csv(const FunctionalCurve& curve) {
    std::ostringstream out;
    const char* kind = curve.kind == CurveKind::Lipschitz ? "Lipschitz"
                       : curve.kind == CurveKind::Tail    ? "Tail"
                                                          : "Diagnostic";
    out << "j,t,value,est_error,kind\n";
    for (std::size_t i = 0; i < curve.t_values.size(); ++i) {
        out << i << ',' << format_sig17(curve.t_values[i]) << ','
            << format_sig17(curve.values[i]) << ',' << format_sig17(curve.quadrature_errors[i])
            << ',' << kind << '\n';
    }
    return out.str();
}

namespace {

json ratio_json(const RatioReport& r) {
    return {{"ratio_sup", r.ratio_sup},
            {"ratio_sup_refined", r.ratio_sup_refined},
            {"stable", r.stable},
            {"worst_t", r.worst_t}};
}

const char* tristate_name(Tristate t) {
    switch (t) {
        case Tristate::True: return "holds";
        case Tristate::False: return "fails";
        default: return "unknown";
    }
}

} // namespace

std::string equivalence_summary_csv(const EquivalenceReport& rep) {
    std::ostringstream out;
    out << "verdict,forward_ratio_sup,backward_ratio_sup,L_slope,T_slope\n"
        << verdict_name(rep.verdict) << ',' << format_sig17(rep.forward.ratio_sup) << ','
        << format_sig17(rep.backward.ratio_sup) << ',' << format_sig17(rep.L_fit.slope) << ','
        << format_sig17(rep.T_fit.slope) << '\n';
    return out.str();
}

std::string equivalence_report_json(const EquivalenceReport& rep) {
    json j = {
        {"verdict", verdict_name(rep.verdict)},
        {"t_max", rep.t_max},
        {"J", rep.J},
        {"direction_forward", ratio_json(rep.forward)},
        {"direction_backward", ratio_json(rep.backward)},
        {"hypothesis_audit",
         {{"order_ok", rep.audit.order_ok},
          {"z0", tristate_name(rep.audit.z0)},
          {"zk", tristate_name(rep.audit.zk)},
          {"tail_ok", rep.audit.tail_ok},
          {"side_condition", rep.audit.side_condition},
          {"side_constant", rep.audit.side_constant}}},
        {"fitted_exponents",
         {{"L_slope", rep.L_fit.slope},
          {"L_half_width", rep.L_fit.half_width},
          {"T_slope", rep.T_fit.slope},
          {"T_half_width", rep.T_fit.half_width}}},
    };
    return j.dump(2) + "\n";
}

std::string modulus_report_json(const Modulus& m, const MOIndices& idx, const ZygmundReport& z0,
                                const ZygmundReport& zk, bool bary_stechkin,
                                const TailAssumptions& tail) {
    json j = {
        {"modulus", m.describe()},
        {"order_k", m.order_k()},
        {"delta0", m.delta0()},
        {"mo_indices", {{"m_lower", idx.m_lower}, {"M_upper", idx.M_upper}}},
        {"zygmund",
         {{"z0", {{"holds", tristate_name(z0.holds)}, {"constant", z0.constant}}},
          {"zk", {{"holds", tristate_name(zk.holds)}, {"constant", zk.constant}}}}},
        {"bary_stechkin", bary_stechkin},
        {"tail_assumptions", {{"ok", tail.ok}, {"integral", tail.integral}}},
    };
    return j.dump(2) + "\n";
}

std::string modulus_grid_csv(const Modulus& m, const std::vector<double>& grid) {
    std::ostringstream out;
    out << "t,omega\n";
    for (double t : grid) out << format_sig17(t) << ',' << format_sig17(m.eval(t)) << '\n';
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << content;
}

} // namespace lipft
