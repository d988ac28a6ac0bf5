#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipft/equivalence.hpp"
#include "lipft/functionals.hpp"
#include "lipft/io.hpp"
#include "lipft/modulus.hpp"
#include "lipft/profiles.hpp"
#include "lipft/spaces.hpp"

namespace {

using namespace lipft;
using nlohmann::json;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string recipe;
    int grid_J = 0;
    double tol = 0.0;
    bool has_out = false, has_recipe = false, has_J = false, has_tol = false;
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--config", a.config_path, "JSON experiment config file");
    sub->add_option("--out", a.out_dir, "output directory (CSV/JSON artifacts)")
        ->envname("LIPFT_OUT");
    sub->add_option("--recipe", a.recipe, "named recipe: corollary-power, titchmarsh-n1, hyperbolic-h3")
        ->envname("LIPFT_RECIPE");
    sub->add_option("--grid-J", a.grid_J, "dyadic grid depth J (8..40)")->envname("LIPFT_GRID_J");
    sub->add_option("--tol", a.tol, "quadrature relative tolerance")->envname("LIPFT_TOL");
}

void finish_common(const CLI::App* sub, CommonArgs& a) {
    a.has_out = sub->count("--out") > 0;
    a.has_recipe = sub->count("--recipe") > 0;
    a.has_J = sub->count("--grid-J") > 0;
    a.has_tol = sub->count("--tol") > 0;
}

// file config, then env/flag overrides, then recipe defaults for the rest
ExperimentConfig resolve_config(const CommonArgs& a) {
    ExperimentConfig cfg;
    if (!a.config_path.empty()) cfg = load_config(a.config_path);
    if (a.has_out) cfg.out_dir = a.out_dir;
    if (a.has_recipe) cfg.recipe = a.recipe;
    if (a.has_J) cfg.grid_J = a.grid_J;
    if (a.has_tol) cfg.tol = a.tol;
    if (!cfg.recipe.empty()) apply_recipe(cfg, cfg.recipe);
    validate_config(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    return cfg;
}

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

int run_modulus(const CommonArgs& a) {
    auto cfg = resolve_config(a);
    const auto m = make_modulus(cfg);
    MOIndices idx;
    try {
        idx = mo_indices(m);
    } catch (const NonconvergenceError& e) {
        idx.m_lower = e.partial_lower();
        idx.M_upper = e.partial_upper();
    }
    const auto z0 = zygmund_check(m, ZygmundKind::Z0);
    const auto zk = zygmund_check(m, ZygmundKind::Zk);
    const bool bs = bary_stechkin(m);
    const auto tail = tail_assumptions_check(m);
    write_file(out_path(cfg, "modulus_report.json"),
               modulus_report_json(m, idx, z0, zk, bs, tail));
    write_file(out_path(cfg, "modulus_grid.csv"),
               modulus_grid_csv(m, default_zygmund_t_grid(m.delta0())));
    std::cout << "modulus report written to " << cfg.out_dir << "\n";
    return 0;
}

int run_plancherel(const CommonArgs& a) {
    auto cfg = resolve_config(a);
    const auto space = make_space(cfg);
    const auto p = make_profile(cfg, space);
    if (!p.physical) throw InapplicableError("plancherel check needs a physical profile");

    const bool powerlaw = p.tail == SpectralTailModel::PowerLaw;
    const double lam_max = powerlaw ? 60.0 : 40.0;
    const double tail_tol = powerlaw ? 1e-3 : 1e-6;
    const int n_nodes = 2049;
    std::vector<double> lam(n_nodes);
    for (int i = 0; i < n_nodes; ++i) lam[i] = lam_max * i / (n_nodes - 1);

    const auto fhat = spherical_transform(space, p, lam, 1e-11);
    double spec_norm = 0.0;
    {
        std::vector<double> g(fhat.size());
        for (std::size_t i = 0; i < fhat.size(); ++i)
            g[i] = fhat[i].second * fhat[i].second * space.plancherel_density(fhat[i].first);
        const double h = lam[1] - lam[0];
        double s = g.front() + g.back();
        for (std::size_t i = 1; i + 1 < g.size(); ++i) s += g[i] * (i % 2 == 1 ? 4.0 : 2.0);
        spec_norm = s * h / 3.0;
    }
    const double phys_norm = physical_l2_norm_sq(space, p);
    const double norm_rel = std::abs(spec_norm - phys_norm) / phys_norm;

    std::vector<double> ts;
    for (int i = 1; i <= 16; ++i) ts.push_back(0.125 * i);
    const auto back = inverse_transform(space, fhat, ts, tail_tol);
    double fmax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        fmax = std::max(fmax, std::abs(p.physical(ts[i])));
        dmax = std::max(dmax, std::abs(back[i].second - p.physical(ts[i])));
    }
    const double roundtrip_rel = dmax / fmax;

    json j = {{"space", space.name()},
              {"profile", p.name},
              {"norm_relative_error", norm_rel},
              {"roundtrip_relative_error", roundtrip_rel}};
    write_file(out_path(cfg, "plancherel_report.json"), j.dump(2) + "\n");
    std::cout << "norm rel err " << norm_rel << ", roundtrip rel err " << roundtrip_rel << "\n";
    return 0;
}

int run_functionals(const CommonArgs& a) {
    auto cfg = resolve_config(a);
    const auto space = make_space(cfg);
    const auto p = make_profile(cfg, space);
    const auto grid = dyadic_grid(cfg.t_max_or(), cfg.J_or());

    const auto L = lipschitz_curve(space, p, grid, cfg.tol_or());
    const auto T = tail_curve(space, p, grid);
    write_file(out_path(cfg, "lipschitz_curve.csv"), curve_csv(L));
    write_file(out_path(cfg, "tail_curve.csv"), curve_csv(T));

    json diags = json::array();
    for (std::size_t i = 0; i < grid.size(); i += 4) {
        const double t = grid[i];
        const auto js = j_split(space, p, t, cfg.tol_or());
        const auto ks = k_split(space, p, t);
        diags.push_back({{"t", t},
                         {"J1", js.J1},
                         {"J2", js.J2},
                         {"K1", ks.K1},
                         {"K2", ks.K2},
                         {"weighted_tail", weighted_tail(space, p, t)},
                         {"aux_ibp_residual", aux_ibp_residual(space, p, t)}});
    }
    write_file(out_path(cfg, "diagnostics.json"), diags.dump(2) + "\n");
    std::cout << "functional curves written to " << cfg.out_dir << "\n";
    return 0;
}

int run_equivalence(const CommonArgs& a) {
    auto cfg = resolve_config(a);
    const auto space = make_space(cfg);
    const auto p = make_profile(cfg, space);
    const auto m = make_modulus(cfg);
    const auto rep = equivalence_report(space, p, m, cfg.t_max_or(), cfg.J_or());

    const auto grid = dyadic_grid(cfg.t_max_or(), cfg.J_or());
    write_file(out_path(cfg, "lipschitz_curve.csv"),
               curve_csv(lipschitz_curve(space, p, grid)));
    write_file(out_path(cfg, "tail_curve.csv"), curve_csv(tail_curve(space, p, grid)));
    write_file(out_path(cfg, "equivalence_report.json"), equivalence_report_json(rep));
    write_file(out_path(cfg, "summary.csv"), equivalence_summary_csv(rep));

    std::ostringstream human;
    human << "space: " << space.name() << "\nprofile: " << p.name
          << "\nmodulus: " << m.describe() << "\nverdict: " << verdict_name(rep.verdict)
          << "\nforward ratio sup: " << rep.forward.ratio_sup
          << (rep.forward.stable ? " (stable)" : " (unstable)")
          << "\nbackward ratio sup: " << rep.backward.ratio_sup
          << (rep.backward.stable ? " (stable)" : " (unstable)")
          << "\nL slope: " << rep.L_fit.slope << " +- " << rep.L_fit.half_width
          << "\nT slope: " << rep.T_fit.slope << " +- " << rep.T_fit.half_width << "\n";
    write_file(out_path(cfg, "summary.txt"), human.str());
    std::cout << human.str();
    return rep.verdict == Verdict::EquivalentWithinConstants ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz / Fourier-tail equivalence toolkit for radial profiles.\n"
                 "Curve CSVs have columns: j, t, value, est_error, kind."};
    app.require_subcommand(1);

    CommonArgs am, ap, af, ae;
    auto* sm = app.add_subcommand("modulus", "modulus diagnostics: growth indices, integral conditions");
    add_common(sm, am);
    auto* sp = app.add_subcommand("plancherel", "transform round-trip and norm equality check");
    add_common(sp, ap);
    auto* sf = app.add_subcommand("functionals", "Lipschitz and tail curves with proof diagnostics");
    add_common(sf, af);
    auto* se = app.add_subcommand("equivalence", "two-sided equivalence report; exit 0 iff equivalent");
    add_common(se, ae);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sm->parsed()) {
            finish_common(sm, am);
            return run_modulus(am);
        }
        if (sp->parsed()) {
            finish_common(sp, ap);
            return run_plancherel(ap);
        }
        if (sf->parsed()) {
            finish_common(sf, af);
            return run_functionals(af);
        }
        finish_common(se, ae);
        return run_equivalence(ae);
    } catch (const lipft::Error& e) {
        std::cerr << e.code() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << "\n";
        return 3;
    }
}
