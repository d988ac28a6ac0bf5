#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lipft/equivalence.hpp"
#include "lipft/functionals.hpp"
#include "lipft/modulus.hpp"
#include "lipft/spaces.hpp"

namespace lipft {

// Parsed experiment configuration. Fields are optional so that a recipe can
// fill whatever the config file left unset; validation happens in
// validate_config once everything is merged.
struct SpaceConfig {
    std::string kind; // "euclidean" | "hyperbolic"
    int dim = 1;
};

struct ProfileConfig {
    std::string type; // gaussian | power-tail | h3-rational | h3-gaussian-bump |
                      // h2-gaussian | spectral-bump | zero
    double alpha = 0.5;
    double beta = 0.5;
    double center = 4.0;
    double width = 0.5;
};

struct ModulusConfig {
    std::string family; // power | power-log | power-log-log | tabulated
    std::optional<double> gamma;
    double lambda = 1.0;
    std::optional<double> k;
    double delta0 = 1.0;
    std::vector<std::pair<double, double>> samples;
};

struct ExperimentConfig {
    std::optional<SpaceConfig> space;
    std::optional<ProfileConfig> profile;
    std::optional<ModulusConfig> modulus;
    std::optional<double> t_max;
    std::optional<int> grid_J;
    std::optional<double> lambda_cutoff;
    std::optional<double> tol;
    std::string out_dir = ".";
    std::string recipe;

    double t_max_or() const { return t_max.value_or(0.5); }
    int J_or() const { return grid_J.value_or(20); }
    double tol_or() const { return tol.value_or(1e-10); }
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Fills unset fields from the named recipe; unknown names raise ConfigError.
void apply_recipe(ExperimentConfig& cfg, const std::string& name);

// Range checks from the schema contract (J in [8,40], positive tolerances,
// lambda cutoff at least 2/t_min when given).
void validate_config(const ExperimentConfig& cfg);

SpectralSpace make_space(const ExperimentConfig& cfg);
RadialProfile make_profile(const ExperimentConfig& cfg, const SpectralSpace& space);
Modulus make_modulus(const ExperimentConfig& cfg);

std::string format_sig17(double v);

std::string curve_csv(const FunctionalCurve& curve);
std::string equivalence_summary_csv(const EquivalenceReport& rep);
std::string equivalence_report_json(const EquivalenceReport& rep);
std::string modulus_report_json(const Modulus& m, const MOIndices& idx, const ZygmundReport& z0,
                                const ZygmundReport& zk, bool bary_stechkin,
                                const TailAssumptions& tail);
std::string modulus_grid_csv(const Modulus& m, const std::vector<double>& grid);

void write_file(const std::string& path, const std::string& content);

} // namespace lipft
