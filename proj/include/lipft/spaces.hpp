#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lipft/errors.hpp"

namespace lipft {

enum class SpaceKind { Euclidean, Hyperbolic };

// Rank-1 spectral backend: the Euclidean space R^n or the real hyperbolic
// space H^n (n = 2, 3). Exposes the spherical function phi_lambda(t), the
// Plancherel density and the radial area element. Instances are immutable;
// the Plancherel normalization is fixed once per backend by a numerical
// round-trip calibration on a reference profile and cached.
class SpectralSpace {
public:
    static SpectralSpace euclidean(int n);
    static SpectralSpace hyperbolic(int n);

    SpaceKind kind() const { return kind_; }
    int dim() const { return n_; }
    double rho() const { return rho_; }
    double plancherel_normalization() const { return norm_; }
    double sphere_area() const { return sphere_area_; }

    double phi(double lambda, double t) const;
    // 1 - phi computed without cancellation; the workhorse of the Lipschitz
    // functionals and the sharp Lemma-type bounds.
    double one_minus_phi(double lambda, double t) const;

    double density_base(double lambda) const;          // lambda^{n-1}, lambda^2, lambda tanh(pi lambda)
    double plancherel_density(double lambda) const { return norm_ * density_base(lambda); }
    double area_element(double t) const;

    std::string name() const;

private:
    SpectralSpace(SpaceKind k, int n);

    SpaceKind kind_;
    int n_;
    double rho_;
    double sphere_area_;
    double norm_ = 1.0;
};

enum class AnalyticSide { Physical, Spectral, Both };

enum class SpectralTailModel { RapidDecay, PowerLaw };

// A radial test function given by its physical profile f(t) and/or the
// spectral energy profile H(lambda), with metadata describing which side is
// analytic ground truth and how the spectral side decays (needed to pick
// truncation cutoffs with an analytic tail bound).
struct RadialProfile {
    std::string name;
    std::function<double(double)> physical;       // f(t), may be empty
    std::function<double(double)> spectral;       // H(lambda) >= 0, may be empty
    std::function<double(double)> spectral_amplitude; // fhat(lambda) when analytic, may be empty
    AnalyticSide analytic_side = AnalyticSide::Physical;
    double support_min = 0.0;                     // H vanishes below this
    SpectralTailModel tail = SpectralTailModel::RapidDecay;
    double tail_exponent = 0.0;                   // H = tail_coeff * l^{-p} for l >= tail_from
    double tail_coeff = 0.0;
    double tail_from = 1.0;
    double phys_truncation = 0.0;                 // 0 = determined by decay scan
    double spectral_scale = 0.0;                  // smallest spectral feature width (0 = broad)
};

std::vector<std::pair<double, double>> spherical_transform(const SpectralSpace& space,
                                                           const RadialProfile& p,
                                                           const std::vector<double>& lambda_grid,
                                                           double rel_tol = 1e-10);

std::vector<std::pair<double, double>> inverse_transform(
    const SpectralSpace& space, const std::vector<std::pair<double, double>>& spectral,
    const std::vector<double>& t_grid, double tail_tol = 1e-8);

std::vector<std::pair<double, double>> translate_spectral(
    const SpectralSpace& space, const std::vector<std::pair<double, double>>& H_values, double t);

double spherical_mean_direct(const SpectralSpace& space, const RadialProfile& p, double x_norm,
                             double t, double rel_tol = 1e-12);

// S^t f(x) - f(x) with the difference taken inside the sphere average, so the
// result keeps full relative accuracy even when it is many orders below f.
double spherical_mean_deviation(const SpectralSpace& space, const RadialProfile& p, double x_norm,
                                double t, double rel_tol = 1e-12);

struct LemmaEstimates {
    double max_abs_phi = 0.0;
    double worst_quadratic_ratio = 0.0; // sup of (1-phi)/(t^2 (lambda^2 + rho^2))
    double min_gap_constant = 0.0;      // inf of 1-phi over lambda >= 1/t
};

LemmaEstimates lemma_estimates(const SpectralSpace& space, const std::vector<double>& lambda_grid,
                               const std::vector<double>& t_grid);

// || f ||_{L^2}^2 over the physical side: int f(t)^2 area_element(t) dt.
double physical_l2_norm_sq(const SpectralSpace& space, const RadialProfile& p,
                           double rel_tol = 1e-12);

// Truncation radius T with |f(t)| * area(t) negligible beyond; throws
// DecayError when no such radius is found.
double physical_truncation_radius(const SpectralSpace& space, const RadialProfile& p,
                                  double tol = 1e-15);

// The direct angular integral representation of the H^2 spherical
// function (periodic trapezoid with the given node count). Kept as an
// independent route; the production phi() uses the cosine-kernel integral.
double phi_h2_angular(double lambda, double t, int nodes = 256);

} // namespace lipft
