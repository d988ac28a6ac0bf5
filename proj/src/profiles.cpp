#include "lipft/profiles.hpp"

#include <cmath>

namespace lipft {

namespace {
constexpr double kPi = 3.14159265358979323846;

double t_over_sinh(double t) { return t == 0.0 ? 1.0 : t / std::sinh(t); }
} // namespace

RadialProfile euclidean_gaussian(const SpectralSpace& space, double beta) {
    if (space.kind() != SpaceKind::Euclidean) throw ParameterError("needs a Euclidean backend");
    const int n = space.dim();
    const double cP = space.plancherel_normalization();
    RadialProfile p;
    p.name = "gaussian-n" + std::to_string(n) + "-beta" + std::to_string(beta);
    p.physical = [beta](double t) { return std::exp(-beta * t * t); };
    p.spectral_amplitude = [beta, n](double l) {
        return std::pow(kPi / beta, 0.5 * n) * std::exp(-l * l / (4.0 * beta));
    };
    p.spectral = [beta, n, cP](double l) {
        const double a = std::pow(kPi / beta, 0.5 * n) * std::exp(-l * l / (4.0 * beta));
        return cP * a * a;
    };
    p.analytic_side = AnalyticSide::Both;
    p.tail = SpectralTailModel::RapidDecay;
    return p;
}

RadialProfile h3_rational(const SpectralSpace& space) {
    if (space.kind() != SpaceKind::Hyperbolic || space.dim() != 3)
        throw ParameterError("needs the H^3 backend");
    const double cP = space.plancherel_normalization();
    RadialProfile p;
    p.name = "h3-rational";
    p.physical = [](double t) { return std::exp(-t) * t_over_sinh(t); };
    p.spectral_amplitude = [](double l) {
        const double d = 1.0 + l * l;
        return 8.0 * kPi / (d * d);
    };
    p.spectral = [cP](double l) {
        const double d = 1.0 + l * l;
        return cP * 64.0 * kPi * kPi / (d * d * d * d);
    };
    p.analytic_side = AnalyticSide::Both;
    p.tail = SpectralTailModel::PowerLaw;
    p.tail_exponent = 8.0;
    p.tail_coeff = cP * 64.0 * kPi * kPi;
    p.tail_from = 1.0;
    return p;
}

RadialProfile h3_gaussian_bump(const SpectralSpace& space) {
    if (space.kind() != SpaceKind::Hyperbolic || space.dim() != 3)
        throw ParameterError("needs the H^3 backend");
    const double cP = space.plancherel_normalization();
    RadialProfile p;
    p.name = "h3-gaussian-bump";
    p.physical = [](double t) { return std::exp(-t * t) * t_over_sinh(t); };
    p.spectral_amplitude = [](double l) {
        return std::pow(kPi, 1.5) * std::exp(-0.25 * l * l);
    };
    p.spectral = [cP](double l) {
        return cP * kPi * kPi * kPi * std::exp(-0.5 * l * l);
    };
    p.analytic_side = AnalyticSide::Both;
    p.tail = SpectralTailModel::RapidDecay;
    return p;
}

RadialProfile h2_gaussian(double beta) {
    RadialProfile p;
    p.name = "h2-gaussian-beta" + std::to_string(beta);
    p.physical = [beta](double t) { return std::exp(-beta * t * t); };
    p.analytic_side = AnalyticSide::Physical;
    p.tail = SpectralTailModel::RapidDecay;
    return p;
}

RadialProfile power_tail_profile(double alpha, int n) {
    if (alpha <= 0.0) throw ParameterError("alpha must be positive");
    const double pexp = 2.0 * alpha + n;
    RadialProfile p;
    p.name = "power-tail-alpha" + std::to_string(alpha) + "-n" + std::to_string(n);
    p.spectral = [pexp](double l) { return l < 1.0 ? 0.0 : std::pow(l, -pexp); };
    p.analytic_side = AnalyticSide::Spectral;
    p.support_min = 1.0;
    p.tail = SpectralTailModel::PowerLaw;
    p.tail_exponent = pexp;
    p.tail_coeff = 1.0;
    p.tail_from = 1.0;
    return p;
}

RadialProfile spectral_bump(double center, double width) {
    RadialProfile p;
    p.name = "spectral-bump";
    p.spectral = [center, width](double l) {
        const double u = (l - center) / width;
        return std::exp(-u * u);
    };
    p.analytic_side = AnalyticSide::Spectral;
    p.tail = SpectralTailModel::RapidDecay;
    p.spectral_scale = width;
    return p;
}

RadialProfile zero_profile() {
    RadialProfile p;
    p.name = "zero";
    p.spectral = [](double) { return 0.0; };
    p.analytic_side = AnalyticSide::Spectral;
    p.tail = SpectralTailModel::RapidDecay;
    return p;
}

} // namespace lipft
