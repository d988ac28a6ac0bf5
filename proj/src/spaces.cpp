#include "lipft/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "lipft/parallel.hpp"
#include "lipft/quadrature.hpp"

namespace lipft {

namespace {

constexpr double kPi = 3.14159265358979323846;

double unit_sphere_area(int n) {
    // surface area of S^{n-1}
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

// ---- Euclidean spherical function: normalized Bessel multiplier ----------

// series of Gamma(n/2) (2/u)^{(n-2)/2} J_{(n-2)/2}(u) in x = u^2/4
double phi_euclid_series(int n, double x, int terms = 4) {
    double term = 1.0, sum = 1.0, poch = 0.5 * n;
    for (int m = 1; m < terms; ++m) {
        term *= -x / (m * poch);
        sum += term;
        poch += 1.0;
    }
    return sum;
}

double one_minus_phi_euclid_series(int n, double x) {
    const double a = 0.5 * n;
    // 1 - phi = x/a - x^2/(2 a(a+1)) + x^3/(6 a(a+1)(a+2))
    return x / a * (1.0 - x / (2.0 * (a + 1.0)) * (1.0 - x / (1.5 * (a + 2.0))));
}

double phi_euclid(int n, double u) {
    const double x = 0.25 * u * u;
    if (u < 1e-3) return phi_euclid_series(n, x);
    switch (n) {
        case 1: return std::cos(u);
        case 2: return std::cyl_bessel_j(0.0, u);
        case 3: return std::sin(u) / u;
        default:
            return std::tgamma(0.5 * n) * std::pow(2.0 / u, 0.5 * (n - 2)) *
                   std::cyl_bessel_j(0.5 * (n - 2), u);
    }
}

double one_minus_phi_euclid(int n, double u) {
    if (n == 1) {
        const double s = std::sin(0.5 * u);
        return 2.0 * s * s;
    }
    if (u < 1e-3) return one_minus_phi_euclid_series(n, 0.25 * u * u);
    return 1.0 - phi_euclid(n, u);
}

// ---- H^3: phi = sinc(lambda t) * t / sinh t ------------------------------

double one_minus_sinc(double u) {
    if (u < 1e-2) {
        const double u2 = u * u;
        return u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0));
    }
    return 1.0 - std::sin(u) / u;
}

double one_minus_t_over_sinh(double t) {
    if (t < 1e-2) {
        const double t2 = t * t;
        return t2 / 6.0 - 7.0 * t2 * t2 / 360.0 + 31.0 * t2 * t2 * t2 / 15120.0;
    }
    return 1.0 - t / std::sinh(t);
}

// ---- H^2: cosine-kernel (Mehler type) integral ---------------------------
//
// phi_lambda(t) = (sqrt(2)/pi) int_0^t cos(lambda b) / sqrt(cosh t - cosh b) db
// with cosh t - cosh b = 2 sinh((t+b)/2) sinh((t-b)/2). The square-root
// endpoint is removed by b = t - u^2 on the last stretch.

double phi_h2_quad(double lambda, double t) {
    const double eps = std::min(0.5 * t, 0.5);
    const double split = t - eps;
    double total = 0.0;
    if (split > 0.0) {
        auto f = [&](double b) {
            const double d2 = 2.0 * std::sinh(0.5 * (t + b)) * std::sinh(0.5 * (t - b));
            return std::cos(lambda * b) / std::sqrt(d2);
        };
        total += integrate_adaptive(f, 0.0, split, 1e-12, 1e-300, 60000).value;
    }
    auto g = [&](double u) {
        const double u2 = u * u;
        const double d2 = 2.0 * std::sinh(t - 0.5 * u2) * std::sinh(0.5 * u2);
        return 2.0 * u * std::cos(lambda * (t - u2)) / std::sqrt(d2);
    };
    total += integrate_adaptive(g, 0.0, std::sqrt(eps), 1e-12, 1e-300, 60000).value;
    return total * std::sqrt(2.0) / kPi;
}

double one_minus_phi_h2_series(double q, double t) {
    const double t2 = t * t;
    return q * t2 / 4.0 - q * (2.0 + 3.0 * q) * t2 * t2 / 192.0;
}

} // namespace

double phi_h2_angular(double lambda, double t, int nodes) {
    if (t == 0.0) return 1.0;
    // (1/pi) int_0^pi Re[(cosh t + sinh t cos theta)^{i lambda - 1/2}] dtheta
    const double h = kPi / nodes;
    double sum = 0.0;
    for (int i = 0; i <= nodes; ++i) {
        const double theta = i * h;
        const double z = std::cosh(t) + std::sinh(t) * std::cos(theta);
        const double lz = std::log(z);
        double w = std::exp(-0.5 * lz) * std::cos(lambda * lz);
        if (i == 0 || i == nodes) w *= 0.5;
        sum += w;
    }
    return sum * h / kPi;
}

SpectralSpace::SpectralSpace(SpaceKind k, int n) : kind_(k), n_(n) {
    rho_ = (k == SpaceKind::Euclidean) ? 0.0 : 0.5 * (n - 1);
    sphere_area_ = unit_sphere_area(n);
}

double SpectralSpace::phi(double lambda, double t) const {
    if (lambda < 0.0 || t < 0.0) throw DomainError("phi requires lambda >= 0 and t >= 0");
    if (t == 0.0) return 1.0;
    if (kind_ == SpaceKind::Euclidean) return phi_euclid(n_, lambda * t);
    if (n_ == 3) {
        const double a = one_minus_sinc(lambda * t);
        const double b = one_minus_t_over_sinh(t);
        return (1.0 - a) * (1.0 - b);
    }
    const double q = lambda * lambda + rho_ * rho_;
    if (q * t * t < 1e-3) return 1.0 - one_minus_phi_h2_series(q, t);
    return phi_h2_quad(lambda, t);
}

double SpectralSpace::one_minus_phi(double lambda, double t) const {
    if (lambda < 0.0 || t < 0.0) throw DomainError("phi requires lambda >= 0 and t >= 0");
    if (t == 0.0) return 0.0;
    if (kind_ == SpaceKind::Euclidean) return one_minus_phi_euclid(n_, lambda * t);
    if (n_ == 3) {
        const double a = one_minus_sinc(lambda * t);
        const double b = one_minus_t_over_sinh(t);
        return a + b - a * b;
    }
    const double q = lambda * lambda + rho_ * rho_;
    if (q * t * t < 1e-3) return one_minus_phi_h2_series(q, t);
    return 1.0 - phi_h2_quad(lambda, t);
}

double SpectralSpace::density_base(double lambda) const {
    if (lambda < 0.0) throw DomainError("density requires lambda >= 0");
    if (kind_ == SpaceKind::Euclidean) return std::pow(lambda, n_ - 1);
    if (n_ == 3) return lambda * lambda;
    return lambda * std::tanh(kPi * lambda);
}

double SpectralSpace::area_element(double t) const {
    if (t <= 0.0) throw DomainError("area element requires t > 0");
    const double radial = (kind_ == SpaceKind::Euclidean) ? t : std::sinh(t);
    return sphere_area_ * std::pow(radial, n_ - 1);
}

std::string SpectralSpace::name() const {
    return (kind_ == SpaceKind::Euclidean ? "euclidean-" : "hyperbolic-") + std::to_string(n_);
}

// ---------------------------------------------------------------------------
// Transforms

double physical_truncation_radius(const SpectralSpace& space, const RadialProfile& p, double tol) {
    if (!p.physical) throw InapplicableError("profile has no physical side");
    if (p.phys_truncation > 0.0) return p.phys_truncation;
    double peak = 0.0;
    int quiet = 0;
    for (double T = 0.5; T <= 200.0; T += 0.5) {
        const double f = std::abs(p.physical(T));
        const double area = space.area_element(T);
        // every consumer integrates either f^2 * area (norms) or
        // f * phi * area with |phi| <= phi_0 (transforms); track the worse one
        const double v = std::max(f * f * area, f * area * space.phi(0.0, T));
        peak = std::max(peak, v);
        quiet = (v <= tol * std::max(peak, 1e-30)) ? quiet + 1 : 0;
        if (quiet >= 4) return T;
    }
    throw DecayError("physical profile does not decay within the scan range");
}

namespace {

// Piecewise cubic (Catmull-Rom) interpolation on a uniform grid.
class UniformCubic {
public:
    UniformCubic(double a, double h, std::vector<double> y)
        : a_(a), h_(h), y_(std::move(y)) {}
    double operator()(double x) const {
        double s = (x - a_) / h_;
        const auto n = static_cast<long long>(y_.size());
        long long i = static_cast<long long>(std::floor(s));
        i = std::clamp<long long>(i, 0, n - 2);
        const double u = s - static_cast<double>(i);
        const double y0 = y_[static_cast<std::size_t>(std::max<long long>(i - 1, 0))];
        const double y1 = y_[static_cast<std::size_t>(i)];
        const double y2 = y_[static_cast<std::size_t>(i + 1)];
        const double y3 = y_[static_cast<std::size_t>(std::min<long long>(i + 2, n - 1))];
        const double m1 = 0.5 * (y2 - y0), m2 = 0.5 * (y3 - y1);
        const double d = y1 - y2;
        return y1 + u * (m1 + u * (-3.0 * d - 2.0 * m1 - m2 + u * (2.0 * d + m1 + m2)));
    }
private:
    double a_, h_;
    std::vector<double> y_;
};

// f_hat for H^2 by swapping the cosine kernel with the radial integral:
// f_hat(lambda) = (sqrt2/pi) int_0^T cos(lambda b) G(b) db,
// G(b) = int_b^T f(t) A(t) (cosh t - cosh b)^{-1/2} dt.
std::vector<double> h2_transform_grid(const SpectralSpace& space, const RadialProfile& p, double T,
                                      const std::vector<double>& lambda_grid, double rel_tol) {
    const int nb = 2048;
    const double h = T / nb;
    auto G = parallel_map(static_cast<std::size_t>(nb + 1), [&](std::size_t i) {
        const double b = std::min(static_cast<double>(i) * h, T);
        const double umax = std::sqrt(T - b);
        if (umax <= 0.0) return 0.0;
        auto f = [&](double u) {
            const double u2 = u * u;
            const double t = b + u2;
            const double d2 = 2.0 * std::sinh(b + 0.5 * u2) * std::sinh(0.5 * u2);
            return 2.0 * u * p.physical(t) * space.area_element(t) / std::sqrt(d2);
        };
        return integrate_adaptive(f, 0.0, umax, 1e-12, 1e-300, 20000).value;
    });
    UniformCubic spline(0.0, h, std::move(G));
    return parallel_map(lambda_grid.size(), [&](std::size_t i) {
        const double lambda = lambda_grid[i];
        auto f = [&](double b) { return std::cos(lambda * b) * spline(b); };
        return integrate_osc_adaptive(f, 0.0, T, lambda, rel_tol, 1e-14).value * std::sqrt(2.0) /
               kPi;
    });
}

} // namespace

std::vector<std::pair<double, double>> spherical_transform(const SpectralSpace& space,
                                                           const RadialProfile& p,
                                                           const std::vector<double>& lambda_grid,
                                                           double rel_tol) {
    if (!p.physical) throw InapplicableError("spherical_transform needs a physical profile");
    const double T = physical_truncation_radius(space, p);
    std::vector<std::pair<double, double>> out(lambda_grid.size());
    std::vector<double> values;
    if (space.kind() == SpaceKind::Hyperbolic && space.dim() == 2) {
        values = h2_transform_grid(space, p, T, lambda_grid, rel_tol);
    } else {
        values = parallel_map(lambda_grid.size(), [&](std::size_t i) {
            const double lambda = lambda_grid[i];
            auto f = [&](double t) {
                return p.physical(t) * space.phi(lambda, t) * space.area_element(t);
            };
            return integrate_osc_adaptive(f, 0.0, T, lambda, rel_tol, 1e-14).value;
        });
    }
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) out[i] = {lambda_grid[i], values[i]};
    return out;
}

std::vector<std::pair<double, double>> inverse_transform(
    const SpectralSpace& space, const std::vector<std::pair<double, double>>& spectral,
    const std::vector<double>& t_grid, double tail_tol) {
    if (spectral.size() < 3) throw ParameterError("spectral sample grid too small");
    const std::size_t n = spectral.size();
    const double h = spectral[1].first - spectral[0].first;
    bool uniform = true;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(spectral[i].first - spectral[i - 1].first - h) > 1e-9 * h) uniform = false;

    double scale = 0.0;
    for (const auto& [l, v] : spectral)
        scale = std::max(scale, std::abs(v) * space.plancherel_density(l));
    const auto& [lam_end, val_end] = spectral.back();
    if (scale > 0.0 &&
        std::abs(val_end) * space.plancherel_density(lam_end) > tail_tol * scale)
        throw TruncationError("spectral samples do not decay below tolerance at the cutoff");

    auto integrate_samples = [&](const std::vector<double>& g) {
        // composite Simpson on uniform grids (odd count), trapezoid otherwise
        if (uniform && n % 2 == 1) {
            double s = g[0] + g[n - 1];
            for (std::size_t i = 1; i + 1 < n; ++i) s += g[i] * (i % 2 == 1 ? 4.0 : 2.0);
            return s * h / 3.0;
        }
        double s = 0.0;
        for (std::size_t i = 1; i < n; ++i)
            s += 0.5 * (g[i] + g[i - 1]) * (spectral[i].first - spectral[i - 1].first);
        return s;
    };

    auto values = parallel_map(t_grid.size(), [&](std::size_t j) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& [lam, v] = spectral[i];
            g[i] = v * space.phi(lam, t_grid[j]) * space.plancherel_density(lam);
        }
        return integrate_samples(g);
    });
    std::vector<std::pair<double, double>> out(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) out[j] = {t_grid[j], values[j]};
    return out;
}

std::vector<std::pair<double, double>> translate_spectral(
    const SpectralSpace& space, const std::vector<std::pair<double, double>>& H_values, double t) {
    if (t <= 0.0) throw DomainError("translate_spectral requires t > 0");
    std::vector<std::pair<double, double>> out(H_values.size());
    for (std::size_t i = 0; i < H_values.size(); ++i) {
        const auto& [lam, Hv] = H_values[i];
        const double m = space.one_minus_phi(lam, t);
        out[i] = {lam, m * m * Hv};
    }
    return out;
}

double spherical_mean_direct(const SpectralSpace& space, const RadialProfile& p, double x_norm,
                             double t, double rel_tol) {
    if (space.kind() != SpaceKind::Euclidean || space.dim() > 3)
        throw UnsupportedDimensionError("direct spherical mean supports Euclidean n in {1,2,3}");
    if (!p.physical) throw InapplicableError("spherical mean needs a physical profile");
    const double r = x_norm;
    switch (space.dim()) {
        case 1:
            return 0.5 * (p.physical(std::abs(r + t)) + p.physical(std::abs(r - t)));
        case 2: {
            auto f = [&](double theta) {
                return p.physical(std::sqrt(std::max(
                    0.0, r * r + t * t + 2.0 * r * t * std::cos(theta))));
            };
            return integrate_adaptive(f, 0.0, kPi, rel_tol).value / kPi;
        }
        default: {
            auto f = [&](double mu) {
                return p.physical(std::sqrt(std::max(0.0, r * r + t * t + 2.0 * r * t * mu)));
            };
            return 0.5 * integrate_adaptive(f, -1.0, 1.0, rel_tol).value;
        }
    }
}

double spherical_mean_deviation(const SpectralSpace& space, const RadialProfile& p, double x_norm,
                                double t, double rel_tol) {
    if (space.kind() != SpaceKind::Euclidean || space.dim() > 3)
        throw UnsupportedDimensionError("direct spherical mean supports Euclidean n in {1,2,3}");
    if (!p.physical) throw InapplicableError("spherical mean needs a physical profile");
    const double r = x_norm;
    const double fx = p.physical(r);
    switch (space.dim()) {
        case 1:
            return 0.5 * ((p.physical(std::abs(r + t)) - fx) + (p.physical(std::abs(r - t)) - fx));
        case 2: {
            auto f = [&](double theta) {
                return p.physical(std::sqrt(std::max(
                           0.0, r * r + t * t + 2.0 * r * t * std::cos(theta)))) -
                       fx;
            };
            return integrate_adaptive(f, 0.0, kPi, rel_tol, 1e-18 * (1.0 + std::abs(fx))).value /
                   kPi;
        }
        default: {
            auto f = [&](double mu) {
                return p.physical(std::sqrt(std::max(0.0, r * r + t * t + 2.0 * r * t * mu))) - fx;
            };
            return 0.5 *
                   integrate_adaptive(f, -1.0, 1.0, rel_tol, 1e-18 * (1.0 + std::abs(fx))).value;
        }
    }
}

LemmaEstimates lemma_estimates(const SpectralSpace& space, const std::vector<double>& lambda_grid,
                               const std::vector<double>& t_grid) {
    for (double l : lambda_grid)
        if (!(l >= 0.0) || !std::isfinite(l)) throw ParameterError("lambda grid must be finite");
    for (double t : t_grid)
        if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("t grid must be positive");
    const std::size_t nl = lambda_grid.size(), nt = t_grid.size();
    const double rho2 = space.rho() * space.rho();
    auto gap = parallel_map(nl * nt, [&](std::size_t idx) {
        return space.one_minus_phi(lambda_grid[idx / nt], t_grid[idx % nt]);
    });
    LemmaEstimates est;
    est.min_gap_constant = 4.0;
    for (std::size_t idx = 0; idx < nl * nt; ++idx) {
        const double lam = lambda_grid[idx / nt], t = t_grid[idx % nt];
        const double omp = gap[idx];
        est.max_abs_phi = std::max(est.max_abs_phi, std::abs(1.0 - omp));
        est.worst_quadratic_ratio =
            std::max(est.worst_quadratic_ratio, omp / (t * t * (lam * lam + rho2)));
        if (lam * t >= 1.0) est.min_gap_constant = std::min(est.min_gap_constant, omp);
    }
    return est;
}

double physical_l2_norm_sq(const SpectralSpace& space, const RadialProfile& p, double rel_tol) {
    if (!p.physical) throw InapplicableError("profile has no physical side");
    const double T = physical_truncation_radius(space, p);
    auto f = [&](double t) {
        const double v = p.physical(t);
        return v * v * space.area_element(t);
    };
    return integrate_adaptive(f, 0.0, T, rel_tol).value;
}

// ---------------------------------------------------------------------------
// Calibration: fix the Plancherel normalization so that
// ||f||_2^2 = norm * int fhat(l)^2 density_base(l) dl  for the reference
// profile, with fhat computed by the numerical transform.

namespace {

RadialProfile calibration_profile(SpaceKind kind, int n) {
    RadialProfile p;
    if (kind == SpaceKind::Euclidean) {
        p.name = "calibration-gaussian";
        p.physical = [](double t) { return std::exp(-0.5 * t * t); };
    } else if (n == 3) {
        p.name = "calibration-h3-bump";
        p.physical = [](double t) {
            return t == 0.0 ? std::exp(-t * t) : std::exp(-t * t) * t / std::sinh(t);
        };
    } else {
        p.name = "calibration-h2-bump";
        p.physical = [](double t) { return std::exp(-t * t); };
    }
    return p;
}

double compute_normalization(const SpectralSpace& raw) {
    const RadialProfile p = calibration_profile(raw.kind(), raw.dim());
    const double num = physical_l2_norm_sq(raw, p);
    // spectral mass on a Simpson grid; the transforms of the calibration
    // profiles decay super-exponentially, lambda <= 30 is far past machine eps
    const double Lmax = 30.0;
    const int nl = 3000;
    std::vector<double> grid(nl + 1);
    for (int i = 0; i <= nl; ++i) grid[static_cast<std::size_t>(i)] = Lmax * i / double(nl);
    auto fhat = spherical_transform(raw, p, grid, 1e-11);
    const double h = Lmax / nl;
    double den = 0.0;
    for (int i = 0; i <= nl; ++i) {
        const double g = fhat[static_cast<std::size_t>(i)].second *
                         fhat[static_cast<std::size_t>(i)].second *
                         raw.density_base(grid[static_cast<std::size_t>(i)]);
        const double w = (i == 0 || i == nl) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        den += w * g;
    }
    den *= h / 3.0;
    if (den <= 0.0) throw QuadratureError("calibration produced nonpositive spectral mass");
    return num / den;
}

} // namespace

SpectralSpace SpectralSpace::euclidean(int n) {
    if (n < 1) throw UnsupportedDimensionError("Euclidean backend needs n >= 1");
    static std::map<int, double> cache;
    static std::mutex mu;
    SpectralSpace s(SpaceKind::Euclidean, n);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_normalization(s)).first;
    s.norm_ = it->second;
    return s;
}

SpectralSpace SpectralSpace::hyperbolic(int n) {
    if (n != 2 && n != 3)
        throw UnsupportedDimensionError("hyperbolic backend supports n in {2, 3}");
    static std::map<int, double> cache;
    static std::mutex mu;
    SpectralSpace s(SpaceKind::Hyperbolic, n);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_normalization(s)).first;
    s.norm_ = it->second;
    return s;
}

} // namespace lipft
