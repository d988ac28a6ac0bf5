#include "lipft/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "lipft/parallel.hpp"
#include "lipft/quadrature.hpp"

namespace lipft {

namespace {

void require_spectral(const RadialProfile& p) {
    if (!p.spectral) throw InapplicableError("profile '" + p.name + "' has no spectral side");
}

// Mean of (1 - phi_lambda(t))^2 over a period at large lambda t; the n = 1
// Euclidean multiplier 1 - cos has mean-square 3/2, all other backends have
// phi -> 0 there.
double osc_mean_square(const SpectralSpace& space) {
    return (space.kind() == SpaceKind::Euclidean && space.dim() == 1) ? 1.5 : 1.0;
}

// Geometric scan for a cutoff beyond which g is negligible relative to its
// peak. Returns {cutoff, peak}; peak == 0 means g vanished identically on
// the scan.
struct Cutoff {
    double lambda = 0.0;
    double peak = 0.0;
};

template <typename G>
Cutoff rapid_cutoff(G&& g, double from) {
    double lam = std::max(from, 0.25);
    double peak = std::abs(g(0.5 * lam));
    int quiet = 0;
    while (lam <= 1e6) {
        const double v = std::abs(g(lam));
        peak = std::max(peak, v);
        if (peak > 0.0 && v <= 1e-18 * peak) {
            if (++quiet >= 40) return {lam, peak};
        } else {
            quiet = 0;
        }
        lam *= 1.05;
    }
    if (peak == 0.0) return {0.0, 0.0};
    throw DecayError("spectral profile shows no decay up to lambda = 1e6");
}

// int_lower^inf of H (weighted: H * density_base), combining a numeric head
// with the analytic power-law remainder where applicable.
QuadResult tail_integral(const SpectralSpace& space, const RadialProfile& p, double lower,
                         bool weighted, double rel_tol) {
    require_spectral(p);
    auto g = [&](double l) {
        return weighted ? p.spectral(l) * space.density_base(l) : p.spectral(l);
    };
    const double a = std::max(lower, p.support_min);
    if (p.tail == SpectralTailModel::RapidDecay) {
        auto cut = rapid_cutoff(g, std::max(1.0, p.support_min));
        if (cut.peak == 0.0 || a >= cut.lambda) return {0.0, 0.0};
        QuadResult r{};
        if (p.spectral_scale > 0.0) {
            // pre-segment so a narrow feature cannot slip between the nodes
            // of a single wide panel
            const double w = 4.0 * p.spectral_scale;
            double x = a;
            while (x < cut.lambda) {
                const double y = std::min(cut.lambda, x + w);
                auto piece = integrate_adaptive(g, x, y, rel_tol, 1e-300, 20000);
                r.value += piece.value;
                r.err += piece.err;
                x = y;
            }
        } else {
            r = integrate_adaptive(g, a, cut.lambda, rel_tol, 1e-300, 20000);
        }
        r.err += 1e-18 * cut.peak * cut.lambda;
        return r;
    }
    const double reduce = weighted ? static_cast<double>(space.dim() - 1) : 0.0;
    const double peff = p.tail_exponent - reduce;
    if (peff <= 1.0)
        throw DivergenceError("spectral tail of '" + p.name + "' is not integrable here");
    const double big = 1e4 * std::max(a, p.tail_from);
    // integrate the head over octaves: the mass sits near the lower edge, and
    // a single panel spanning four decades would under-resolve it
    QuadResult head{};
    for (double x = a; x < big;) {
        const double y = std::min(big, 2.0 * x);
        auto piece = integrate_adaptive(g, x, y, rel_tol, 1e-300, 20000);
        head.value += piece.value;
        head.err += piece.err;
        x = y;
    }
    const double rem = p.tail_coeff * std::pow(big, 1.0 - peff) / (peff - 1.0);
    return {head.value + rem, head.err + 1e-6 * rem};
}

struct SpectralRange {
    double a0 = 0.0;       // lower support edge
    double cutoff = 0.0;   // upper quadrature limit (t-dependent for power laws)
    bool empty = false;
    double tail_value = 0.0; // analytic mean-multiplier remainder beyond cutoff
    double tail_err = 0.0;
};

// Quadrature plan for int (1-phi)^2 H dmu at a given t.
SpectralRange l2_range(const SpectralSpace& space, const RadialProfile& p, double t,
                       const Cutoff& rapid) {
    SpectralRange r;
    r.a0 = p.support_min;
    if (p.tail == SpectralTailModel::RapidDecay) {
        if (rapid.peak == 0.0) {
            r.empty = true;
            return r;
        }
        r.cutoff = rapid.lambda;
        return r;
    }
    const int n = space.dim();
    const double pex = p.tail_exponent;
    if (pex <= static_cast<double>(n))
        throw DivergenceError("spectral tail of '" + p.name + "' is not mu-integrable");
    const double K = 1024.0;
    r.cutoff = std::max(K / t, 2.0 * p.tail_from);
    const double pn = pex - static_cast<double>(n);
    r.tail_value =
        osc_mean_square(space) * p.tail_coeff * std::pow(r.cutoff, -pn) / pn;
    // bound on the discarded oscillatory remainder plus power-law slack
    r.tail_err = 8.0 * p.tail_coeff * std::pow(r.cutoff, -pn - 1.0) / t + 1e-4 * r.tail_value;
    return r;
}

QuadResult l2_piece(const SpectralSpace& space, const RadialProfile& p, double t, double a,
                    double b, double rel_tol) {
    if (b <= a) return {0.0, 0.0};
    auto g = [&](double l) {
        const double m = space.one_minus_phi(l, t);
        return m * m * p.spectral(l) * space.density_base(l);
    };
    double freq = t;
    if (p.spectral_scale > 0.0) freq = std::max(freq, M_PI / (4.0 * p.spectral_scale));
    return integrate_osc_adaptive(g, a, b, freq, rel_tol);
}

FunctionalCurve make_curve(CurveKind kind, std::string name, const std::vector<double>& t_grid) {
    FunctionalCurve c;
    c.kind = kind;
    c.name = std::move(name);
    c.t_values = t_grid;
    c.values.resize(t_grid.size());
    c.quadrature_errors.resize(t_grid.size());
    return c;
}

} // namespace

std::vector<double> dyadic_grid(double t_max, int J) {
    if (!(t_max > 0.0) || J < 0) throw ParameterError("dyadic grid needs t_max > 0, J >= 0");
    std::vector<double> g(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j) g[static_cast<std::size_t>(j)] = t_max * std::ldexp(1.0, -j);
    return g;
}

FunctionalCurve lipschitz_curve(const SpectralSpace& space, const RadialProfile& p,
                                const std::vector<double>& t_grid, double rel_tol) {
    require_spectral(p);
    Cutoff rapid;
    if (p.tail == SpectralTailModel::RapidDecay) {
        rapid = rapid_cutoff(
            [&](double l) { return p.spectral(l) * space.density_base(l); },
            std::max(1.0, p.support_min));
    }
    auto curve = make_curve(CurveKind::Lipschitz, "L", t_grid);
    auto pts = parallel_map(t_grid.size(), [&](std::size_t i) -> QuadResult {
        const double t = t_grid[i];
        if (!(t > 0.0)) throw DomainError("lipschitz_curve requires t > 0");
        auto range = l2_range(space, p, t, rapid);
        if (range.empty) return {0.0, 0.0};
        auto head = l2_piece(space, p, t, range.a0, range.cutoff, rel_tol);
        return {head.value + range.tail_value, head.err + range.tail_err};
    });
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double sq = std::max(pts[i].value, 0.0);
        const double L = std::sqrt(sq);
        curve.values[i] = L;
        curve.quadrature_errors[i] = L > 0.0 ? 0.5 * pts[i].err / L : std::sqrt(pts[i].err);
    }
    return curve;
}

FunctionalCurve tail_curve(const SpectralSpace& space, const RadialProfile& p,
                           const std::vector<double>& t_grid, double rel_tol) {
    require_spectral(p);
    if (p.tail == SpectralTailModel::PowerLaw && p.tail_exponent <= 1.0)
        throw DivergenceError("flat tail of '" + p.name + "' diverges");
    auto curve = make_curve(CurveKind::Tail, "T", t_grid);
    auto pts = parallel_map(t_grid.size(), [&](std::size_t i) -> QuadResult {
        const double t = t_grid[i];
        if (!(t > 0.0)) throw DomainError("tail_curve requires t > 0");
        return tail_integral(space, p, 1.0 / t, false, rel_tol);
    });
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        curve.values[i] = pts[i].value;
        curve.quadrature_errors[i] = pts[i].err;
    }
    return curve;
}

double weighted_tail(const SpectralSpace& space, const RadialProfile& p, double t,
                     double rel_tol) {
    if (!(t > 0.0)) throw DomainError("weighted_tail requires t > 0");
    return tail_integral(space, p, 1.0 / t, true, rel_tol).value;
}

JSplit j_split(const SpectralSpace& space, const RadialProfile& p, double t, double rel_tol) {
    require_spectral(p);
    if (!(t > 0.0)) throw DomainError("j_split requires t > 0");
    Cutoff rapid;
    if (p.tail == SpectralTailModel::RapidDecay) {
        rapid = rapid_cutoff(
            [&](double l) { return p.spectral(l) * space.density_base(l); },
            std::max(1.0, p.support_min));
    }
    auto range = l2_range(space, p, t, rapid);
    JSplit out;
    if (range.empty) return out;
    const double mid = std::clamp(1.0 / t, range.a0, range.cutoff);
    auto j1 = l2_piece(space, p, t, range.a0, mid, rel_tol);
    auto j2 = l2_piece(space, p, t, mid, range.cutoff, rel_tol);
    out.J1 = j1.value;
    out.J2 = j2.value + range.tail_value;
    out.err = j1.err + j2.err + range.tail_err;
    return out;
}

KSplit k_split(const SpectralSpace& space, const RadialProfile& p, double t, double rel_tol) {
    require_spectral(p);
    if (!(t > 0.0)) throw DomainError("k_split requires t > 0");
    const double t4 = t * t * t * t;
    const double rho = space.rho();
    const double upper = 1.0 / t;
    const double a = std::min(p.support_min, upper);
    KSplit out;
    if (upper <= a) return out;
    auto g1 = [&](double l) {
        const double l2 = l * l;
        return l2 * l2 * p.spectral(l) * space.density_base(l);
    };
    auto k1 = integrate_adaptive(g1, a, upper, rel_tol, 1e-300, 20000);
    out.K1 = t4 * k1.value;
    out.err = t4 * k1.err;
    if (rho > 0.0) {
        auto g2 = [&](double l) { return p.spectral(l) * space.density_base(l); };
        auto k2 = integrate_adaptive(g2, a, upper, rel_tol, 1e-300, 20000);
        const double w = t4 * rho * rho * rho * rho;
        out.K2 = w * k2.value;
        out.err += w * k2.err;
    }
    return out;
}

double aux_tail_phi(const SpectralSpace& space, const RadialProfile& p, double s,
                    double rel_tol) {
    if (!(s > 0.0)) throw DomainError("aux_tail_phi requires s > 0");
    return tail_integral(space, p, s, true, rel_tol).value;
}

double aux_ibp_residual(const SpectralSpace& space, const RadialProfile& p, double t,
                        double rel_tol) {
    require_spectral(p);
    if (!(t > 0.0)) throw DomainError("aux_ibp_residual requires t > 0");
    const double upper = 1.0 / t;
    const double a = std::min(p.support_min, upper);
    auto glhs = [&](double l) {
        const double l2 = l * l;
        return l2 * l2 * p.spectral(l) * space.density_base(l);
    };
    const double lhs =
        upper > a ? integrate_adaptive(glhs, a, upper, rel_tol, 1e-300, 20000).value : 0.0;
    auto grhs = [&](double s) {
        return s * s * s * tail_integral(space, p, std::max(s, 1e-300), true, rel_tol).value;
    };
    const double ip = integrate_adaptive(grhs, 0.0, upper, 10.0 * rel_tol, 1e-300, 20000).value;
    const double u4 = upper * upper * upper * upper;
    const double rhs = 4.0 * ip - u4 * tail_integral(space, p, upper, true, rel_tol).value;
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return std::abs(lhs - rhs) / scale;
}

DyadicSum dyadic_sum_check(const Modulus& m, double t, int J) {
    if (!(t > 0.0) || t > m.delta0()) throw DomainError("dyadic sum requires t in (0, delta0]");
    if (J < 8) throw ParameterError("dyadic sum requires J >= 8");
    double m_low;
    try {
        m_low = mo_indices(m).m_lower;
    } catch (const NonconvergenceError& e) {
        m_low = e.partial_lower();
    }
    if (m_low <= 0.05)
        throw InapplicableError("lower index " + std::to_string(m_low) +
                                " too small to certify geometric decay");
    double sum = 0.0, prev = 0.0, last = 0.0;
    for (int j = 0; j <= J; ++j) {
        const double w = m.eval(t * std::ldexp(1.0, -j));
        prev = last;
        last = w * w;
        sum += last;
    }
    const double r = prev > 0.0 ? last / prev : 0.0;
    if (!(r < 1.0)) throw InapplicableError("dyadic terms do not decay");
    sum += last * r / (1.0 - r);
    const double w0 = m.eval(t);
    DyadicSum out;
    out.sum = sum;
    out.bound_constant = sum / (w0 * w0);
    return out;
}

double lipschitz_physical(const SpectralSpace& space, const RadialProfile& p, double t,
                          double rel_tol) {
    if (!p.physical) throw InapplicableError("physical route needs a physical profile");
    if (!(t > 0.0)) throw DomainError("lipschitz_physical requires t > 0");
    const double T = physical_truncation_radius(space, p) + t;
    auto g = [&](double x) {
        const double d = spherical_mean_deviation(space, p, x, t, 1e-13);
        return d * d * space.area_element(x);
    };
    const double val = integrate_adaptive(g, 0.0, T, rel_tol, 1e-300, 20000).value;
    return std::sqrt(std::max(val, 0.0));
}

} // namespace lipft
