#include "lipft/equivalence.hpp"

#include <algorithm>
#include <cmath>

namespace lipft {

namespace {

struct SupResult {
    double sup = 0.0;
    double worst_t = 0.0;
};

SupResult grid_sup(const std::vector<double>& t, const std::vector<double>& ratio,
                   std::size_t count) {
    SupResult r;
    for (std::size_t i = 0; i < count; ++i) {
        if (ratio[i] > r.sup) {
            r.sup = ratio[i];
            r.worst_t = t[i];
        }
    }
    return r;
}

RatioReport assemble(const std::vector<double>& t, const std::vector<double>& ratio,
                     std::size_t base_count) {
    RatioReport rep;
    auto base = grid_sup(t, ratio, base_count);
    auto fine = grid_sup(t, ratio, ratio.size());
    rep.ratio_sup = base.sup;
    rep.ratio_sup_refined = fine.sup;
    rep.worst_t = fine.worst_t;
    rep.stable = std::isfinite(fine.sup) &&
                 std::abs(fine.sup - base.sup) <= 0.10 * std::max(base.sup, 1e-300);
    if (base.sup == 0.0 && fine.sup == 0.0) rep.stable = true;
    return rep;
}

std::vector<double> omega_on(const Modulus& m, const std::vector<double>& grid) {
    std::vector<double> w(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w[i] = m.eval(grid[i]);
        if (!(w[i] > 0.0))
            throw DegenerateModulusError("modulus vanishes at t = " + std::to_string(grid[i]));
    }
    return w;
}

} // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::EquivalentWithinConstants: return "EquivalentWithinConstants";
        case Verdict::ForwardOnly: return "ForwardOnly";
        case Verdict::BackwardOnly: return "BackwardOnly";
        default: return "Inconclusive";
    }
}

RatioReport forward_check(const SpectralSpace& space, const RadialProfile& p, const Modulus& m,
                          double t_max, int J, double rel_tol) {
    const auto grid = dyadic_grid(t_max, J + 4);
    const auto w = omega_on(m, grid);
    const auto T = tail_curve(space, p, grid, rel_tol);
    const double n1 = static_cast<double>(space.dim() - 1);
    std::vector<double> ratio(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        ratio[i] = T.values[i] / (w[i] * w[i] * std::pow(grid[i], n1));
    return assemble(grid, ratio, static_cast<std::size_t>(J) + 1);
}

RatioReport backward_check(const SpectralSpace& space, const RadialProfile& p, const Modulus& m,
                           double t_max, int J, double rel_tol) {
    const auto grid = dyadic_grid(t_max, J + 4);
    const auto w = omega_on(m, grid);
    const auto L = lipschitz_curve(space, p, grid, rel_tol);
    std::vector<double> ratio(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ratio[i] = L.values[i] / w[i];
    return assemble(grid, ratio, static_cast<std::size_t>(J) + 1);
}

HypothesisAudit hypothesis_audit(const Modulus& m, double t_max, int J) {
    HypothesisAudit a;
    a.order_ok = m.order_k() <= 2.0;
    a.z0 = zygmund_check(m, ZygmundKind::Z0).holds;
    a.zk = zygmund_check(m, ZygmundKind::Zk).holds;
    a.tail_ok = tail_assumptions_check(m).ok;
    if (t_max <= 0.0) t_max = 0.5 * m.delta0();
    const auto grid = dyadic_grid(t_max, J);
    double sup = 0.0, head = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = m.eval(grid[i]);
        if (!(w > 0.0)) return a;
        const double v = grid[i] * grid[i] / w;
        sup = std::max(sup, v);
        if (i < 4) head = std::max(head, v);
    }
    a.side_constant = sup;
    // bounded means no growth toward t = 0: the sup must sit at the coarse end
    a.side_condition = sup <= 1.1 * head;
    return a;
}

ExponentFit fit_exponents(const FunctionalCurve& curve, std::size_t lo, std::size_t hi) {
    if (hi <= lo + 1 || hi > curve.values.size())
        throw FitError("exponent fit needs at least two grid points");
    const std::size_t n = hi - lo;
    double sx = 0.0, sy = 0.0;
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = curve.values[lo + i];
        if (!(v > 0.0)) throw FitError("exponent fit requires positive curve values");
        xs[i] = std::log(curve.t_values[lo + i]);
        ys[i] = std::log(v);
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - my - fit.slope * (xs[i] - mx);
        ss += r * r;
    }
    if (n > 2) fit.half_width = std::sqrt(ss / (static_cast<double>(n - 2) * sxx));
    return fit;
}

ExponentFit fit_exponents(const FunctionalCurve& curve) {
    const std::size_t n = curve.values.size();
    if (n < 6) throw FitError("curve too short for an edge-trimmed fit");
    return fit_exponents(curve, 2, n - 2);
}

EquivalenceReport equivalence_report(const SpectralSpace& space, const RadialProfile& p,
                                     const Modulus& m, double t_max, int J) {
    EquivalenceReport rep;
    rep.t_max = t_max;
    rep.J = J;
    rep.audit = hypothesis_audit(m, t_max, J);
    rep.forward = forward_check(space, p, m, t_max, J);
    rep.backward = backward_check(space, p, m, t_max, J);

    const auto grid = dyadic_grid(t_max, J);
    rep.T_fit = fit_exponents(tail_curve(space, p, grid));
    rep.L_fit = fit_exponents(lipschitz_curve(space, p, grid));

    const bool fwd = rep.forward.stable && std::isfinite(rep.forward.ratio_sup);
    const bool bwd = rep.backward.stable && std::isfinite(rep.backward.ratio_sup);
    if (fwd && bwd && rep.audit.passed())
        rep.verdict = Verdict::EquivalentWithinConstants;
    else if (fwd && !bwd)
        rep.verdict = Verdict::ForwardOnly;
    else if (bwd && !fwd)
        rep.verdict = Verdict::BackwardOnly;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

EquivalenceReport titchmarsh_n1(const RadialProfile& p, double alpha, double t_max, int J) {
    if (!(alpha > 0.0) || !(alpha < 2.0))
        throw ParameterError("alpha must lie in (0, 2)");
    const auto space = SpectralSpace::euclidean(1);
    const auto m = Modulus::power(alpha, 2.0);
    return equivalence_report(space, p, m, t_max, J);
}

} // namespace lipft
