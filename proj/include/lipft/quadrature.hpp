#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "lipft/errors.hpp"

namespace lipft {

struct QuadResult {
    double value = 0.0;
    double err = 0.0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1,1].
inline constexpr double gk_node[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

// Gauss-Legendre 16 on [-1,1].
inline constexpr double g16_node[8] = {
    0.095012509837637440185319335424958,
    0.281603550779258913230460501460496,
    0.458016777657227386342419442983578,
    0.617876244402643748446671764048791,
    0.755404408355003033895101194847442,
    0.865631202387831743880467897712393,
    0.944575023073232576077988415534608,
    0.989400934991649932596154173450333};
inline constexpr double g16_weight[8] = {
    0.189450610455068496285396723208283,
    0.182603415044923588866763667969220,
    0.169156519395002538189312079030360,
    0.149595988816576732081501730547478,
    0.124628971255533872052476282192016,
    0.095158511682492784809925107602246,
    0.062253523938647892862843836994378,
    0.027152459411754094851780572456018};

template <typename F>
QuadResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = gk_wk[7] * fc;
    double gauss = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_node[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += gk_wk[i] * fsum;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    // QUADPACK-style sharpened estimate
    if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
    return {kron, err};
}

template <typename F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * g16_node[i];
        s += g16_weight[i] * (f(c - dx) + f(c + dx));
    }
    return s * h;
}

} // namespace detail

// Adaptive Gauss-Kronrod on a finite interval. Refines the worst panel
// first; deterministic (heap order depends only on computed values).
template <typename F>
QuadResult integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                              double abs_tol = 1e-300, int max_panels = 4000) {
    if (a == b) return {0.0, 0.0};
    struct Panel {
        double a, b, value, err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto first = detail::gk15(f, a, b);
    std::priority_queue<Panel> heap;
    heap.push({a, b, first.value, first.err});
    double total = first.value, total_err = first.err;
    int panels = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (panels >= max_panels) {
            // tolerate estimates already close to machine precision
            if (total_err <= 1e-12 * std::abs(total) + abs_tol * 10) break;
            throw QuadratureError("adaptive quadrature did not converge (err=" +
                                  std::to_string(total_err) + ", value=" + std::to_string(total) + ")");
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval at machine resolution; accept its estimate
            total_err -= worst.err;
            worst.err = 0.0;
            heap.push(worst);
            continue;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push({worst.a, mid, left.value, left.err});
        heap.push({mid, worst.b, right.value, right.err});
        ++panels;
    }
    // re-accumulate in a fixed order for exact determinism of the value
    std::vector<Panel> all;
    all.reserve(static_cast<std::size_t>(panels));
    for (; !heap.empty(); heap.pop()) all.push_back(heap.top());
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double v = 0.0, e = 0.0;
    for (const auto& p : all) {
        v += p.value;
        e += p.err;
    }
    return {v, e};
}

// ∫_a^∞ f, a > 0, via λ = a/u mapping onto (0,1]. The integrand must decay
// at least like λ^{-2}; power tails become polynomials in u.
template <typename F>
QuadResult integrate_tail(F&& f, double a, double rel_tol = 1e-10, double abs_tol = 1e-300) {
    if (a <= 0.0) throw QuadratureError("integrate_tail requires a positive lower limit");
    auto g = [&](double u) { return f(a / u) * a / (u * u); };
    return integrate_adaptive(g, 0.0, 1.0, rel_tol, abs_tol);
}

// ∫_0^∞ f with decaying integrand: finite part + mapped tail.
template <typename F>
QuadResult integrate_half_line(F&& f, double split = 1.0, double rel_tol = 1e-10,
                               double abs_tol = 1e-300) {
    auto head = integrate_adaptive(f, 0.0, split, rel_tol, abs_tol);
    auto tail = integrate_tail(f, split, rel_tol, abs_tol);
    return {head.value + tail.value, head.err + tail.err};
}

namespace detail {

template <typename F>
QuadResult osc_fixed_panels(F&& f, double a, double b, long long n) {
    const double h = (b - a) / static_cast<double>(n);
    double coarse = 0.0, fine = 0.0;
    for (long long i = 0; i < n; ++i) {
        const double pa = a + h * static_cast<double>(i);
        const double pb = (i + 1 == n) ? b : pa + h;
        const double pm = 0.5 * (pa + pb);
        coarse += gauss16(f, pa, pb);
        fine += gauss16(f, pa, pm) + gauss16(f, pm, pb);
    }
    return {fine, std::abs(fine - coarse)};
}

} // namespace detail

// Fixed-panel Gauss-16 quadrature for oscillatory integrands: panel width is
// capped at a quarter of the local period pi/(4*freq). Error estimated by
// halving every panel and re-integrating (the refined value is returned).
template <typename F>
QuadResult integrate_osc(F&& f, double a, double b, double freq, int max_panels = 2000000) {
    if (b <= a) return {0.0, 0.0};
    double w = b - a;
    if (freq > 0.0) w = std::min(w, M_PI / (4.0 * freq));
    long long n = static_cast<long long>(std::ceil((b - a) / w));
    n = std::max<long long>(n, 8);
    if (n > max_panels)
        throw QuadratureError("oscillatory panel count " + std::to_string(n) + " exceeds budget");
    return detail::osc_fixed_panels(f, a, b, n);
}

// As integrate_osc, doubling the panel count until the doubling estimate
// meets the tolerance.
template <typename F>
QuadResult integrate_osc_adaptive(F&& f, double a, double b, double freq, double rel_tol = 1e-10,
                                  double abs_tol = 1e-300, long long max_panels = 4000000) {
    if (b <= a) return {0.0, 0.0};
    double w = b - a;
    if (freq > 0.0) w = std::min(w, M_PI / (4.0 * freq));
    long long n = std::max<long long>(static_cast<long long>(std::ceil((b - a) / w)), 8);
    QuadResult r{};
    for (int pass = 0; pass < 12; ++pass) {
        if (n > max_panels)
            throw QuadratureError("oscillatory panel count " + std::to_string(n) +
                                  " exceeds budget");
        r = detail::osc_fixed_panels(f, a, b, n);
        if (r.err <= std::max(abs_tol, rel_tol * std::abs(r.value))) return r;
        n *= 2;
    }
    throw QuadratureError("oscillatory quadrature did not converge (err=" + std::to_string(r.err) +
                          ")");
}

} // namespace lipft
