#pragma once

#include <string>
#include <vector>

#include "lipft/modulus.hpp"
#include "lipft/spaces.hpp"

namespace lipft {

enum class CurveKind { Lipschitz, Tail, Diagnostic };

// A functional evaluated over the dyadic grid t_j = t_max * 2^{-j}. Each
// point carries the quadrature error estimate; a point is flagged when the
// estimate exceeds 1e-6 * (1 + value).
struct FunctionalCurve {
    CurveKind kind = CurveKind::Diagnostic;
    std::string name;
    std::vector<double> t_values;
    std::vector<double> values;
    std::vector<double> quadrature_errors;

    bool flagged(std::size_t i) const {
        return quadrature_errors[i] > 1e-6 * (1.0 + values[i]);
    }
};

std::vector<double> dyadic_grid(double t_max, int J);

// L(t) = || S^t f - f ||_2 through the spectral identity
// L(t)^2 = int_0^inf (1 - phi_lambda(t))^2 H(lambda) dmu(lambda).
FunctionalCurve lipschitz_curve(const SpectralSpace& space, const RadialProfile& p,
                                const std::vector<double>& t_grid, double rel_tol = 1e-10);

// T(t) = int_{1/t}^inf H(lambda) dlambda (flat measure).
FunctionalCurve tail_curve(const SpectralSpace& space, const RadialProfile& p,
                           const std::vector<double>& t_grid, double rel_tol = 1e-12);

// int_{1/t}^inf H dmu (the measure-weighted tail used by both proof chains).
double weighted_tail(const SpectralSpace& space, const RadialProfile& p, double t,
                     double rel_tol = 1e-12);

struct JSplit {
    double J1 = 0.0, J2 = 0.0;
    double err = 0.0;
};

struct KSplit {
    double K1 = 0.0, K2 = 0.0;
    double err = 0.0;
};

// J1 = int_0^{1/t} (1-phi)^2 H dmu, J2 = the complementary piece; J1 + J2
// reproduces L(t)^2 through an independent panelization.
JSplit j_split(const SpectralSpace& space, const RadialProfile& p, double t,
               double rel_tol = 1e-10);

// K1 = t^4 int_0^{1/t} lambda^4 H dmu, K2 = t^4 rho^4 int_0^{1/t} H dmu.
KSplit k_split(const SpectralSpace& space, const RadialProfile& p, double t,
               double rel_tol = 1e-12);

// phi(s) = int_s^inf H dmu, the auxiliary tail of the K1 estimate.
double aux_tail_phi(const SpectralSpace& space, const RadialProfile& p, double s,
                    double rel_tol = 1e-12);

// Relative mismatch of the integration-by-parts identity
//   int_0^{1/t} s^4 H(s) dmu(s) = 4 int_0^{1/t} s^3 phi(s) ds - t^{-4} phi(1/t).
double aux_ibp_residual(const SpectralSpace& space, const RadialProfile& p, double t,
                        double rel_tol = 1e-10);

struct DyadicSum {
    double sum = 0.0;
    double bound_constant = 0.0;
};

// sum_j omega(t/2^j)^2, partial sum to J terms plus a ratio-based geometric
// tail; certified only when the lower index m(omega) is safely positive.
DyadicSum dyadic_sum_check(const Modulus& m, double t, int J);

// || S^t f - f ||_2 computed entirely on the physical side.
double lipschitz_physical(const SpectralSpace& space, const RadialProfile& p, double t,
                          double rel_tol = 1e-9);

} // namespace lipft
