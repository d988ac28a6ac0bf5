#pragma once

#include "lipft/functionals.hpp"
#include "lipft/modulus.hpp"
#include "lipft/spaces.hpp"

namespace lipft {

struct RatioReport {
    double ratio_sup = 0.0;         // over the base grid (j = 0..J)
    double ratio_sup_refined = 0.0; // over the deepened grid (j = 0..J+4)
    bool stable = false;            // refined sup within 10% of the base sup
    double worst_t = 0.0;
};

struct HypothesisAudit {
    bool order_ok = false;     // k <= 2
    Tristate z0 = Tristate::Unknown;
    Tristate zk = Tristate::Unknown;
    bool tail_ok = false;      // constant-extension tail integral finite
    bool side_condition = false; // t^2 bounded by a multiple of omega(t)
    double side_constant = 0.0;

    bool passed() const {
        return order_ok && z0 == Tristate::True && zk == Tristate::True && tail_ok &&
               side_condition;
    }
};

struct ExponentFit {
    double slope = 0.0;
    double half_width = 0.0;
};

enum class Verdict { EquivalentWithinConstants, ForwardOnly, BackwardOnly, Inconclusive };

struct EquivalenceReport {
    RatioReport forward;  // sup T(t) / (omega(t)^2 t^{n-1})
    RatioReport backward; // sup L(t) / omega(t)
    HypothesisAudit audit;
    ExponentFit L_fit;
    ExponentFit T_fit;
    Verdict verdict = Verdict::Inconclusive;
    double t_max = 0.0;
    int J = 0;
};

std::string verdict_name(Verdict v);

RatioReport forward_check(const SpectralSpace& space, const RadialProfile& p, const Modulus& m,
                          double t_max, int J, double rel_tol = 1e-12);

RatioReport backward_check(const SpectralSpace& space, const RadialProfile& p, const Modulus& m,
                           double t_max, int J, double rel_tol = 1e-10);

HypothesisAudit hypothesis_audit(const Modulus& m, double t_max = 0.0, int J = 20);

// Least-squares slope of log(value) against log(t); the half-width is the
// standard error of the slope from the fit residuals.
ExponentFit fit_exponents(const FunctionalCurve& curve, std::size_t lo, std::size_t hi);

// Fit over the dyadic grid with the two largest and two smallest points
// dropped to avoid truncation-edge bias.
ExponentFit fit_exponents(const FunctionalCurve& curve);

EquivalenceReport equivalence_report(const SpectralSpace& space, const RadialProfile& p,
                                     const Modulus& m, double t_max, int J);

EquivalenceReport titchmarsh_n1(const RadialProfile& p, double alpha, double t_max = 0.5,
                                int J = 20);

} // namespace lipft
