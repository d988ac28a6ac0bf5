#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipft/equivalence.hpp"
#include "lipft/profiles.hpp"

using namespace lipft;

TEST_CASE("forward ratio is exactly constant for the matched power family") {
    auto e3 = SpectralSpace::euclidean(3);
    auto p = power_tail_profile(0.5, 3);
    auto m = Modulus::power(0.5, 2.0);
    auto rep = forward_check(e3, p, m, 0.5, 12);
    // T(t)/(t^{2a} t^{n-1}) = 1/(2a+n-1) = 1/3
    CHECK(rep.ratio_sup == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(rep.stable);
}

TEST_CASE("mismatched modulus makes the forward ratio unstable") {
    auto e3 = SpectralSpace::euclidean(3);
    auto p = power_tail_profile(0.5, 3);
    auto m = Modulus::power(0.9, 2.0); // beta > alpha: ratio grows like t^{-0.8}
    auto rep = forward_check(e3, p, m, 0.5, 12);
    CHECK_FALSE(rep.stable);
    CHECK(rep.ratio_sup_refined > rep.ratio_sup * 1.5);
}

TEST_CASE("modulus that underflows to zero on the grid is rejected") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = power_tail_profile(0.5, 1);
    // t^5000 underflows to exactly 0 deep in the dyadic grid
    CHECK_THROWS_AS(forward_check(e1, p, Modulus::power(5000.0, 2.0), 0.5, 12),
                    DegenerateModulusError);
}

TEST_CASE("backward ratio is stable for the matched pair, unstable otherwise") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = power_tail_profile(0.5, 1);
    auto good = backward_check(e1, p, Modulus::power(0.5, 2.0), 0.5, 12);
    CHECK(good.stable);
    CHECK(good.ratio_sup > 0.0);
    auto bad = backward_check(e1, p, Modulus::power(0.9, 2.0), 0.5, 12);
    CHECK_FALSE(bad.stable);
}

TEST_CASE("exponent fits recover exact power laws") {
    auto e3 = SpectralSpace::euclidean(3);
    auto p = power_tail_profile(0.5, 3);
    auto grid = dyadic_grid(0.5, 12);
    auto fitT = fit_exponents(tail_curve(e3, p, grid));
    CHECK(fitT.slope == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(fitT.half_width < 1e-8);

    FunctionalCurve flat;
    flat.t_values = grid;
    flat.values.assign(grid.size(), 2.5);
    flat.quadrature_errors.assign(grid.size(), 0.0);
    auto fit0 = fit_exponents(flat);
    CHECK(fit0.slope == doctest::Approx(0.0));
    CHECK(fit0.half_width == doctest::Approx(0.0));

    flat.values[4] = 0.0;
    CHECK_THROWS_AS(fit_exponents(flat), FitError);
}

TEST_CASE("hypothesis audit matches the modulus diagnostics") {
    auto good = hypothesis_audit(Modulus::power(0.5, 2.0));
    CHECK(good.order_ok);
    CHECK(good.z0 == Tristate::True);
    CHECK(good.zk == Tristate::True);
    CHECK(good.tail_ok);
    CHECK(good.side_condition);
    CHECK(good.passed());

    auto zkfail = hypothesis_audit(Modulus::power(2.0, 2.0));
    CHECK(zkfail.zk == Tristate::False);
    CHECK_FALSE(zkfail.passed());

    auto order = hypothesis_audit(Modulus::power(0.5, 3.0));
    CHECK_FALSE(order.order_ok);
    CHECK_FALSE(order.passed());
}

TEST_CASE("titchmarsh harness at alpha one half") {
    auto p = power_tail_profile(0.5, 1);
    auto rep = titchmarsh_n1(p, 0.5, 0.5, 12);
    CHECK(rep.forward.ratio_sup == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.verdict == Verdict::EquivalentWithinConstants);
    CHECK(std::abs(rep.L_fit.slope - 0.5) < 0.05);
    CHECK_THROWS_AS(titchmarsh_n1(p, 2.5), ParameterError);
    CHECK_THROWS_AS(titchmarsh_n1(p, -0.1), ParameterError);
}

TEST_CASE("scaling the profile rescales ratios without flipping the verdict") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = power_tail_profile(0.5, 1);
    RadialProfile scaled = p;
    auto base_spec = p.spectral;
    scaled.spectral = [base_spec](double l) { return 5.0 * base_spec(l); };
    scaled.tail_coeff *= 5.0;
    auto m = Modulus::power(0.5, 2.0);

    auto f1 = forward_check(e1, p, m, 0.5, 10);
    auto f5 = forward_check(e1, scaled, m, 0.5, 10);
    CHECK(f5.ratio_sup == doctest::Approx(5.0 * f1.ratio_sup).epsilon(1e-9));
    CHECK(f5.stable == f1.stable);

    auto b1 = backward_check(e1, p, m, 0.5, 10);
    auto b5 = backward_check(e1, scaled, m, 0.5, 10);
    CHECK(b5.ratio_sup == doctest::Approx(std::sqrt(5.0) * b1.ratio_sup).epsilon(1e-7));
    CHECK(b5.stable == b1.stable);
}

TEST_CASE("full report on the hyperbolic backend") {
    auto h3 = SpectralSpace::hyperbolic(3);
    auto p = power_tail_profile(1.0, 3);
    auto m = Modulus::power(1.0, 2.0);
    auto rep = equivalence_report(h3, p, m, 0.5, 10);
    CHECK(std::abs(rep.L_fit.slope - 1.0) < 0.05);
    CHECK(rep.forward.stable);
    CHECK(rep.backward.stable);
}
