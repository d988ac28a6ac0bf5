#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipft/functionals.hpp"
#include "lipft/profiles.hpp"

using namespace lipft;

TEST_CASE("dyadic grid halves from t_max") {
    auto g = dyadic_grid(0.5, 4);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 0.5);
    CHECK(g[4] == 0.03125);
    CHECK_THROWS_AS(dyadic_grid(-1.0, 4), ParameterError);
}

TEST_CASE("zero profile gives identically zero functionals") {
    auto e1 = SpectralSpace::euclidean(1);
    auto z = zero_profile();
    auto grid = dyadic_grid(0.5, 8);
    auto L = lipschitz_curve(e1, z, grid);
    auto T = tail_curve(e1, z, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(L.values[i] == 0.0);
        CHECK(T.values[i] == 0.0);
    }
}

TEST_CASE("tail curve matches the exact power integral") {
    // H = lambda^{-(2a+n)} on [1, inf), a = 0.5, n = 3: T(t) = t^3/3 on t <= 1
    auto e3 = SpectralSpace::euclidean(3);
    auto p = power_tail_profile(0.5, 3);
    auto grid = dyadic_grid(1.0, 10);
    auto T = tail_curve(e3, p, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        CHECK(T.values[i] == doctest::Approx(std::pow(t, 3.0) / 3.0).epsilon(1e-10));
        CHECK_FALSE(T.flagged(i));
    }
    // T is nondecreasing in t (grid is decreasing in t)
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(T.values[i] <= T.values[i - 1]);
}

TEST_CASE("tail curve of an integrable gaussian bump decays superpolynomially") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = spectral_bump(4.0, 0.5);
    auto grid = dyadic_grid(1.0, 6);
    auto T = tail_curve(e1, p, grid);
    // oracle: int_s^inf exp(-((l-4)/w)^2) dl = w sqrt(pi)/2 erfc((s-4)/w)
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double s = 1.0 / grid[i];
        const double expect = 0.5 * 0.5 * std::sqrt(M_PI) * std::erfc((s - 4.0) / 0.5);
        CHECK(T.values[i] == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("non-integrable power tail raises a divergence error") {
    auto e3 = SpectralSpace::euclidean(3);
    RadialProfile p = power_tail_profile(0.5, 3);
    p.tail_exponent = 0.5; // pretend H ~ l^{-1/2}
    CHECK_THROWS_AS(tail_curve(e3, p, dyadic_grid(0.5, 8)), DivergenceError);
    p.tail_exponent = 2.5; // flat-integrable but not against l^2 dmu
    CHECK_THROWS_AS(lipschitz_curve(e3, p, dyadic_grid(0.5, 8)), DivergenceError);
}

TEST_CASE("weighted tail is exact on powers and dominates the flat tail") {
    auto e3 = SpectralSpace::euclidean(3);
    auto p = power_tail_profile(0.5, 3);
    for (double t : dyadic_grid(1.0, 8)) {
        // int_{1/t}^inf l^{-4} l^2 dl = t^{2a}/(2a) = t
        CHECK(weighted_tail(e3, p, t) == doctest::Approx(t).epsilon(1e-9));
    }
    // chain inequality T(t) <= t^{n-1} weighted_tail(t) for t <= 1
    auto e1 = SpectralSpace::euclidean(1);
    auto p1 = power_tail_profile(0.5, 1);
    auto grid = dyadic_grid(1.0, 8);
    auto T3 = tail_curve(e3, p, grid);
    auto T1 = tail_curve(e1, p1, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        CHECK(T3.values[i] <= t * t * weighted_tail(e3, p, t) * (1.0 + 1e-12));
        // n = 1: flat and weighted measures coincide
        CHECK(T1.values[i] == doctest::Approx(weighted_tail(e1, p1, t)).epsilon(1e-10));
    }
}

TEST_CASE("narrow spectral bump reproduces the one-frequency multiplier") {
    auto e1 = SpectralSpace::euclidean(1);
    const double l0 = 2.0;
    const double t = 0.7;
    double prev_err = 1.0;
    for (double w : {0.05, 0.01}) {
        auto p = spectral_bump(l0, w);
        auto L = lipschitz_curve(e1, p, {t}, 1e-11);
        const double mass = w * std::sqrt(M_PI); // int of the bump
        const double expect = std::abs(1.0 - std::cos(l0 * t)) * std::sqrt(mass);
        const double rel = std::abs(L.values[0] - expect) / expect;
        CHECK(rel < 10.0 * w * w); // second-order in the bump width
        CHECK(rel < prev_err);
        prev_err = rel;
    }
}

TEST_CASE("spectral and physical lipschitz routes agree on gaussians") {
    for (int n : {1, 2, 3}) {
        auto space = SpectralSpace::euclidean(n);
        auto p = euclidean_gaussian(space, 0.5);
        for (double t : {1.0, 0.25, 1.0 / 64.0}) {
            auto L = lipschitz_curve(space, p, {t}, 1e-11);
            const double phys = lipschitz_physical(space, p, t);
            CHECK(L.values[0] == doctest::Approx(phys).epsilon(1e-6));
        }
    }
}

TEST_CASE("j split is additive and obeys the proof inequalities") {
    auto e1 = SpectralSpace::euclidean(1);
    auto cases = std::vector<std::pair<SpectralSpace, RadialProfile>>{
        {e1, power_tail_profile(0.5, 1)},
        {e1, euclidean_gaussian(e1, 0.5)},
        {SpectralSpace::hyperbolic(3), h3_rational(SpectralSpace::hyperbolic(3))},
    };
    for (const auto& [space, p] : cases) {
        for (double t : {0.5, 0.125, 1.0 / 64.0}) {
            auto js = j_split(space, p, t, 1e-11);
            auto L = lipschitz_curve(space, p, {t}, 1e-11);
            const double lsq = L.values[0] * L.values[0];
            CHECK(js.J1 + js.J2 == doctest::Approx(lsq).epsilon(1e-8));
            CHECK(js.J2 <= 4.0 * weighted_tail(space, p, t) * (1.0 + 1e-10) + 1e-30);
            auto ks = k_split(space, p, t);
            CHECK(js.J1 <= 2.0 * (ks.K1 + ks.K2) * (1.0 + 1e-9) + 1e-30);
            if (space.rho() == 0.0) CHECK(ks.K2 == 0.0);
        }
    }
}

TEST_CASE("j2 vanishes when the spectrum sits below 1/(2t)") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = spectral_bump(1.0, 0.1);
    const double t = 0.05; // 1/t = 20, bump is negligible there
    auto js = j_split(e1, p, t, 1e-11);
    CHECK(js.J2 <= 1e-12 * js.J1);
}

TEST_CASE("aux tail is exact on powers, monotone, and satisfies the ibp identity") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = power_tail_profile(0.5, 1); // H = l^{-2} on [1, inf)
    CHECK(aux_tail_phi(e1, p, 1.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(aux_tail_phi(e1, p, 4.0) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(aux_tail_phi(e1, p, 2.0) < aux_tail_phi(e1, p, 1.5));
    CHECK(aux_ibp_residual(e1, p, 0.25) < 1e-6);

    auto e3 = SpectralSpace::euclidean(3);
    auto g = euclidean_gaussian(e3, 0.5);
    CHECK(aux_ibp_residual(e3, g, 0.5) < 1e-6);
}

TEST_CASE("dyadic sum matches the geometric series for powers") {
    auto m = Modulus::power(0.5, 2.0);
    auto r = dyadic_sum_check(m, 0.5, 16);
    CHECK(r.bound_constant == doctest::Approx(2.0).epsilon(1e-9));
    auto m2 = Modulus::power(0.25, 2.0);
    auto r2 = dyadic_sum_check(m2, 0.3, 16);
    CHECK(r2.bound_constant ==
          doctest::Approx(1.0 / (1.0 - std::pow(4.0, -0.25))).epsilon(1e-9));

    // stability in J for the log family
    auto ml = Modulus::power_log(0.5, 1.0, 2.0);
    auto a = dyadic_sum_check(ml, 0.5, 32);
    auto b = dyadic_sum_check(ml, 0.5, 64);
    CHECK(std::abs(a.bound_constant - b.bound_constant) < 0.01 * b.bound_constant);

    CHECK_THROWS_AS(dyadic_sum_check(Modulus::power(0.01, 2.0), 0.5, 16), InapplicableError);
    CHECK_THROWS_AS(dyadic_sum_check(m, 0.5, 4), ParameterError);
    CHECK_THROWS_AS(dyadic_sum_check(m, 2.0, 16), DomainError);
}

TEST_CASE("lipschitz curve vanishes with t") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = euclidean_gaussian(e1, 0.5);
    auto grid = dyadic_grid(0.5, 20);
    auto L = lipschitz_curve(e1, p, grid);
    CHECK(L.values.back() <= 1e-3 * L.values.front());
}
