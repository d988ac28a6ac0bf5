#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lipft/functionals.hpp"
#include "lipft/profiles.hpp"
#include "lipft/spaces.hpp"

using namespace lipft;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("Euclidean spherical functions match the closed forms") {
    auto e1 = SpectralSpace::euclidean(1);
    auto e2 = SpectralSpace::euclidean(2);
    auto e3 = SpectralSpace::euclidean(3);
    CHECK(e1.phi(2.0, 1.0) == doctest::Approx(std::cos(2.0)).epsilon(1e-14));
    CHECK(e2.phi(3.0, 0.5) == doctest::Approx(std::cyl_bessel_j(0.0, 1.5)).epsilon(1e-13));
    CHECK(e3.phi(2.0, 1.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-14));
    CHECK(e3.phi(0.0, 5.0) == doctest::Approx(1.0));
    for (auto* s : {&e1, &e2, &e3}) {
        CHECK(s->rho() == 0.0);
        CHECK(s->phi(1.0, 0.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("hyperbolic spherical functions") {
    auto h3 = SpectralSpace::hyperbolic(3);
    CHECK(h3.rho() == doctest::Approx(1.0));
    // closed form sinc(lambda t) * t / sinh t
    CHECK(h3.phi(1.0, 1.0) == doctest::Approx(std::sin(1.0) / std::sinh(1.0)).epsilon(1e-14));
    CHECK(h3.phi(0.5, 2.0) ==
          doctest::Approx(std::sin(1.0) / (0.5 * std::sinh(2.0))).epsilon(1e-14));

    auto h2 = SpectralSpace::hyperbolic(2);
    CHECK(h2.rho() == doctest::Approx(0.5));
    // the production cosine-kernel route vs the independent angular route
    for (double lam : {0.3, 1.0, 4.0}) {
        for (double t : {0.2, 1.0, 3.0}) {
            CHECK(h2.phi(lam, t) == doctest::Approx(phi_h2_angular(lam, t)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(SpectralSpace::hyperbolic(4), UnsupportedDimensionError);
}

TEST_CASE("one_minus_phi is cancellation free at tiny arguments") {
    auto e1 = SpectralSpace::euclidean(1);
    const double lam = 1.0, t = 1e-8;
    const double expected = 2.0 * std::pow(std::sin(0.5 * lam * t), 2);
    CHECK(e1.one_minus_phi(lam, t) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(e1.one_minus_phi(lam, t) > 0.0);

    auto e3 = SpectralSpace::euclidean(3);
    // series head: u^2/6 for 1 - sinc u
    CHECK(e3.one_minus_phi(1e-6, 1e-6) == doctest::Approx(1e-24 / 6.0).epsilon(1e-9));

    auto h3 = SpectralSpace::hyperbolic(3);
    // at lambda = 0 the gap is 1 - t/sinh t
    CHECK(h3.one_minus_phi(0.0, 1e-5) == doctest::Approx(1e-10 / 6.0).epsilon(1e-6));

    auto h2 = SpectralSpace::hyperbolic(2);
    const double q = 1.0 + 0.25; // lambda^2 + rho^2 at lambda 1
    CHECK(h2.one_minus_phi(1.0, 1e-6) == doctest::Approx(q * 1e-12 / 4.0).epsilon(1e-6));
}

TEST_CASE("plancherel densities") {
    auto e3 = SpectralSpace::euclidean(3);
    CHECK(e3.density_base(2.0) == doctest::Approx(4.0));
    CHECK(e3.plancherel_normalization() == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-8));
    auto e1 = SpectralSpace::euclidean(1);
    CHECK(e1.plancherel_normalization() == doctest::Approx(1.0 / kPi).epsilon(1e-8));
    auto e2 = SpectralSpace::euclidean(2);
    CHECK(e2.plancherel_normalization() == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-8));
    auto h3 = SpectralSpace::hyperbolic(3);
    CHECK(h3.plancherel_normalization() ==
          doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-6));
    auto h2 = SpectralSpace::hyperbolic(2);
    CHECK(h2.density_base(2.0) == doctest::Approx(2.0 * std::tanh(2.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("gaussian transform matches the closed form") {
    for (int n : {1, 2, 3}) {
        auto space = SpectralSpace::euclidean(n);
        auto p = euclidean_gaussian(space, 0.5);
        std::vector<double> lam = {0.0, 0.5, 1.0, 2.0, 4.0};
        auto got = spherical_transform(space, p, lam, 1e-11);
        for (std::size_t i = 0; i < lam.size(); ++i) {
            const double expect = std::pow(2.0 * kPi, 0.5 * n) * std::exp(-0.5 * lam[i] * lam[i]);
            CHECK(got[i].second == doctest::Approx(expect).epsilon(1e-8));
        }
    }
}

TEST_CASE("h3 transforms match the rational and gaussian closed forms") {
    auto h3 = SpectralSpace::hyperbolic(3);
    std::vector<double> lam = {0.25, 1.0, 3.0};
    auto rat = h3_rational(h3);
    auto got = spherical_transform(h3, rat, lam, 1e-11);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double d = 1.0 + lam[i] * lam[i];
        CHECK(got[i].second == doctest::Approx(8.0 * kPi / (d * d)).epsilon(1e-8));
    }
    auto bump = h3_gaussian_bump(h3);
    auto got2 = spherical_transform(h3, bump, lam, 1e-11);
    for (std::size_t i = 0; i < lam.size(); ++i) {
        const double expect = std::pow(kPi, 1.5) * std::exp(-0.25 * lam[i] * lam[i]);
        CHECK(got2[i].second == doctest::Approx(expect).epsilon(1e-8));
    }
}

TEST_CASE("plancherel norm equality on both routes") {
    for (int n : {1, 2, 3}) {
        auto space = SpectralSpace::euclidean(n);
        auto p = euclidean_gaussian(space, 0.5);
        const double phys = physical_l2_norm_sq(space, p);
        // spectral mass of H against the base density, analytic profile
        const double spec = aux_tail_phi(space, p, 1e-12);
        CHECK(spec == doctest::Approx(phys).epsilon(1e-8));
    }
    auto h3 = SpectralSpace::hyperbolic(3);
    auto p = h3_rational(h3);
    CHECK(aux_tail_phi(h3, p, 1e-12) ==
          doctest::Approx(physical_l2_norm_sq(h3, p)).epsilon(1e-6));
}

TEST_CASE("spherical mean reduces to endpoint averages and is exact on constants") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = euclidean_gaussian(e1, 1.0);
    CHECK(spherical_mean_direct(e1, p, 2.0, 0.5, 1e-12) ==
          doctest::Approx(0.5 * (std::exp(-6.25) + std::exp(-2.25))).epsilon(1e-14));
    auto e3 = SpectralSpace::euclidean(3);
    RadialProfile c;
    c.name = "const";
    c.physical = [](double) { return 1.0; };
    CHECK(spherical_mean_direct(e3, c, 0.7, 0.3, 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
    // deviation form agrees with the plain difference
    auto pg = euclidean_gaussian(e3, 1.0);
    const double d = spherical_mean_deviation(e3, pg, 0.7, 0.3, 1e-13);
    const double ref = spherical_mean_direct(e3, pg, 0.7, 0.3, 1e-13) - pg.physical(0.7);
    CHECK(d == doctest::Approx(ref).epsilon(1e-9));
}

TEST_CASE("lemma grid estimates are within the proven bounds") {
    std::vector<double> lam, ts;
    for (int c = -6; c <= 6; ++c) lam.push_back(std::ldexp(1.0, c));
    for (int c = -6; c <= 6; ++c) ts.push_back(std::ldexp(1.0, c));
    for (auto space : {SpectralSpace::euclidean(1), SpectralSpace::euclidean(2),
                       SpectralSpace::euclidean(3), SpectralSpace::hyperbolic(2),
                       SpectralSpace::hyperbolic(3)}) {
        auto est = lemma_estimates(space, lam, ts);
        CHECK(est.max_abs_phi <= 1.0 + 1e-12);
        CHECK(est.worst_quadratic_ratio <= 1.0 + 1e-9);
        CHECK(est.min_gap_constant > 0.0);
    }
}

TEST_CASE("inverse transform round trip on the n=1 gaussian") {
    auto e1 = SpectralSpace::euclidean(1);
    auto p = euclidean_gaussian(e1, 0.5);
    std::vector<double> lam(2049);
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = 40.0 * double(i) / 2048.0;
    auto fhat = spherical_transform(e1, p, lam, 1e-11);
    std::vector<double> ts = {0.25, 0.5, 1.0, 2.0};
    auto back = inverse_transform(e1, fhat, ts);
    for (std::size_t i = 0; i < ts.size(); ++i)
        CHECK(back[i].second == doctest::Approx(p.physical(ts[i])).epsilon(1e-7));
}

TEST_CASE("translate_spectral applies the squared multiplier") {
    auto e1 = SpectralSpace::euclidean(1);
    std::vector<std::pair<double, double>> H = {{1.0, 2.0}, {2.0, 3.0}};
    auto out = translate_spectral(e1, H, 0.5);
    for (std::size_t i = 0; i < H.size(); ++i) {
        const double m = e1.one_minus_phi(H[i].first, 0.5);
        CHECK(out[i].second == doctest::Approx(m * m * H[i].second));
    }
    CHECK_THROWS_AS(translate_spectral(e1, H, 0.0), DomainError);
}
