#pragma once

#include "lipft/spaces.hpp"

namespace lipft {

// Bundled test profiles. The spectral side H(lambda) is normalized so that
// the Plancherel identity reads  ||f||_2^2 = int_0^inf H(l) density_base(l) dl
// exactly: for profiles built from a physical f this means
// H = plancherel_normalization * fhat^2.

// f(t) = exp(-beta t^2) on R^n; fhat = (pi/beta)^{n/2} exp(-l^2/(4 beta)).
RadialProfile euclidean_gaussian(const SpectralSpace& space, double beta = 0.5);

// H^3: f(t) = e^{-t} t/sinh t; fhat = 8 pi / (1+l^2)^2.
RadialProfile h3_rational(const SpectralSpace& space);

// H^3: f(t) = e^{-t^2} t/sinh t; fhat = pi^{3/2} exp(-l^2/4).
RadialProfile h3_gaussian_bump(const SpectralSpace& space);

// H^2: f(t) = exp(-beta t^2); spectral side numeric only.
RadialProfile h2_gaussian(double beta = 1.0);

// Spectral-only power tail: H(l) = l^{-(2 alpha + n)} for l >= 1, else 0.
RadialProfile power_tail_profile(double alpha, int n);

// Spectral-only Gaussian bump at l = center with the given width.
RadialProfile spectral_bump(double center, double width);

RadialProfile zero_profile();

} // namespace lipft
