#pragma once

#include "bsq/common.hpp"

namespace bsq {

// ln Gamma(z) on the principal branch; Im part is arg Gamma(z) in (-pi, pi].
cd lngamma(cd z);
cd gamma_fn(cd z);
cd rgamma(cd z);
double arg_gamma(cd z);

// nu / (2 sinh(pi nu)), with the value 1/(2 pi) at nu = 0.
double nu_over_2sinh(double nu);

// Parabolic cylinder function D_a(w).
cd pcf_D(cd a, cd w);
// e^{w^2/4} D_a(w), free of the Gaussian factor.
cd pcf_D_scaled(cd a, cd w);

// Radius at which the Maclaurin series hands over to the large-|w| expansion.
constexpr double kPcfCrossover = 9.0;

// Largest relative mismatch between the two representations over
// |w| in [8.5, 9.5] and |arg w| <= 3 pi / 4.
double pcf_crossover_residual(cd a);
// Throws AccuracyError when the residual exceeds tol.
void pcf_check_crossover(cd a, double tol = 1e-9);

// Representation-specific entry points (scaled), exposed for verification.
cd pcf_series_scaled(cd a, cd w);
cd pcf_asymptotic_scaled(cd a, cd w);

}  // namespace bsq
