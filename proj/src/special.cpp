#include "bsq/special.hpp"

#include <quadmath.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_gamma.h>

#include <cmath>

namespace bsq {

namespace {

using q128 = __float128;
using c128 = __complex128;

c128 to_q(cd z) {
  c128 r;
  __real__ r = z.real();
  __imag__ r = z.imag();
  return r;
}

cd to_d(c128 z) { return cd(double(crealq(z)), double(cimagq(z))); }

// Bernoulli numbers B_2 .. B_30 as exact ratios.
const long double kBnum[] = {1.0L, -1.0L, 1.0L, -1.0L, 5.0L, -691.0L, 7.0L, -3617.0L,
                             43867.0L, -174611.0L, 854513.0L, -236364091.0L,
                             8553103.0L, -23749461029.0L, 8615841276005.0L};
const long double kBden[] = {6.0L, 30.0L, 42.0L, 30.0L, 66.0L, 2730.0L, 6.0L, 510.0L,
                             798.0L, 330.0L, 138.0L, 2730.0L, 6.0L, 870.0L, 14322.0L};

// ln Gamma(z) for Re z >= 30 by Stirling's series.
c128 lngamma_stirling(c128 z) {
  const q128 half_ln_2pi = 0.918938533204672741780329736405617639861Q;
  c128 s = (z - 0.5Q) * clogq(z) - z + half_ln_2pi;
  c128 zi = 1.0Q / z, zi2 = zi * zi, p = zi;
  for (int k = 1; k <= 15; ++k) {
    q128 b = q128(kBnum[k - 1]) / q128(kBden[k - 1]);
    s += b / q128(2 * k * (2 * k - 1)) * p;
    p *= zi2;
  }
  return s;
}

// 1/Gamma(z) in quad precision via upward shift.
c128 rgamma_q(c128 z) {
  int n = 30 + (crealq(z) < 0 ? int(-crealq(z)) + 1 : 0);
  c128 prod = 1.0Q;
  for (int k = 0; k < n; ++k) prod *= (z + q128(k));
  return prod * cexpq(-lngamma_stirling(z + q128(n)));
}

}  // namespace

cd lngamma(cd z) {
  gsl_sf_result lnr, arg;
  gsl_error_handler_t* old = gsl_set_error_handler_off();
  int status = gsl_sf_lngamma_complex_e(z.real(), z.imag(), &lnr, &arg);
  gsl_set_error_handler(old);
  if (status != GSL_SUCCESS) throw DomainError("lngamma at a pole");
  return cd(lnr.val, arg.val);
}

cd gamma_fn(cd z) { return std::exp(lngamma(z)); }

cd rgamma(cd z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real())) return 0.0;
  return std::exp(-lngamma(z));
}

double arg_gamma(cd z) { return lngamma(z).imag(); }

double nu_over_2sinh(double nu) {
  double x = kPi * nu;
  if (std::abs(x) < 1e-8) return 1.0 / (2.0 * kPi) * (1.0 - x * x / 6.0);
  return nu / (2.0 * std::sinh(x));
}

cd pcf_series_scaled(cd a_, cd w_) {
  c128 a = to_q(a_), w = to_q(w_);
  const q128 sqrt_pi = 1.772453850905516027298167483341145182798Q;
  const q128 ln2 = 0.693147180559945309417232121458176568076Q;
  c128 d0 = cexpq(a * 0.5Q * ln2) * sqrt_pi * rgamma_q((1.0Q - a) * 0.5Q);
  c128 d1 = -cexpq((a + 1.0Q) * 0.5Q * ln2) * sqrt_pi * rgamma_q(-a * 0.5Q);
  c128 b = a + 0.5Q;
  c128 w2 = w * w, w4 = w2 * w2 * 0.25Q;
  // even chain starts at T0 = 1, odd chain at T1 = w
  c128 e_prev2 = 0, e_prev = 1.0Q;
  c128 o_prev2 = 0, o_prev = w;
  c128 even = e_prev, odd = o_prev;
  q128 scale = 1.0Q;
  int quiet = 0;
  for (int n = 0; n < 4000; n += 2) {
    c128 e_next = (e_prev2 * w4 - b * e_prev * w2) / q128((n + 2) * (n + 1));
    c128 o_next = (o_prev2 * w4 - b * o_prev * w2) / q128((n + 3) * (n + 2));
    even += e_next;
    odd += o_next;
    e_prev2 = e_prev, e_prev = e_next;
    o_prev2 = o_prev, o_prev = o_next;
    q128 big = fmaxq(cabsq(even), cabsq(odd));
    scale = fmaxq(scale, big);
    q128 tail = fmaxq(fmaxq(cabsq(e_next), cabsq(o_next)), fmaxq(cabsq(e_prev2), cabsq(o_prev2)));
    if (tail < 1e-36Q * scale) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  c128 d = d0 * even + d1 * odd;
  return to_d(d * cexpq(w2 * 0.25Q));
}

cd pcf_asymptotic_scaled(cd a, cd w) {
  cd w2 = w * w, x = 1.0 / (2.0 * w2);
  // principal sum: w^a sum_s (-1)^s (-a)_{2s} / (s! (2 w^2)^s)
  auto series = [&](cd c, double sign) {
    cd term = 1.0, sum = 1.0;
    double best = 1.0;
    for (int s = 0; s < 200; ++s) {
      cd next = term * sign * (c + double(2 * s)) * (c + double(2 * s + 1)) / double(s + 1) * x;
      if (std::abs(next) > best && s > 2) break;
      term = next;
      sum += term;
      best = std::min(best, std::abs(term));
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  };
  cd main = std::exp(a * std::log(w)) * series(-a, -1.0);
  double ph = std::arg(w);
  if (std::abs(ph) <= kPi / 4) return main;
  double sgn = ph > 0 ? 1.0 : -1.0;
  cd pref = -std::sqrt(2.0 * kPi) * rgamma(-a) * std::exp(sgn * kI * kPi * a);
  cd second = pref * std::exp(w2 * 0.5) * std::exp((-a - 1.0) * std::log(w)) * series(1.0 + a, 1.0);
  return main + second;
}

cd pcf_D_scaled(cd a, cd w) {
  if (std::abs(w) <= kPcfCrossover) return pcf_series_scaled(a, w);
  return pcf_asymptotic_scaled(a, w);
}

cd pcf_D(cd a, cd w) { return std::exp(-0.25 * w * w) * pcf_D_scaled(a, w); }

double pcf_crossover_residual(cd a) {
  double worst = 0;
  for (double r : {8.5, 9.0, 9.5})
    for (int i = -6; i <= 6; ++i) {
      cd w = std::polar(r, 0.75 * kPi * i / 6.0);
      cd s = pcf_series_scaled(a, w), as = pcf_asymptotic_scaled(a, w);
      worst = std::max(worst, std::abs(s - as) / std::max(std::abs(s), 1e-300));
    }
  return worst;
}

void pcf_check_crossover(cd a, double tol) {
  if (pcf_crossover_residual(a) > tol)
    throw AccuracyError("parabolic cylinder representations disagree at the cross-over");
}

}  // namespace bsq
