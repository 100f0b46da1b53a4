#include "bsq/spectral_data.hpp"

#include <cmath>
#include <random>

#include "bsq/spectral_core.hpp"

namespace bsq {

namespace {

bool on_imag_axis(cd k) { return std::abs(k.real()) <= 1e-12 * std::abs(k); }

}  // namespace

cd SpectralData::r1(cd k) const {
  if (k == cd(0.0, 0.0)) throw DomainError("r1: k = 0");
  if (on_circle(k)) return r1_circle(k / std::abs(k));
  if (on_imag_axis(k)) {
    if (k.imag() > 0 && std::abs(k) < 1.0) return r1_segment(k);
    if (k.imag() < 0 && std::abs(k) > 1.0) return r1_ray(k);
  }
  throw DomainError("r1: k not on Gamma_hat_1");
}

cd SpectralData::r2(cd k) const {
  if (k == cd(0.0, 0.0)) throw DomainError("r2: k = 0");
  if (on_circle(k)) return r2_circle(k / std::abs(k));
  if (on_imag_axis(k)) {
    bool inner_lower = k.imag() < 0 && std::abs(k) < 1.0;
    bool outer_upper = k.imag() > 0 && std::abs(k) > 1.0;
    if (inner_lower || outer_upper)
      return r_tilde(k) * std::conj(r1(1.0 / std::conj(k)));
  }
  throw DomainError("r2: k not on Gamma_hat_4");
}

cd SpectralData::g(cd k) const { return r1(k) * r2(k); }

cd SpectralData::f(cd k) const {
  return 1.0 + g(k) + g(1.0 / (kOmega2 * k));
}

cd SpectralData::r2_circle(cd k) const {
  return r_tilde(k) * std::conj(r1_circle(k));
}

cd SpectralData::r1_ray(cd) const {
  throw DomainError(name() + ": r1 not available on (-i, -i inf)");
}

cd SpectralData::r1_segment(cd) const { return 0.0; }

SyntheticParams SyntheticParams::from_seed(std::uint64_t seed) {
  SyntheticParams p;
  if (seed == 0) return p;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> amp(0.7, 1.1), rate(-0.3, 0.3);
  p.amp_a *= amp(gen);
  p.amp_b *= amp(gen);
  p.amp_c *= amp(gen);
  p.ray_amp *= amp(gen);
  p.rate_a += rate(gen);
  p.rate_b += rate(gen);
  p.rate_c += rate(gen);
  p.ray_rate += rate(gen);
  return p;
}

SyntheticSpectral::SyntheticSpectral(SyntheticParams p) : p_(p) {}

SyntheticSpectral::ArcValues SyntheticSpectral::solve(double phi) const {
  const double s4 = std::pow(std::sin(3.0 * phi), 4);
  const double c3 = std::cos(3.0 * phi);
  const double sc = p_.scale;
  cd a = sc * p_.amp_a * s4 * c3 * std::polar(1.0, p_.rate_a * phi);
  cd b = sc * p_.amp_b * s4 * std::polar(1.0, p_.rate_b * phi);
  cd c = sc * p_.amp_c * s4 * c3 * std::polar(1.0, p_.rate_c * phi);
  if (s4 == 0.0) return {a, b, c, 0.0, 0.0, 0.0};

  cd k = std::polar(1.0, phi);
  cd A = k, B = kOmega * k, C = kOmega2 * k;
  cd Ap = 1.0 / k, Bp = 1.0 / (kOmega * k), Cp = 1.0 / (kOmega2 * k);
  cd al = -r_tilde(A) * std::conj(a);
  cd be = b * r_tilde(Cp);
  cd ga = -r_tilde(C) * std::conj(c);
  cd de = a * r_tilde(Bp);
  cd ep = -r_tilde(B) * std::conj(b);
  cd et = c * r_tilde(Ap);
  cd K = al - be * std::conj(ga) + be * std::conj(de) * ep;
  cd L = be * std::conj(de) * et;
  cd x = (K - L * std::conj(K)) / (1.0 - std::norm(L));
  cd y = ep - et * std::conj(x);
  cd w = ga - de * std::conj(y);
  return {a, b, c, x, y, w};
}

cd SyntheticSpectral::r1_circle(cd k) const {
  const double th = angle_2pi(k);
  const double third = kPi / 3.0;
  if (th <= third) return solve(th).a;
  if (th >= 2 * third && th <= 3 * third) return solve(th - 2 * third).b;
  if (th >= 4 * third && th <= 5 * third) return solve(th - 4 * third).c;
  if (th > 5 * third) return solve(2 * kPi - th).x;
  if (th > 3 * third) return solve(4 * third - th).y;
  return solve(2 * third - th).w;
}

cd SyntheticSpectral::r1_ray(cd k) const {
  double s = std::abs(k);
  double u = s - 1.0;
  return p_.scale * p_.ray_amp * u * u * std::exp(-u) *
         std::polar(1.0, p_.ray_rate * s);
}

TabulatedSpectral::TabulatedSpectral(const std::vector<SpectralRecord>& recs,
                                     SpectralMode mode)
    : mode_(mode) {
  std::vector<double> x[6];
  std::vector<cd> a[6], b[6];
  for (const auto& r : recs) {
    if (!on_circle(r.k)) continue;
    double th = angle_2pi(r.k);
    int sx = std::min(5, static_cast<int>(th / (kPi / 3.0)));
    x[sx].push_back(th);
    a[sx].push_back(r.r1);
    b[sx].push_back(r.r2);
  }
  for (int j = 0; j < 6; ++j) {
    if (x[j].size() < 2)
      throw DomainError("TabulatedSpectral: sextant " + std::to_string(j) +
                        " has fewer than two circle nodes");
    r1_[j] = BaryInterp(x[j], a[j]);
    r2_[j] = BaryInterp(x[j], b[j]);
  }
}

namespace {

int sextant(double th) {
  return std::min(5, static_cast<int>(th / (kPi / 3.0)));
}

}  // namespace

cd TabulatedSpectral::r1_circle(cd k) const {
  double th = angle_2pi(k);
  return r1_[sextant(th)](th);
}

cd TabulatedSpectral::r2_circle(cd k) const {
  double th = angle_2pi(k);
  return r2_[sextant(th)](th);
}

PerturbedSpectral::PerturbedSpectral(SpectralPtr base, Target target,
                                     double eps, double center, double width)
    : base_(std::move(base)),
      target_(target),
      eps_(eps),
      center_(center),
      width_(width) {}

cd PerturbedSpectral::bump(cd k) const {
  double d = std::remainder(angle_2pi(k) - center_, 2.0 * kPi) / width_;
  return eps_ * std::exp(-d * d);
}

cd PerturbedSpectral::r1_circle(cd k) const {
  cd v = base_->r1(k);
  return target_ == Target::R1 ? v + bump(k) : v;
}

cd PerturbedSpectral::r2_circle(cd k) const {
  cd v = base_->r2(k);
  return target_ == Target::R2 ? v + bump(k) : v;
}

}  // namespace bsq
