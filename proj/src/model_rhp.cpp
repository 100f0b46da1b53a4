#include "bsq/model_rhp.hpp"

#include <cmath>

#include "bsq/special.hpp"

namespace bsq {

namespace {

Mat3 swap12() {
  Mat3 s = Mat3::Zero();
  s(0, 1) = s(1, 0) = s(2, 2) = 1.0;
  return s;
}

Mat3 unit_with(int i, int j, cd v) {
  Mat3 m = Mat3::Identity();
  m(i, j) = v;
  return m;
}

Mat3 sigma_exp(double x) {
  Mat3 m = Mat3::Identity();
  m(1, 1) = std::exp(x);
  m(2, 2) = std::exp(-x);
  return m;
}

double den_plus(const ModelParams2& p) { return 1.0 + std::norm(p.q2); }
double den_minus(const ModelParams2& p) { return 1.0 - std::norm(p.q5) - std::norm(p.q6); }

// z^c with the given argument.
cd power(cd z, double arg, cd c) { return std::exp(c * cd(std::log(std::abs(z)), arg)); }

struct Args {
  double arg, arg0;
};

Args sector_args(cd z, int sector) {
  double a = std::arg(z);
  if (sector == 4 && a > 0) a -= 2 * kPi;
  if (sector == 3 && a < 0) a += 2 * kPi;
  if (sector == 1 && a < 0) a = 0;
  if (sector == 6 && a > 0) a = 0;
  double a0 = (sector >= 4) ? a + 2 * kPi : a;
  return {a, a0};
}

// z^{-i(2 nu5 - nu4)} z_(0)^{-i(2 nu2 - nu4)}
cd e_factor(const ModelParams2& p, cd z, Args g) {
  return power(z, g.arg, -kI * (2 * p.nu5 - p.nu4)) * power(z, g.arg0, -kI * (2 * p.nu2 - p.nu4));
}

struct HalfConsts {
  cd c33, alpha, c22, gamma;
};

HalfConsts half_consts(const ModelParams2& p, bool upper) {
  double nu = p.nu_hat2;
  if (upper)
    return {std::exp(kPi * nu / 4), std::polar(1.0, -kPi / 4), std::exp(-3 * kPi * nu / 4),
            std::polar(1.0, -3 * kPi / 4)};
  double s = kPi * (p.nu4 - 2 * p.nu2);
  return {std::exp(-3 * kPi * nu / 4 - s), std::polar(1.0, 3 * kPi / 4),
          std::exp(kPi * nu / 4 + s), std::polar(1.0, kPi / 4)};
}

// psi diag(1, e^{iz^2/4}, e^{-iz^2/4})
Mat3 psi_scaled(const ModelParams2& p, cd z, bool upper) {
  HalfConsts h = half_consts(p, upper);
  BetaPair b = beta_model2(p);
  cd a = -kI * p.nu_hat2;
  cd wa = h.alpha * z, wg = h.gamma * z;
  Mat3 m = Mat3::Zero();
  m(0, 0) = 1.0;
  m(2, 2) = h.c33 * pcf_D_scaled(a, wa);
  m(1, 2) = h.c33 * h.alpha * b.b12 * pcf_D_scaled(a - 1.0, wa);
  m(1, 1) = h.c22 * pcf_D_scaled(-a, wg);
  m(2, 1) = h.c22 * h.gamma * b.b21 * pcf_D_scaled(-a - 1.0, wg);
  return m;
}

// B(z) of the sector
Mat3 b_factor(const ModelParams2& p, int sector) {
  cd pp = p.p();
  switch (sector) {
    case 1: return unit_with(2, 1, -pp / den_plus(p));
    case 3: return unit_with(1, 2, std::conj(pp) / den_minus(p));
    case 4: return unit_with(2, 1, pp / den_minus(p));
    case 6: return unit_with(1, 2, -std::conj(pp) / den_plus(p));
    default: return Mat3::Identity();
  }
}

}  // namespace

std::string ray_name(CrossRay r) {
  switch (r) {
    case CrossRay::X1: return "X1";
    case CrossRay::X2: return "X2";
    case CrossRay::X3: return "X3";
    case CrossRay::X4: return "X4";
    case CrossRay::RPlus: return "R+";
    case CrossRay::RMinus: return "R-";
  }
  return "?";
}

cd ray_direction(CrossRay r) {
  switch (r) {
    case CrossRay::X1: return std::polar(1.0, kPi / 4);
    case CrossRay::X2: return std::polar(1.0, 3 * kPi / 4);
    case CrossRay::X3: return std::polar(1.0, -3 * kPi / 4);
    case CrossRay::X4: return std::polar(1.0, -kPi / 4);
    case CrossRay::RPlus: return 1.0;
    case CrossRay::RMinus: return -1.0;
  }
  return 1.0;
}

ModelParams1 ModelParams1::make(cd q) {
  if (std::abs(q) >= 1.0) throw AdmissibilityError("model 1 requires |q| < 1");
  ModelParams1 p;
  p.q = q;
  p.nu = -std::log1p(-std::norm(q)) / (2 * kPi);
  return p;
}

double ModelParams2::constraint_residual() const {
  return std::abs(q4 - std::conj(q5) - q2 * std::conj(q6));
}

ModelParams2 ModelParams2::make(cd q2, cd q4, cd q5, cd q6) {
  ModelParams2 p;
  p.q2 = q2, p.q4 = q4, p.q5 = q5, p.q6 = q6;
  double a = 1.0 + std::norm(q2) - std::norm(q4), b = 1.0 - std::norm(q5) - std::norm(q6);
  if (!(a > 0) || !(b > 0)) throw AdmissibilityError("model 2 positivity conditions fail");
  if (p.constraint_residual() > 1e-12) throw AdmissibilityError("q4 - conj(q5) - q2 conj(q6) != 0");
  p.nu2 = -std::log1p(std::norm(q2)) / (2 * kPi);
  p.nu4 = -std::log(a) / (2 * kPi);
  p.nu5 = -std::log(b) / (2 * kPi);
  p.nu_hat2 = p.nu2 + p.nu5 - p.nu4;
  return p;
}

ModelParams2 ModelParams2::from_q256(cd q2, cd q5, cd q6) {
  return make(q2, std::conj(q5) + q2 * std::conj(q6), q5, q6);
}

ModelParams2 embed_model1(const ModelParams1& p) { return ModelParams2::make(0.0, 0.0, 0.0, p.q); }

BetaPair beta_model1(const ModelParams1& p) {
  double nu = p.nu;
  // 1 / ((e^{pi nu} - e^{-pi nu}) Gamma(-i nu)) = (-i nu) rgamma(1 - i nu) / (2 sinh(pi nu))
  cd r12 = -kI * nu_over_2sinh(nu) * rgamma(1.0 - kI * nu);
  cd r21 = kI * nu_over_2sinh(nu) * rgamma(1.0 + kI * nu);
  double pre = std::exp(kPi * nu / 2) * std::sqrt(2 * kPi);
  return {std::polar(1.0, 3 * kPi / 4) * pre * std::conj(p.q) * r12,
          std::polar(1.0, -3 * kPi / 4) * pre * p.q * r21};
}

BetaPair beta_model2(const ModelParams2& p) {
  double nu = p.nu_hat2;
  cd pp = p.p();
  cd r12 = -kI * nu_over_2sinh(nu) * rgamma(1.0 - kI * nu);
  cd r21 = kI * nu_over_2sinh(nu) * rgamma(1.0 + kI * nu);
  double pre = std::exp(kPi * nu / 2) * std::sqrt(2 * kPi);
  return {std::polar(1.0, 3 * kPi / 4) * pre * std::exp(2 * kPi * (p.nu4 - p.nu2)) * std::conj(pp) * r12,
          std::polar(1.0, -3 * kPi / 4) * pre * std::exp(2 * kPi * p.nu2) * pp * r21};
}

int sector_of(cd z) {
  double a = std::arg(z);
  if (a >= 0) return a < kPi / 4 ? 1 : a < 3 * kPi / 4 ? 2 : 3;
  return a < -3 * kPi / 4 ? 4 : a < -kPi / 4 ? 5 : 6;
}

Mat3 psi_matrix_half(const ModelParams2& p, cd z, bool upper) {
  Mat3 m = psi_scaled(p, z, upper);
  cd g = std::exp(kI * z * z / 4.0);
  m.col(1) /= g;
  m.col(2) *= g;
  return m;
}

Mat3 psi_matrix(const ModelParams2& p, cd z) {
  if (z.imag() == 0.0) throw DomainError("psi is evaluated off the real line");
  return psi_matrix_half(p, z, z.imag() > 0);
}

Mat3 psi_derivative(const ModelParams2& p, cd z, bool upper) {
  HalfConsts h = half_consts(p, upper);
  BetaPair b = beta_model2(p);
  cd a = -kI * p.nu_hat2;
  // d/dz D_c(s z) = s (-(s z / 2) D_c + c D_{c-1})
  auto dD = [](cd c, cd s, cd z) {
    cd w = s * z;
    return s * (-0.5 * w * pcf_D(c, w) + c * pcf_D(c - 1.0, w));
  };
  Mat3 m = Mat3::Zero();
  m(2, 2) = h.c33 * dD(a, h.alpha, z);
  m(1, 2) = h.c33 * h.alpha * b.b12 * dD(a - 1.0, h.alpha, z);
  m(1, 1) = h.c22 * dD(-a, h.gamma, z);
  m(2, 1) = h.c22 * h.gamma * b.b21 * dD(-a - 1.0, h.gamma, z);
  return m;
}

Mat3 psi_ode_coefficient(const ModelParams2& p, cd z) {
  BetaPair b = beta_model2(p);
  Mat3 m = Mat3::Zero();
  m(1, 1) = -kI * z / 2.0;
  m(2, 2) = kI * z / 2.0;
  m(1, 2) = kI * b.b12;
  m(2, 1) = -kI * b.b21;
  return m;
}

Mat3 v_psi_positive(const ModelParams2& p) {
  cd pp = p.p();
  return unit_with(1, 2, std::conj(pp) / den_plus(p)) * sigma_exp(kPi * (2 * p.nu2 - p.nu4)) *
         unit_with(2, 1, -pp / den_plus(p));
}

Mat3 v_psi_negative(const ModelParams2& p) {
  cd pp = p.p();
  return unit_with(2, 1, -pp / den_minus(p)) * sigma_exp(kPi * (p.nu4 - 2 * p.nu5)) *
         unit_with(1, 2, std::conj(pp) / den_minus(p));
}

Mat3 mX_sector(const ModelParams2& p, cd z, int sector) {
  if (sector < 1 || sector > 6) throw DomainError("sector index out of range");
  if (z == 0.0) throw DomainError("model solution is singular at the origin");
  Mat3 m = psi_scaled(p, z, sector <= 3);
  // E B^{-1} E^{-1} with E = diag(1, e^{-iz^2/4}, e^{iz^2/4})
  Mat3 b = b_factor(p, sector);
  Mat3 conj = Mat3::Identity();
  if (b(2, 1) != 0.0) conj(2, 1) = -b(2, 1) * std::exp(kI * z * z / 2.0);
  if (b(1, 2) != 0.0) conj(1, 2) = -b(1, 2) * std::exp(-kI * z * z / 2.0);
  Args g = sector_args(z, sector);
  double mu1 = p.nu5 - p.nu4 / 2, mu2 = p.nu2 - p.nu4 / 2;
  cd s = power(z, g.arg, -kI * mu1) * power(z, g.arg0, -kI * mu2);
  Mat3 pinv = Mat3::Identity();
  pinv(1, 1) = s;
  pinv(2, 2) = 1.0 / s;
  return m * conj * pinv;
}

Mat3 mX_eval(const ModelParams2& p, cd z) { return mX_sector(p, z, sector_of(z)); }

Mat3 mX_eval(const ModelParams1& p, cd z) {
  Mat3 s = swap12();
  return s * mX_eval(embed_model1(p), z) * s;
}

Mat3 vX(const ModelParams2& p, CrossRay ray, cd z) {
  int sector = ray == CrossRay::X1 ? 1 : ray == CrossRay::X2 ? 3 : ray == CrossRay::X3 ? 4 : 6;
  Args g = sector_args(z, sector);
  cd e = e_factor(p, z, g);
  cd pp = p.p();
  cd ez = std::exp(kI * z * z / 2.0);
  switch (ray) {
    case CrossRay::X1: return unit_with(2, 1, -pp / den_plus(p) * e * ez);
    case CrossRay::X2: return unit_with(1, 2, -std::conj(pp) / den_minus(p) / e / ez);
    case CrossRay::X3: return unit_with(2, 1, pp / den_minus(p) * e * ez);
    case CrossRay::X4: return unit_with(1, 2, std::conj(pp) / den_plus(p) / e / ez);
    default: return Mat3::Identity();
  }
}

Mat3 vX(const ModelParams1& p, CrossRay ray, cd z) {
  double a = std::arg(z);
  cd zp = power(z, a, -2.0 * kI * p.nu);
  cd ez = std::exp(kI * z * z / 2.0);
  double d = 1.0 - std::norm(p.q);
  switch (ray) {
    case CrossRay::X1: return unit_with(2, 0, -p.q * zp * ez);
    case CrossRay::X2: return unit_with(0, 2, -std::conj(p.q) / d / zp / ez);
    case CrossRay::X3: return unit_with(2, 0, p.q / d * zp * ez);
    case CrossRay::X4: return unit_with(0, 2, std::conj(p.q) / zp / ez);
    default: return Mat3::Identity();
  }
}

Mat3 m1_pattern(const ModelParams2& p) {
  BetaPair b = beta_model2(p);
  Mat3 m = Mat3::Zero();
  m(1, 2) = b.b12;
  m(2, 1) = b.b21;
  return m;
}

Mat3 m1_pattern(const ModelParams1& p) {
  BetaPair b = beta_model1(p);
  Mat3 m = Mat3::Zero();
  m(0, 2) = b.b12;
  m(2, 0) = b.b21;
  return m;
}

namespace {

// sectors on the + (left) and - (right) side of each oriented ray
std::pair<int, int> ray_sectors(CrossRay r) {
  switch (r) {
    case CrossRay::X1: return {2, 1};
    case CrossRay::X2: return {3, 2};
    case CrossRay::X3: return {5, 4};
    case CrossRay::X4: return {6, 5};
    case CrossRay::RPlus: return {1, 6};
    case CrossRay::RMinus: return {4, 3};
  }
  return {0, 0};
}

template <class Eval, class Jump>
std::vector<JumpResidual> residuals(const std::vector<double>& radii, Eval eval_sector, Jump jump) {
  std::vector<JumpResidual> out;
  const double h = 1e-6;
  for (CrossRay r : {CrossRay::X1, CrossRay::X2, CrossRay::X3, CrossRay::X4, CrossRay::RPlus,
                     CrossRay::RMinus})
    for (double rho : radii) {
      cd d = ray_direction(r), z = rho * d, n = kI * d;
      auto [sp, sm] = ray_sectors(r);
      Mat3 v = jump(r, z);
      Mat3 mp = eval_sector(z, sp), mm = eval_sector(z, sm);
      double analytic = max_abs(mp - mm * v);
      // boundary values by two-step extrapolation of normal offsets
      Mat3 op = 2.0 * eval_sector(z + h * n, sp) - eval_sector(z + 2 * h * n, sp);
      Mat3 om = 2.0 * eval_sector(z - h * n, sm) - eval_sector(z - 2 * h * n, sm);
      out.push_back({r, z, analytic, max_abs(op - om * v)});
    }
  return out;
}

}  // namespace

std::vector<JumpResidual> mX_jump_residuals(const ModelParams2& p, const std::vector<double>& radii) {
  return residuals(
      radii, [&](cd z, int s) { return mX_sector(p, z, s); },
      [&](CrossRay r, cd z) { return vX(p, r, z); });
}

std::vector<JumpResidual> mX_jump_residuals(const ModelParams1& p, const std::vector<double>& radii) {
  ModelParams2 e = embed_model1(p);
  Mat3 s = swap12();
  return residuals(
      radii, [&](cd z, int sec) -> Mat3 { return s * mX_sector(e, z, sec) * s; },
      [&](CrossRay r, cd z) { return vX(p, r, z); });
}

namespace {

template <class P>
double m1_dev(const P& p, double r) {
  Mat3 m1 = m1_pattern(p);
  double worst = 0;
  for (int k = 0; k < 4; ++k) {
    cd z = std::polar(r, kPi / 8 + k * kPi / 2);
    worst = std::max(worst, max_abs(z * (mX_eval(p, z) - Mat3::Identity()) - m1));
  }
  return worst;
}

}  // namespace

double m1_deviation(const ModelParams2& p, double r) { return m1_dev(p, r); }
double m1_deviation(const ModelParams1& p, double r) { return m1_dev(p, r); }

}  // namespace bsq
