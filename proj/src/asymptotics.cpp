#include "bsq/asymptotics.hpp"

#include <cmath>

#include "bsq/special.hpp"

namespace bsq {

cd phase_saddle(PhaseId id, const SaddleSet& S) {
  switch (id) {
    case PhaseId::P31: return kOmega * S.k4;
    case PhaseId::P32: return kOmega2 * S.k2;
    case PhaseId::P21: return S.k4;
  }
  return S.k4;
}

double dphi_dzeta(PhaseId id, double zeta) {
  cd k = phase_saddle(id, saddle_points(zeta));
  int p = phase_pair(id);
  return (l_func(p / 10, k) - l_func(p % 10, k)).imag();
}

QCoefficients q_coefficients(double zeta, const SpectralData& sd, double tol) {
  SaddleSet S = saddle_points(zeta);
  cd k2 = S.k2, ks = kOmega2 * k2;
  auto mod_root = [](cd k) { return std::sqrt(std::abs(r_tilde(k))); };
  QCoefficients q;
  q.q_tilde1 = mod_root(S.k4) * sd.r1(S.k4);
  cd k4p = 1.0 / (kOmega * k2), k5 = kOmega * k2, k6 = 1.0 / k2;
  q.q4 = mod_root(k4p) * sd.r1(k4p);
  q.q5 = mod_root(k5) * sd.r1(k5);
  q.q6 = mod_root(k6) * sd.r1(k6);
  cd root = std::sqrt(r_tilde(ks)), r1s = sd.r1(ks);
  auto residual = [&](cd q2) { return std::abs(q.q4 - std::conj(q.q5) - q2 * std::conj(q.q6)); };
  q.q2 = root * r1s;
  q.admissibility_residual = residual(q.q2);
  if (q.admissibility_residual > tol) {
    cd alt = -root * r1s;
    double ra = residual(alt);
    if (ra > tol) throw AdmissibilityError("q4 - conj(q5) - q2 conj(q6) fails on both square-root branches");
    q.q2 = alt;
    q.sqrt_sign = -1;
    q.flipped = true;
    q.admissibility_residual = ra;
  }
  return q;
}

std::string which_name(SaddleWhich w) {
  return w == SaddleWhich::OmegaK4 ? "saddle_omega_k4" : "saddle_omega2_k2";
}

namespace {

double checked_nu(double nu, const char* name) {
  if (nu < -1e-12) throw AdmissibilityError(std::string(name) + " is negative");
  return nu < 0 ? 0.0 : nu;
}

AsymptoticTerm make_term(SaddleWhich w, double nu, cd amp_complex_unit, double phase_const,
                         double carrier) {
  AsymptoticTerm a;
  a.which = w;
  a.nu = nu;
  a.carrier = carrier;
  if (nu == 0.0) {
    a.zero_nu = true;
    a.amplitude = 0.0;
    a.phase = 0.0;
    return a;
  }
  cd A = std::sqrt(nu) * amp_complex_unit;
  a.amplitude = A.real();
  a.imag_residual = std::abs(A.imag()) / std::abs(A);
  a.phase = phase_const + arg_gamma(cd(0.0, nu)) + carrier;
  return a;
}

}  // namespace

LeadingTerm leading_term(double zeta, double t, const ParametrixBundle& b, const QCoefficients& q) {
  if (t < 2.0) throw DomainError("t must be at least 2");
  SaddleSet S = saddle_points(zeta);
  cd s1 = kOmega * S.k4, s2 = kOmega2 * S.k2;
  double nu1 = checked_nu(b.nus.nu1, "nu1"), nuh = checked_nu(b.nus.nu_hat2, "nu_hat2");
  const double c = -4.0 * kSqrt3;

  cd u1 = c * dphi_dzeta(PhaseId::P31, zeta) /
          (-kI * s1 * b.zstar.z1 * std::sqrt(std::abs(r_tilde(1.0 / S.k4)))) * std::sin(std::arg(s1));
  cd u2 = c * std::sqrt(std::abs(r_tilde(1.0 / S.k2))) * dphi_dzeta(PhaseId::P32, zeta) /
          (-kI * s2 * b.zstar.z2) * std::sin(std::arg(s2));

  double car1 = -t * phi(PhaseId::P31, zeta, s1).imag();
  double car2 = -t * phi(PhaseId::P32, zeta, s2).imag();
  double c1 = 0.75 * kPi - std::arg(q.q_tilde1) + b.log_d10.imag();
  double c2 = 0.75 * kPi - std::arg(q.p()) + b.log_d20.imag();

  LeadingTerm L;
  L.terms[0] = make_term(SaddleWhich::OmegaK4, nu1, u1, c1, car1);
  L.terms[1] = make_term(SaddleWhich::Omega2K2, nuh, u2, c2, car2);
  double st = std::sqrt(t);
  L.u = 0;
  for (auto& a : L.terms)
    if (!a.zero_nu) L.u += a.amplitude / st * std::cos(a.phase);
  return L;
}

GridResult evaluate_grid(const std::vector<double>& zetas, const std::vector<double>& ts,
                         SpectralPtr sd) {
  GridResult out;
  if (zetas.empty() || ts.empty()) return out;
  for (double zeta : zetas) {
    try {
      Parametrix P(zeta, sd);
      QCoefficients q = q_coefficients(zeta, *sd);
      ParametrixBundle b0 = phase_factors(P, ts.front());
      for (double t : ts) {
        try {
          LeadingTerm L = leading_term(zeta, t, with_time(b0, t), q);
          out.rows.push_back({zeta, t, zeta * t, L.u, L.terms[0].amplitude, L.terms[1].amplitude,
                              L.terms[0].phase, L.terms[1].phase, L.terms[0].nu, L.terms[1].nu});
        } catch (const Error& e) {
          out.defects.push_back({zeta, t, e.what()});
        }
      }
    } catch (const Error& e) {
      for (double t : ts) out.defects.push_back({zeta, t, e.what()});
    }
  }
  return out;
}

}  // namespace bsq
