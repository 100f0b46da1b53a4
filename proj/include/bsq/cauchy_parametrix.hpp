#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/chebyshev.hpp"
#include "bsq/common.hpp"
#include "bsq/spectral_core.hpp"
#include "bsq/spectral_data.hpp"

namespace bsq {

struct NuValues {
  double nu1 = 0, nu2 = 0, nu3 = 0, nu4 = 0, nu5 = 0, nu_hat2 = 0;
};

NuValues nu_values(double zeta, const SpectralData& sd);
NuValues nu_values(const SaddleSet& S, const SpectralData& sd);

// -(1/2pi) ln x with the positivity check on x.
double nu_of(cd x, const char* what);

enum class IntegrandKind { Log1pG, Log1pGRot, LogF, LogFRot };

struct ArcIntegralSpec {
  double theta_a = 0, theta_b = 0;
  IntegrandKind kind = IntegrandKind::LogF;
  bool regularized = false;
  std::vector<double> epsilon_schedule{1e-2, 1e-3, 1e-4};
};

// Arcs of delta_1..delta_5, counterclockwise.
ArcIntegralSpec arc_spec(int j, const SaddleSet& S);

// F(e^{i theta}) for each integrand kind.
std::function<cd(double)> arc_integrand(IntegrandKind kind, const SpectralData& sd);

struct RegularizedChi {
  cd value;
  std::vector<cd> raw;
  double observed_order = 0;
  double relative_change = 0;
};

// One Cauchy-type arc integral with F resolved by a piecewise Chebyshev fit.
class ArcIntegral {
 public:
  ArcIntegral(ArcIntegralSpec spec, std::function<cd(double)> F, int pieces = 8,
              int order = 24);

  const ArcIntegralSpec& spec() const { return spec_; }
  cd F(double theta) const { return fit_.value(theta); }
  cd log_F(double theta) const { return std::log(fit_.value(theta)); }
  cd dlog_F(double theta) const { return fit_.deriv(theta) / fit_.value(theta); }
  double fit_tail() const { return fit_.tail(); }

  // (1/2 pi i) int ln F(s) ds / (s - k) along the arc.
  cd cauchy_log(cd k) const;
  // (1/2 pi i) int L(k - s) d ln F(s), with L = ln_s or ln_tilde_s; the
  // regularized variant subtracts L(k - e^{i theta_b}) ln F(theta_b - eps) and
  // extrapolates eps -> 0.
  cd chi(cd k, BranchKind branch) const;
  RegularizedChi chi_regularized(cd k, BranchKind branch) const;
  cd chi_truncated(cd k, BranchKind branch, double eps) const;

 private:
  std::vector<double> focus_for(cd k) const;
  ArcIntegralSpec spec_;
  PiecewiseCheb fit_;
};

enum class DeltaForm { LnS, LnTilde };

struct Zstar {
  cd z1, z2;
  cd ln_z1, ln_z2;
};

Zstar z_stars(const SaddleSet& S);

// All zeta-dependent parametrix ingredients at fixed zeta.
class Parametrix {
 public:
  Parametrix(double zeta, SpectralPtr sd, int pieces = 8, int order = 24);
  // Custom arcs (used with toy integrands); nus are taken as given.
  Parametrix(double zeta, std::vector<ArcIntegral> arcs, NuValues nus);

  double zeta() const { return S_.zeta; }
  const SaddleSet& saddles() const { return S_; }
  const NuValues& nus() const { return nus_; }
  const ArcIntegral& arc(int j) const { return arcs_.at(j - 1); }

  cd chi(int j, cd k) const;        // j = 1..5, ln_s branch
  cd chi_tilde(int j, cd k) const;  // j = 2..5, ln_tilde_s branch
  RegularizedChi chi_tilde_detail(int j, cd k) const;

  cd log_delta_direct(int j, cd k) const;
  cd delta_direct(int j, cd k) const { return std::exp(log_delta_direct(j, k)); }
  cd log_delta_closed(int j, cd k, DeltaForm form = DeltaForm::LnS) const;
  cd delta_closed(int j, cd k, DeltaForm form = DeltaForm::LnS) const {
    return std::exp(log_delta_closed(j, k, form));
  }
  // direct representation, closed form when k is too close to the arc
  cd log_delta(int j, cd k) const;
  cd delta(int j, cd k) const { return std::exp(log_delta(j, k)); }

  cd log_D1(cd k) const;
  cd log_D2(cd k) const;
  cd D1(cd k) const { return std::exp(log_D1(k)); }
  cd D2(cd k) const { return std::exp(log_D2(k)); }
  cd log_Delta33(cd k) const;
  std::array<cd, 3> Delta_diag(cd k) const;

  Zstar zstars() const { return z_stars(S_); }
  // Unreduced logarithms of d10, d20.
  cd log_d10(double t) const;
  cd log_d20(double t) const;

 private:
  SaddleSet S_;
  NuValues nus_;
  std::vector<ArcIntegral> arcs_;
  std::vector<std::string> warnings_;

 public:
  const std::vector<std::string>& warnings() const { return warnings_; }
};

struct ParametrixBundle {
  double zeta = 0, t = 0;
  NuValues nus;
  std::array<cd, 5> chi_at_saddle;  // chi1(omega k4), chi2, chi3, chi4~, chi5~ at omega^2 k2
  cd D1, D2;
  Zstar zstar;
  cd log_d10, log_d20, d10, d20;
  std::vector<std::string> warnings;
};

ParametrixBundle phase_factors(const Parametrix& P, double t);
// Same bundle at another t; only the t^{-i nu} factors of d10, d20 move.
ParametrixBundle with_time(const ParametrixBundle& b, double t);

nlohmann::json to_json(const ParametrixBundle& b);

}  // namespace bsq
