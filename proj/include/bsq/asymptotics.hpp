#pragma once

#include <array>
#include <string>
#include <vector>

#include "bsq/cauchy_parametrix.hpp"
#include "bsq/spectral_core.hpp"
#include "bsq/spectral_data.hpp"

namespace bsq {

// d/dzeta Im Phi_id(zeta, k(zeta)) at the moving saddle (omega k4 for P31,
// omega^2 k2 for P32); equals Im(l_i - l_j) there.
double dphi_dzeta(PhaseId id, double zeta);
// Saddle attached to a phase: omega k4 (P31), omega^2 k2 (P32), k4 (P21).
cd phase_saddle(PhaseId id, const SaddleSet& S);

struct QCoefficients {
  cd q_tilde1, q2, q4, q5, q6;
  int sqrt_sign = 1;               // branch of r_tilde(omega^2 k2)^{1/2} kept
  double admissibility_residual = 0;  // |q4 - conj(q5) - q2 conj(q6)|
  bool flipped = false;            // principal branch failed the audit
  cd p() const { return q6 - q2 * q5; }
};

QCoefficients q_coefficients(double zeta, const SpectralData& sd, double tol = 1e-9);

enum class SaddleWhich { OmegaK4, Omega2K2 };
std::string which_name(SaddleWhich w);

struct AsymptoticTerm {
  SaddleWhich which = SaddleWhich::OmegaK4;
  double amplitude = 0;
  double phase = 0;
  double carrier = 0;       // -t Im Phi at the saddle
  double nu = 0;
  double imag_residual = 0; // |Im A| / |A| of the complex assembly
  bool zero_nu = false;
};

struct LeadingTerm {
  double u = 0;
  std::array<AsymptoticTerm, 2> terms;
  std::string error_order = "ln t / t";
};

LeadingTerm leading_term(double zeta, double t, const ParametrixBundle& b, const QCoefficients& q);

struct GridRow {
  double zeta, t, x, u, A1, A2, alpha1, alpha2, nu1, nu_hat2;
};

struct GridDefect {
  double zeta, t;
  std::string message;
};

struct GridResult {
  std::vector<GridRow> rows;
  std::vector<GridDefect> defects;
};

GridResult evaluate_grid(const std::vector<double>& zetas, const std::vector<double>& ts,
                         SpectralPtr sd);

}  // namespace bsq
