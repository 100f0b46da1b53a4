#pragma once

#include <array>
#include <string>
#include <vector>

#include "bsq/common.hpp"

namespace bsq {

enum class CrossRay { X1, X2, X3, X4, RPlus, RMinus };

std::string ray_name(CrossRay r);
// Unit direction of a ray; X1..X4 at pi/4, 3pi/4, -3pi/4, -pi/4.
cd ray_direction(CrossRay r);

struct ModelParams1 {
  cd q;
  double nu = 0;
  // Throws AdmissibilityError when |q| >= 1.
  static ModelParams1 make(cd q);
};

struct ModelParams2 {
  cd q2, q4, q5, q6;
  double nu2 = 0, nu4 = 0, nu5 = 0, nu_hat2 = 0;
  // Checks 1+|q2|^2-|q4|^2 > 0, 1-|q5|^2-|q6|^2 > 0 and the
  // constraint q4 = conj(q5) + q2 conj(q6) to 1e-12.
  static ModelParams2 make(cd q2, cd q4, cd q5, cd q6);
  // q4 resolved from the constraint.
  static ModelParams2 from_q256(cd q2, cd q5, cd q6);
  cd p() const { return q6 - q2 * q5; }
  double constraint_residual() const;
};

// Model 1 embedded in the model 2 family (q2 = q4 = q5 = 0, q6 = q) and
// conjugated by the 1 <-> 2 swap.
ModelParams2 embed_model1(const ModelParams1& p);

struct BetaPair {
  cd b12, b21;
};

BetaPair beta_model1(const ModelParams1& p);
BetaPair beta_model2(const ModelParams2& p);

// Sectors between consecutive rays, counterclockwise from the positive axis:
// S1 (0,pi/4), S2 (pi/4,3pi/4), S3 (3pi/4,pi), S4 (-pi,-3pi/4),
// S5 (-3pi/4,-pi/4), S6 (-pi/4,0).
int sector_of(cd z);

// Explicit parabolic cylinder solution, upper formulas for sectors 1-3.
Mat3 psi_matrix(const ModelParams2& p, cd z);
Mat3 psi_matrix_half(const ModelParams2& p, cd z, bool upper);
// d psi / dz from the derivative relation of D.
Mat3 psi_derivative(const ModelParams2& p, cd z, bool upper);
// Coefficient -(iz/2) diag(0,1,-1) + offdiag(i b12, -i b21).
Mat3 psi_ode_coefficient(const ModelParams2& p, cd z);

// v^psi from the product displays on the positive and negative half-lines.
Mat3 v_psi_positive(const ModelParams2& p);
Mat3 v_psi_negative(const ModelParams2& p);

// Model solution evaluated with the analytic formula of the given sector;
// z may lie on the closure of that sector, which yields boundary values.
Mat3 mX_sector(const ModelParams2& p, cd z, int sector);
Mat3 mX_eval(const ModelParams2& p, cd z);
Mat3 mX_eval(const ModelParams1& p, cd z);

// Jump matrices on X1..X4.
Mat3 vX(const ModelParams2& p, CrossRay ray, cd z);
Mat3 vX(const ModelParams1& p, CrossRay ray, cd z);

// Leading coefficient m_1 built from beta.
Mat3 m1_pattern(const ModelParams2& p);
Mat3 m1_pattern(const ModelParams1& p);

struct JumpResidual {
  CrossRay ray;
  cd z;
  double analytic;  // sector formulas evaluated on the ray
  double offset;    // +-1e-6 normal offsets
};

std::vector<JumpResidual> mX_jump_residuals(const ModelParams2& p,
                                            const std::vector<double>& radii = {0.7, 2.5});
std::vector<JumpResidual> mX_jump_residuals(const ModelParams1& p,
                                            const std::vector<double>& radii = {0.7, 2.5});

// Max entrywise |z (m^X - I) - m_1| over four phases at radius r.
double m1_deviation(const ModelParams2& p, double r);
double m1_deviation(const ModelParams1& p, double r);

}  // namespace bsq
