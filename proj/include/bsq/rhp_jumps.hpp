#pragma once

#include <map>
#include <string>

#include "bsq/common.hpp"
#include "bsq/spectral_data.hpp"

namespace bsq {

enum class Region {
  R1p, R1pp, R2p, R2pp, R3p, R3pp, R4p, R4pp, R5p, R5pp, R6p, R6pp,
  V7, V8, V9,
  F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12
};

std::string region_name(Region r);

// Sub-contour label of a point on the six rays or the unit circle.
Region region_of(cd k);

struct JumpMatrix {
  Region region;
  double x = 0, t = 0;
  cd k;
  Mat3 m;
};

struct SymmetryMatrices {
  Mat3 A, B;
};

const SymmetryMatrices& symmetry_matrices();

// Jump matrix on a labeled sub-contour (rays and circle) or an exact-mode
// factorization factor v_j^(1), j = 1..12.
JumpMatrix jump(Region region, double x, double t, cd k, const SpectralData& sd);

// v evaluated with the label resolved from k.
Mat3 jump_at(double x, double t, cd k, const SpectralData& sd);

struct SymmetryResidual {
  double a = 0, b = 0;
};

SymmetryResidual verify_v_symmetry(double x, double t, cd k,
                                   const SpectralData& sd);

// Residuals of v9 = v3 v2 v1, v9^{-1} = v4 v5 v6, v7 = v7 v8 v9, v7 = v10 v11 v12
// in exact mode (v2 = I).
std::map<std::string, double> verify_factorizations(double x, double t, cd k,
                                                    const SpectralData& sd);

// Coefficients of each factorization recovered from a UDL decomposition of the
// assembled circle jump, compared with their defining ratios. Returns the
// largest discrepancy per factorization.
std::map<std::string, double> verify_coefficients(double x, double t, cd k,
                                                  const SpectralData& sd);

// max |v_{1_s}^{(1)} - I| in exact mode, report-only.
double v1s_deviation(double x, double t, cd k, const SpectralData& sd);

struct UDL {
  Mat3 U, D, L;
};

// v = U D L with U unit upper, D diagonal, L unit lower (no pivoting), after
// conjugating by the index permutation perm (v' = P^T v P).
UDL udl_decompose(const Mat3& v, const int perm[3]);

}  // namespace bsq
