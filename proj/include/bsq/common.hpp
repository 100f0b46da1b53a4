#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bsq {

using cd = std::complex<double>;
using Mat3 = Eigen::Matrix<cd, 3, 3>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.73205080756887729353;
const cd kI{0.0, 1.0};
const cd kOmega = std::polar(1.0, 2.0 * kPi / 3.0);
const cd kOmega2 = std::polar(1.0, 4.0 * kPi / 3.0);

// kappa_j = e^{i pi (j-1)/3}, j = 1..6
inline cd kappa(int j) { return std::polar(1.0, kPi * (j - 1) / 3.0); }

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define BSQ_ERROR(Name)                        \
  struct Name : Error {                        \
    using Error::Error;                        \
  }

BSQ_ERROR(DomainError);
BSQ_ERROR(PoleError);
BSQ_ERROR(BranchCutError);
BSQ_ERROR(NearSingularError);
BSQ_ERROR(ConvergenceError);
BSQ_ERROR(DivisionNearZero);
BSQ_ERROR(RegionMismatch);
BSQ_ERROR(NearContourError);
BSQ_ERROR(RegularizationError);
BSQ_ERROR(SignConditionError);
BSQ_ERROR(AccuracyError);
BSQ_ERROR(AdmissibilityError);
BSQ_ERROR(IoError);

#undef BSQ_ERROR

// Angle of k in [0, 2 pi).
inline double angle_2pi(cd k) {
  double a = std::arg(k);
  return a < 0 ? a + 2.0 * kPi : a;
}

// Largest entry modulus; NaN if any entry is NaN.
inline double max_abs(const Mat3& m) {
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double a = std::abs(m(i, j));
      if (std::isnan(a)) return a;
      r = std::max(r, a);
    }
  return r;
}

}  // namespace bsq
