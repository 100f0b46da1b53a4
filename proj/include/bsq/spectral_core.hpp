#pragma once

#include <string>
#include <vector>

#include "bsq/common.hpp"

namespace bsq {

cd l_func(int j, cd k);
cd z_func(int j, cd k);

enum class PhaseId { P21, P31, P32 };

PhaseId phase_id(int pair);
int phase_pair(PhaseId id);

// Phi_ij(zeta, k)
cd phi(PhaseId id, double zeta, cd k);
// theta_ij(x, t, k) = t Phi_ij(x/t, k)
cd theta(PhaseId id, double x, double t, cd k);
// theta_ij for arbitrary index pair, used by the jump templates
cd theta_ij(int i, int j, double x, double t, cd k);

struct SaddleSet {
  double zeta = 0;
  cd k1, k2, k3, k4;
  std::vector<std::string> warnings;
  cd k(int j) const;
};

SaddleSet saddle_points(double zeta);

cd r_tilde(cd k);

enum class BranchKind { LnS, LnTildeS, Principal, Ln0 };

// Log branch of k -> ln(k - s) carrying its cut as data:
//   LnS:      cut = arc between i and s  U  (i, i inf), arg = 2 pi at k - s = 1
//   LnTildeS: cut = arc between s and -1 U  (-inf, -1], arg = 0 at k - s = 1
//   Principal: cut along k - s in (-inf, 0]
//   Ln0:      arg(k - s) in (0, 2 pi), cut along k - s in [0, inf)
struct BranchLog {
  BranchKind kind = BranchKind::Principal;
  cd s{0.0, 0.0};
  double tol = 1e-12;

  static BranchLog ln_s(cd s) { return {BranchKind::LnS, s}; }
  static BranchLog ln_tilde_s(cd s) { return {BranchKind::LnTildeS, s}; }
  static BranchLog principal(cd s = 0.0) { return {BranchKind::Principal, s}; }
  static BranchLog ln0(cd s = 0.0) { return {BranchKind::Ln0, s}; }

  bool on_cut(cd k) const;
  std::string describe() const;
};

cd branch_log(const BranchLog& b, cd k);

// Continuous increment int_{e^{ia}}^{e^{ib}} ds/(s - k) along the unit circle.
cd arc_inc(cd k, double a, double b);
bool in_lens(cd k, double a, double b);

// Unchecked fast paths for quadrature kernels (arg of s given as theta).
cd ln_s_fast(cd k, double theta_s);
cd ln_tilde_s_fast(cd k, double theta_s);

}  // namespace bsq
