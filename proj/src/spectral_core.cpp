#include "bsq/spectral_core.hpp"

#include <cmath>
#include <sstream>

namespace bsq {

namespace {

cd omega_pow(int j) {
  switch (((j % 3) + 3) % 3) {
    case 0: return 1.0;
    case 1: return kOmega;
    default: return kOmega2;
  }
}

void require_nonzero(cd k) {
  if (k == cd(0.0, 0.0)) throw DomainError("k = 0 is not admissible");
}

}  // namespace

cd l_func(int j, cd k) {
  require_nonzero(k);
  cd m = omega_pow(j) * k;
  return kI * (m + 1.0 / m) / (2.0 * kSqrt3);
}

cd z_func(int j, cd k) {
  require_nonzero(k);
  cd m = omega_pow(j) * k;
  cd m2 = m * m;
  return kI * (m2 + 1.0 / m2) / (4.0 * kSqrt3);
}

PhaseId phase_id(int pair) {
  switch (pair) {
    case 21: return PhaseId::P21;
    case 31: return PhaseId::P31;
    case 32: return PhaseId::P32;
  }
  throw DomainError("phase pair must be one of 21, 31, 32");
}

int phase_pair(PhaseId id) {
  switch (id) {
    case PhaseId::P21: return 21;
    case PhaseId::P31: return 31;
    case PhaseId::P32: return 32;
  }
  return 0;
}

cd phi(PhaseId id, double zeta, cd k) {
  int p = phase_pair(id);
  int i = p / 10, j = p % 10;
  return (l_func(i, k) - l_func(j, k)) * zeta + (z_func(i, k) - z_func(j, k));
}

cd theta(PhaseId id, double x, double t, cd k) {
  int p = phase_pair(id);
  return theta_ij(p / 10, p % 10, x, t, k);
}

cd theta_ij(int i, int j, double x, double t, cd k) {
  return (l_func(i, k) - l_func(j, k)) * x + (z_func(i, k) - z_func(j, k)) * t;
}

cd SaddleSet::k(int j) const {
  switch (j) {
    case 1: return k1;
    case 2: return k2;
    case 3: return k3;
    case 4: return k4;
  }
  throw DomainError("saddle index must be 1..4");
}

SaddleSet saddle_points(double zeta) {
  const double zmax = 1.0 / kSqrt3;
  if (!(zeta > 0.0 && zeta < zmax))
    throw DomainError("zeta must lie in (0, 1/sqrt(3))");
  const double q = std::sqrt(8.0 + zeta * zeta);
  const double s2 = std::sqrt(2.0);
  cd k2(0.25 * (zeta - q), -0.25 * s2 * std::sqrt(4.0 - zeta * zeta + zeta * q));
  cd k4(0.25 * (zeta + q), -0.25 * s2 * std::sqrt(4.0 - zeta * zeta - zeta * q));
  SaddleSet s;
  s.zeta = zeta;
  s.k2 = k2 / std::abs(k2);
  s.k4 = k4 / std::abs(k4);
  s.k1 = std::conj(s.k2);
  s.k3 = std::conj(s.k4);
  if (std::abs(kOmega * s.k4 - kI) < 0.02)
    s.warnings.push_back("omega k4 within 0.02 of i");
  if (std::abs(kOmega2 * s.k2 - kOmega) < 0.02)
    s.warnings.push_back("omega^2 k2 within 0.02 of omega");
  if (zeta < 0.02) s.warnings.push_back("zeta within 0.02 of 0");
  return s;
}

cd r_tilde(cd k) {
  cd den = 1.0 - kOmega2 * k * k;
  if (std::abs(den) < 1e-13) throw PoleError("r_tilde evaluated at +-omega^2");
  return (kOmega2 - k * k) / den;
}

bool in_lens(cd k, double a, double b) {
  if (std::norm(k) >= 1.0) return false;
  cd m = std::polar(1.0, 0.5 * (a + b));
  return (k * std::conj(m)).real() > std::cos(0.5 * std::abs(b - a));
}

cd arc_inc(cd k, double a, double b) {
  cd za = std::polar(1.0, a), zb = std::polar(1.0, b);
  cd d = std::log((k - zb) / (k - za));
  if (in_lens(k, std::min(a, b), std::max(a, b)))
    d += cd(0.0, b > a ? 2.0 * kPi : -2.0 * kPi);
  return d;
}

cd ln_s_fast(cd k, double theta_s) {
  cd w = k - kI;
  double ar = std::arg(w);
  if (ar <= 0.5 * kPi) ar += 2.0 * kPi;
  return cd(std::log(std::abs(w)), ar) + arc_inc(k, 0.5 * kPi, theta_s);
}

cd ln_tilde_s_fast(cd k, double theta_s) {
  return std::log(k + 1.0) + arc_inc(k, kPi, theta_s);
}

namespace {

// arg of s in (-pi/2, 3pi/2]
double theta_lns(cd s) {
  double a = std::arg(s);
  if (a <= -0.5 * kPi) a += 2.0 * kPi;
  return a;
}

bool on_arc(cd k, double lo, double hi, double tol) {
  if (std::abs(std::abs(k) - 1.0) > tol) return false;
  double a = std::arg(k);
  for (double shift : {-2.0 * kPi, 0.0, 2.0 * kPi}) {
    double b = a + shift;
    if (b > lo + tol && b < hi - tol) return true;
  }
  return false;
}

}  // namespace

bool BranchLog::on_cut(cd k) const {
  cd w = k - s;
  switch (kind) {
    case BranchKind::Principal:
      return std::abs(w.imag()) <= tol && w.real() <= tol;
    case BranchKind::Ln0:
      return std::abs(w.imag()) <= tol && w.real() >= -tol;
    case BranchKind::LnS: {
      double th = theta_lns(s);
      if (std::abs(k.real()) <= tol && k.imag() >= 1.0 - tol) return true;
      return on_arc(k, std::min(th, 0.5 * kPi), std::max(th, 0.5 * kPi), tol);
    }
    case BranchKind::LnTildeS: {
      double th = std::arg(s);
      if (std::abs(k.imag()) <= tol && k.real() <= -1.0 + tol) return true;
      return on_arc(k, std::min(th, kPi), std::max(th, kPi), tol);
    }
  }
  return false;
}

std::string BranchLog::describe() const {
  std::ostringstream os;
  switch (kind) {
    case BranchKind::LnS: os << "ln_s"; break;
    case BranchKind::LnTildeS: os << "ln_tilde_s"; break;
    case BranchKind::Principal: os << "principal"; break;
    case BranchKind::Ln0: os << "ln_0"; break;
  }
  os << "(s=" << s.real() << (s.imag() < 0 ? "" : "+") << s.imag() << "i)";
  return os.str();
}

cd branch_log(const BranchLog& b, cd k) {
  if ((b.kind == BranchKind::LnS || b.kind == BranchKind::LnTildeS) &&
      std::abs(std::abs(b.s) - 1.0) > 1e-10)
    throw DomainError("ln_s / ln_tilde_s require s on the unit circle");
  if (std::abs(k - b.s) <= b.tol)
    throw DomainError("branch_log evaluated at its branch point");
  if (b.on_cut(k))
    throw BranchCutError("k on the cut of " + b.describe());
  cd w = k - b.s;
  switch (b.kind) {
    case BranchKind::Principal:
      return std::log(w);
    case BranchKind::Ln0: {
      double a = std::arg(w);
      if (a < 0) a += 2.0 * kPi;
      return cd(std::log(std::abs(w)), a);
    }
    case BranchKind::LnS:
      return ln_s_fast(k, theta_lns(b.s));
    case BranchKind::LnTildeS:
      return ln_tilde_s_fast(k, std::arg(b.s));
  }
  return 0.0;
}

}  // namespace bsq
