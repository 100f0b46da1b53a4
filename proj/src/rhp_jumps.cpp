#include "bsq/rhp_jumps.hpp"

#include <cmath>

#include "bsq/spectral_core.hpp"

namespace bsq {

namespace {

struct Ctx {
  double x, t;
  cd k;
  const SpectralData& sd;
  cd e(int i, int j, int sgn) const {
    return std::exp(double(sgn) * theta_ij(i, j, x, t, k));
  }
  cd r1(cd q) const { return sd.r1(q); }
  cd r2(cd q) const { return sd.r2(q); }
  cd g(cd q) const { return sd.g(q); }
  cd f(cd q) const { return sd.f(q); }
};

const cd w = kOmega, w2 = kOmega2;

Mat3 v7(const Ctx& c) {
  cd k = c.k;
  Mat3 m;
  m << 1.0, -c.r1(k) * c.e(2, 1, -1), c.r2(w2 * k) * c.e(3, 1, -1),
      -c.r2(k) * c.e(2, 1, 1), 1.0 + c.g(k),
      (c.r2(1.0 / (w * k)) - c.r2(k) * c.r2(w2 * k)) * c.e(3, 2, -1),
      c.r1(w2 * k) * c.e(3, 1, 1),
      (c.r1(1.0 / (w * k)) - c.r1(k) * c.r1(w2 * k)) * c.e(3, 2, 1),
      c.f(w2 * k);
  return m;
}

Mat3 v8(const Ctx& c) {
  cd k = c.k;
  Mat3 m;
  m << c.f(k), c.r1(k) * c.e(2, 1, -1),
      (c.r1(1.0 / (w2 * k)) - c.r1(k) * c.r1(w * k)) * c.e(3, 1, -1),
      c.r2(k) * c.e(2, 1, 1), 1.0, -c.r1(w * k) * c.e(3, 2, -1),
      (c.r2(1.0 / (w2 * k)) - c.r2(w * k) * c.r2(k)) * c.e(3, 1, 1),
      -c.r2(w * k) * c.e(3, 2, 1), 1.0 + c.g(w * k);
  return m;
}

Mat3 v9(const Ctx& c) {
  cd k = c.k;
  Mat3 m;
  m << 1.0 + c.g(w2 * k),
      (c.r2(1.0 / k) - c.r2(w * k) * c.r2(w2 * k)) * c.e(2, 1, -1),
      -c.r2(w2 * k) * c.e(3, 1, -1),
      (c.r1(1.0 / k) - c.r1(w * k) * c.r1(w2 * k)) * c.e(2, 1, 1), c.f(w * k),
      c.r1(w * k) * c.e(3, 2, -1), -c.r1(w2 * k) * c.e(3, 1, 1),
      c.r2(w * k) * c.e(3, 2, 1), 1.0;
  return m;
}

Mat3 ray_template(int lab, bool inner, const Ctx& c) {
  cd k = c.k;
  Mat3 m = Mat3::Identity();
  switch (lab) {
    case 1:
      if (!inner) m(0, 1) = -c.r1(k) * c.e(2, 1, -1);
      else m(1, 0) = c.r1(1.0 / k) * c.e(2, 1, 1);
      break;
    case 2:
      if (!inner) m(1, 2) = -c.r2(1.0 / (w * k)) * c.e(3, 2, -1);
      else m(2, 1) = c.r2(w * k) * c.e(3, 2, 1);
      break;
    case 3:
      if (!inner) m(2, 0) = -c.r1(w2 * k) * c.e(3, 1, 1);
      else m(0, 2) = c.r1(1.0 / (w2 * k)) * c.e(3, 1, -1);
      break;
    case 4:
      if (!inner) m(0, 1) = -c.r2(1.0 / k) * c.e(2, 1, -1);
      else m(1, 0) = c.r2(k) * c.e(2, 1, 1);
      break;
    case 5:
      if (!inner) m(1, 2) = -c.r1(w * k) * c.e(3, 2, -1);
      else m(2, 1) = c.r1(1.0 / (w * k)) * c.e(3, 2, 1);
      break;
    case 6:
      if (!inner) m(2, 0) = -c.r2(1.0 / (w2 * k)) * c.e(3, 1, 1);
      else m(0, 2) = c.r2(w2 * k) * c.e(3, 1, -1);
      break;
  }
  return m;
}

// Upper/lower factors with the index pattern used by the 456 and 789 families.
Mat3 up(const Ctx& c, cd c12, cd c13, cd c32) {
  Mat3 m = Mat3::Identity();
  m(0, 1) = c12 * c.e(2, 1, -1);
  m(0, 2) = c13 * c.e(3, 1, -1);
  m(2, 1) = c32 * c.e(3, 2, 1);
  return m;
}

Mat3 lo(const Ctx& c, cd c21, cd c23, cd c31) {
  Mat3 m = Mat3::Identity();
  m(1, 0) = c21 * c.e(2, 1, 1);
  m(1, 2) = c23 * c.e(3, 2, -1);
  m(2, 0) = c31 * c.e(3, 1, 1);
  return m;
}

Mat3 diag3(cd a, cd b, cd d) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = d;
  return m;
}

struct Coef456 {
  cd c12, c13, c32, d1, d3, c21, c23, c31;
};
Coef456 coef456(const Ctx& c) {
  cd k = c.k, G = c.g(w2 * k);
  return {-c.r2(1.0 / k), c.r2(w2 * k) / (1.0 + G), c.r1(1.0 / (w * k)),
          1.0 / (1.0 + G), 1.0 + G, -c.r1(1.0 / k), c.r2(1.0 / (w * k)),
          c.r1(w2 * k) / (1.0 + G)};
}

struct Coef789 {
  cd a12, a13, a32, d1, d2, d3, a21, a23, a31;
};
Coef789 coef789(const Ctx& c) {
  cd k = c.k, G = c.g(k), F = c.f(k);
  return {-c.r1(k) / (1.0 + G),
          -c.r1(1.0 / (w2 * k)) / F,
          (c.r1(1.0 / (w * k)) - c.r1(k) * c.r1(w2 * k)) / (1.0 + G),
          1.0 / F,
          1.0 + G,
          F / (1.0 + G),
          -c.r2(k) / (1.0 + G),
          (c.r2(1.0 / (w * k)) - c.r2(k) * c.r2(w2 * k)) / (1.0 + G),
          -c.r2(1.0 / (w2 * k)) / F};
}

struct Coef101112 {
  cd b12, b13, b23, d1, d2, d3, b21, b31, b32;
};
Coef101112 coef101112(const Ctx& c) {
  cd k = c.k, F = c.f(k), Fw = c.f(w2 * k);
  return {-(c.r1(k) - c.r1(1.0 / (w * k)) * c.r1(1.0 / (w2 * k))) / F,
          c.r2(w2 * k) / Fw,
          (c.r2(1.0 / (w * k)) - c.r2(k) * c.r2(w2 * k)) / Fw,
          1.0 / F,
          F / Fw,
          Fw,
          -(c.r2(k) - c.r2(1.0 / (w * k)) * c.r2(1.0 / (w2 * k))) / F,
          c.r1(w2 * k) / Fw,
          (c.r1(1.0 / (w * k)) - c.r1(k) * c.r1(w2 * k)) / Fw};
}

Mat3 factor(int j, const Ctx& c) {
  cd k = c.k;
  switch (j) {
    case 1: {
      Mat3 m = Mat3::Identity();
      m(0, 1) = c.r2(1.0 / k) * c.e(2, 1, -1);
      m(2, 0) = -c.r1(w2 * k) * c.e(3, 1, 1);
      m(2, 1) = c.r2(w * k) * c.e(3, 2, 1);
      return m;
    }
    case 2:
      return Mat3::Identity();
    case 3: {
      Mat3 m = Mat3::Identity();
      m(0, 2) = -c.r2(w2 * k) * c.e(3, 1, -1);
      m(1, 0) = c.r1(1.0 / k) * c.e(2, 1, 1);
      m(1, 2) = c.r1(w * k) * c.e(3, 2, -1);
      return m;
    }
    case 4: {
      auto q = coef456(c);
      return up(c, q.c12, q.c13, q.c32);
    }
    case 5: {
      auto q = coef456(c);
      return diag3(q.d1, 1.0, q.d3);
    }
    case 6: {
      auto q = coef456(c);
      return lo(c, q.c21, q.c23, q.c31);
    }
    case 7: {
      auto q = coef789(c);
      return up(c, q.a12, q.a13, q.a32);
    }
    case 8: {
      auto q = coef789(c);
      return diag3(q.d1, q.d2, q.d3);
    }
    case 9: {
      auto q = coef789(c);
      return lo(c, q.a21, q.a23, q.a31);
    }
    case 10: {
      auto q = coef101112(c);
      Mat3 m = Mat3::Identity();
      m(0, 1) = q.b12 * c.e(2, 1, -1);
      m(0, 2) = q.b13 * c.e(3, 1, -1);
      m(1, 2) = q.b23 * c.e(3, 2, -1);
      return m;
    }
    case 11: {
      auto q = coef101112(c);
      return diag3(q.d1, q.d2, q.d3);
    }
    case 12: {
      auto q = coef101112(c);
      Mat3 m = Mat3::Identity();
      m(1, 0) = q.b21 * c.e(2, 1, 1);
      m(2, 0) = q.b31 * c.e(3, 1, 1);
      m(2, 1) = q.b32 * c.e(3, 2, 1);
      return m;
    }
  }
  throw DomainError("factor index must be 1..12");
}

int circle_class(cd k) {
  double deg = angle_2pi(k) * 180.0 / kPi;
  int c = static_cast<int>(std::lround(deg / 60.0)) % 6;
  if (c == 2 || c == 5) return 7;
  if (c == 0 || c == 3) return 8;
  return 9;
}

// Ray index n for angle 30 + 60 n degrees, or -1 when k is off the rays.
int ray_index(cd k, double tol) {
  double deg = angle_2pi(k) * 180.0 / kPi;
  double n = (deg - 30.0) / 60.0;
  long r = std::lround(n);
  double ang = (30.0 + 60.0 * r) * kPi / 180.0;
  if (std::abs(std::remainder(angle_2pi(k) - ang, 2 * kPi)) * std::abs(k) > tol)
    return -1;
  return static_cast<int>(((r % 6) + 6) % 6);
}

const int kInnerLabel[6] = {6, 1, 2, 3, 4, 5};
const int kOuterLabel[6] = {3, 4, 5, 6, 1, 2};

}  // namespace

std::string region_name(Region r) {
  static const char* names[] = {"1'",  "1''", "2'",  "2''", "3'",  "3''",
                                "4'",  "4''", "5'",  "5''", "6'",  "6''",
                                "7",   "8",   "9",   "v1^(1)", "v2^(1)",
                                "v3^(1)", "v4^(1)", "v5^(1)", "v6^(1)",
                                "v7^(1)", "v8^(1)", "v9^(1)", "v10^(1)",
                                "v11^(1)", "v12^(1)"};
  return names[static_cast<int>(r)];
}

Region region_of(cd k) {
  if (k == cd(0.0, 0.0)) throw RegionMismatch("k = 0 is not on a sub-contour");
  if (SpectralData::on_circle(k)) {
    int c = circle_class(k);
    return c == 7 ? Region::V7 : c == 8 ? Region::V8 : Region::V9;
  }
  int n = ray_index(k, 1e-10);
  if (n < 0) throw RegionMismatch("k is neither on a ray nor on the circle");
  bool inner = std::abs(k) < 1.0;
  int lab = inner ? kInnerLabel[n] : kOuterLabel[n];
  return static_cast<Region>(2 * (lab - 1) + (inner ? 1 : 0));
}

const SymmetryMatrices& symmetry_matrices() {
  static const SymmetryMatrices s = [] {
    SymmetryMatrices m;
    m.A << 0, 0, 1, 1, 0, 0, 0, 1, 0;
    m.B << 0, 1, 0, 1, 0, 0, 0, 0, 1;
    return m;
  }();
  return s;
}

JumpMatrix jump(Region region, double x, double t, cd k,
                const SpectralData& sd) {
  Ctx c{x, t, k, sd};
  int idx = static_cast<int>(region);
  JumpMatrix out{region, x, t, k, Mat3::Identity()};
  if (idx >= static_cast<int>(Region::F1)) {
    if (!SpectralData::on_circle(k))
      throw RegionMismatch("factorization factors are evaluated on the circle");
    out.m = factor(idx - static_cast<int>(Region::F1) + 1, c);
    return out;
  }
  Region actual = region_of(k);
  if (actual != region)
    throw RegionMismatch("k lies on " + region_name(actual) + ", not " +
                         region_name(region));
  switch (region) {
    case Region::V7: out.m = v7(c); break;
    case Region::V8: out.m = v8(c); break;
    case Region::V9: out.m = v9(c); break;
    default: {
      int lab = idx / 2 + 1;
      bool inner = idx % 2 == 1;
      out.m = ray_template(lab, inner, c);
    }
  }
  return out;
}

Mat3 jump_at(double x, double t, cd k, const SpectralData& sd) {
  return jump(region_of(k), x, t, k, sd).m;
}

SymmetryResidual verify_v_symmetry(double x, double t, cd k,
                                   const SpectralData& sd) {
  const auto& S = symmetry_matrices();
  Mat3 v = jump_at(x, t, k, sd);
  Mat3 va = jump_at(x, t, kOmega * k, sd);
  Mat3 vb = jump_at(x, t, 1.0 / k, sd);
  SymmetryResidual r;
  r.a = max_abs(v - S.A * va * S.A.transpose());
  r.b = max_abs(v - S.B * vb.inverse() * S.B);
  return r;
}

std::map<std::string, double> verify_factorizations(double x, double t, cd k,
                                                    const SpectralData& sd) {
  if (!SpectralData::on_circle(k))
    throw RegionMismatch("factorizations are verified on the unit circle");
  Ctx c{x, t, k, sd};
  std::map<std::string, double> res;
  Mat3 V9 = v9(c), V7 = v7(c);
  res["123"] = max_abs(V9 - factor(3, c) * factor(2, c) * factor(1, c));
  res["456"] = max_abs(V9.inverse() - factor(4, c) * factor(5, c) * factor(6, c));
  res["789"] = max_abs(V7 - factor(7, c) * factor(8, c) * factor(9, c));
  res["101112"] = max_abs(V7 - factor(10, c) * factor(11, c) * factor(12, c));
  return res;
}

UDL udl_decompose(const Mat3& v, const int perm[3]) {
  Mat3 P = Mat3::Zero();
  for (int i = 0; i < 3; ++i) P(perm[i], i) = 1.0;
  Mat3 a = P.transpose() * v.inverse() * P;
  // Doolittle LDU of a = L' D' U'
  Mat3 L = Mat3::Identity(), U = Mat3::Identity(), D = Mat3::Zero();
  Mat3 m = a;
  for (int j = 0; j < 3; ++j) {
    D(j, j) = m(j, j);
    if (std::abs(D(j, j)) < 1e-300) throw NearSingularError("zero pivot in UDL");
    for (int i = j + 1; i < 3; ++i) {
      L(i, j) = m(i, j) / D(j, j);
      U(j, i) = m(j, i) / D(j, j);
    }
    for (int i = j + 1; i < 3; ++i)
      for (int l = j + 1; l < 3; ++l) m(i, l) -= L(i, j) * D(j, j) * U(j, l);
  }
  UDL out;
  out.U = P * U.inverse() * P.transpose();
  out.D = P * D.inverse() * P.transpose();
  out.L = P * L.inverse() * P.transpose();
  return out;
}

std::map<std::string, double> verify_coefficients(double x, double t, cd k,
                                                  const SpectralData& sd) {
  Ctx c{x, t, k, sd};
  std::map<std::string, double> res;
  auto worst = [](std::initializer_list<double> v) {
    double m = 0;
    for (double e : v) m = std::max(m, e);
    return m;
  };
  {
    const int perm[3] = {1, 0, 2};
    UDL d = udl_decompose(v9(c), perm);
    Mat3 f3 = factor(3, c), f1 = factor(1, c);
    res["123"] = worst({max_abs(d.U - f3), max_abs(d.D - Mat3::Identity()),
                        max_abs(d.L - f1)});
  }
  {
    const int perm[3] = {0, 2, 1};
    UDL d = udl_decompose(v9(c).inverse(), perm);
    auto q = coef456(c);
    res["456"] = worst({std::abs(d.U(0, 1) * c.e(2, 1, 1) - q.c12),
                        std::abs(d.U(0, 2) * c.e(3, 1, 1) - q.c13),
                        std::abs(d.U(2, 1) * c.e(3, 2, -1) - q.c32),
                        std::abs(d.D(0, 0) - q.d1), std::abs(d.D(2, 2) - q.d3),
                        std::abs(d.L(1, 0) * c.e(2, 1, -1) - q.c21),
                        std::abs(d.L(1, 2) * c.e(3, 2, 1) - q.c23),
                        std::abs(d.L(2, 0) * c.e(3, 1, -1) - q.c31)});
  }
  {
    const int perm[3] = {0, 2, 1};
    UDL d = udl_decompose(v7(c), perm);
    auto q = coef789(c);
    res["789"] = worst({std::abs(d.U(0, 1) * c.e(2, 1, 1) - q.a12),
                        std::abs(d.U(0, 2) * c.e(3, 1, 1) - q.a13),
                        std::abs(d.U(2, 1) * c.e(3, 2, -1) - q.a32),
                        std::abs(d.D(0, 0) - q.d1), std::abs(d.D(1, 1) - q.d2),
                        std::abs(d.D(2, 2) - q.d3),
                        std::abs(d.L(1, 0) * c.e(2, 1, -1) - q.a21),
                        std::abs(d.L(1, 2) * c.e(3, 2, 1) - q.a23),
                        std::abs(d.L(2, 0) * c.e(3, 1, -1) - q.a31)});
  }
  {
    const int perm[3] = {0, 1, 2};
    UDL d = udl_decompose(v7(c), perm);
    auto q = coef101112(c);
    res["101112"] = worst({std::abs(d.U(0, 1) * c.e(2, 1, 1) - q.b12),
                           std::abs(d.U(0, 2) * c.e(3, 1, 1) - q.b13),
                           std::abs(d.U(1, 2) * c.e(3, 2, 1) - q.b23),
                           std::abs(d.D(0, 0) - q.d1), std::abs(d.D(1, 1) - q.d2),
                           std::abs(d.D(2, 2) - q.d3),
                           std::abs(d.L(1, 0) * c.e(2, 1, -1) - q.b21),
                           std::abs(d.L(2, 0) * c.e(3, 1, -1) - q.b31),
                           std::abs(d.L(2, 1) * c.e(3, 2, -1) - q.b32)});
  }
  return res;
}

double v1s_deviation(double x, double t, cd k, const SpectralData& sd) {
  const auto& S = symmetry_matrices();
  Ctx c{x, t, k, sd};
  Ctx cr{x, t, 1.0 / (kOmega * k), sd};
  Mat3 v = factor(10, c).inverse() * S.A * S.B * factor(12, cr).inverse() *
           S.B * S.A.transpose();
  return max_abs(v - Mat3::Identity());
}

}  // namespace bsq
