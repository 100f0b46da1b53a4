#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <random>

#include "bsq/model_rhp.hpp"
#include "bsq/special.hpp"

using namespace bsq;

namespace {

ModelParams2 sample2() { return ModelParams2::from_q256({0.3, 0.2}, {-0.25, 0.1}, {0.4, -0.3}); }

// D_a(w) = e^{-w^2/4} / Gamma(-a) * int_0^inf t^{-a-1} e^{-wt - t^2/2} dt, Re a < 0
cd pcf_integral(cd a, cd w) {
  boost::math::quadrature::exp_sinh<double> es;
  auto f = [&](double t) -> cd {
    if (t == 0.0) return 0.0;
    return std::exp((-a - 1.0) * std::log(t) - w * t - 0.5 * t * t);
  };
  auto re = [&](double t) { return f(t).real(); };
  auto im = [&](double t) { return f(t).imag(); };
  double r = es.integrate(re, 1e-15), i = es.integrate(im, 1e-15);
  return std::exp(-w * w / 4.0) * rgamma(-a) * cd(r, i);
}

}  // namespace

TEST_CASE("order zero and one closed forms") {
  CHECK(std::abs(pcf_D(0.0, 1.3) - std::exp(-0.4225)) < 1e-15);
  for (cd w : {cd(0.4, 0.1), cd(3.0, -2.0), cd(-6.0, 5.0), cd(11.0, 2.0), cd(-30.0, 35.0)}) {
    CHECK(std::abs(pcf_D_scaled(0.0, w) - 1.0) < 1e-13);
    CHECK(std::abs(pcf_D_scaled(1.0, w) / w - 1.0) < 1e-13);
  }
}

TEST_CASE("three-term recurrence") {
  cd a(0.0, 0.4), z(2.0, 1.0);
  cd res = pcf_D(a + 1.0, z) - z * pcf_D(a, z) + a * pcf_D(a - 1.0, z);
  CHECK(std::abs(res) < 1e-9);
  for (double r : {1.0, 7.0, 9.5, 20.0})
    for (double th : {-2.2, -0.5, 0.3, 1.9}) {
      cd w = std::polar(r, th), b(0.0, -0.17);
      cd s = pcf_D_scaled(b + 1.0, w) - w * pcf_D_scaled(b, w) + b * pcf_D_scaled(b - 1.0, w);
      CHECK(std::abs(s) < 1e-12 * std::abs(w * pcf_D_scaled(b, w)));
    }
}

TEST_CASE("integral representation oracle") {
  for (cd a : {cd(-1.0, -0.2), cd(-1.0, 0.35), cd(-0.5, 0.1)})
    for (cd w : {cd(0.5, 0.2), cd(2.0, 1.0), cd(4.0, -3.0), cd(8.0, 7.0), cd(12.0, -4.0)}) {
      cd ref = pcf_integral(a, w), got = pcf_D(a, w);
      CHECK(std::abs(got - ref) < 1e-11 * std::abs(ref));
    }
}

TEST_CASE("leading asymptotics improve like |z|^-2") {
  double nu = 0.3;
  auto dev = [&](double r) {
    cd w = std::polar(r, -kPi / 4);
    cd a = -kI * nu;
    return std::abs(pcf_D(a, w) * std::exp(-a * std::log(w)) * std::exp(w * w / 4.0) - 1.0);
  };
  double d8 = dev(8.0), d16 = dev(16.0);
  CHECK(d8 < 1e-2);
  CHECK(d16 / d8 == Catch::Approx(0.25).epsilon(0.05));
}

TEST_CASE("cross-over agreement") {
  for (cd a : {cd(0.0, -0.3), cd(0.0, 0.3), cd(-1.0, -0.3), cd(-1.0, 0.3), cd(0.0, 0.0)}) {
    CHECK(pcf_crossover_residual(a) < 1e-9);
    CHECK_NOTHROW(pcf_check_crossover(a));
  }
  CHECK_THROWS_AS(pcf_check_crossover(cd(-1.0, 0.3), 1e-20), AccuracyError);
}

TEST_CASE("gamma modulus identity") {
  for (double nu : {0.05, 0.3, 1.0}) {
    double lhs = std::norm(gamma_fn(cd(0.0, nu)));
    double rhs = 2 * kPi / (nu * (std::exp(kPi * nu) - std::exp(-kPi * nu)));
    CHECK(std::abs(lhs - rhs) < 1e-12 * rhs);
  }
}

TEST_CASE("beta coefficients") {
  auto z = beta_model1(ModelParams1::make(0.0));
  CHECK(z.b12 == 0.0);
  CHECK(z.b21 == 0.0);

  auto p1 = ModelParams1::make(std::polar(0.6, 1.1));
  auto b1 = beta_model1(p1);
  CHECK(std::abs(b1.b12 * b1.b21 - p1.nu) < 1e-12);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-0.35, 0.35);
  for (int i = 0; i < 20; ++i) {
    auto p = ModelParams2::from_q256({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
    auto b = beta_model2(p);
    CHECK(std::abs(b.b12 * b.b21 - p.nu_hat2) < 1e-12);
  }

  // p = q6 - q2 q5 = 0 forces nu_hat2 = 0
  cd q2(0.2, 0.1), q5(0.3, -0.2);
  auto d = ModelParams2::from_q256(q2, q5, q2 * q5);
  CHECK(std::abs(d.nu_hat2) < 1e-15);
  auto bd = beta_model2(d);
  CHECK(std::abs(bd.b12) < 1e-15);
  CHECK(std::abs(bd.b21) < 1e-15);
}

TEST_CASE("admissibility") {
  CHECK_THROWS_AS(ModelParams1::make(1.0), AdmissibilityError);
  CHECK_THROWS_AS(ModelParams2::make(0.1, 0.5, 0.2, 0.3), AdmissibilityError);
  CHECK_THROWS_AS(ModelParams2::from_q256(0.1, 0.8, 0.7), AdmissibilityError);
  auto p = sample2();
  CHECK(p.constraint_residual() < 1e-15);
  CHECK(p.nu_hat2 == Catch::Approx(p.nu2 + p.nu5 - p.nu4));
}

TEST_CASE("v psi products agree on both half-lines") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int i = 0; i < 20; ++i) {
    auto p = ModelParams2::from_q256({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
    CHECK(max_abs(v_psi_positive(p) - v_psi_negative(p)) < 1e-12);
  }
}

TEST_CASE("psi jump is constant along the real line") {
  auto p = sample2();
  const double h = 1e-6;
  std::vector<Mat3> v;
  // boundary values extrapolated from offsets h and 2h
  auto side = [&](double x, double s) {
    Mat3 a = psi_matrix(p, cd(x, s * h)), b = psi_matrix(p, cd(x, 2 * s * h));
    return Mat3(2.0 * a - b);
  };
  for (double x : {-2.0, -1.0, 1.0, 2.0}) v.push_back(side(x, -1).inverse() * side(x, 1));
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) CHECK(max_abs(v[i] - v[j]) < 1e-7);
  CHECK(max_abs(v[0] - v_psi_positive(p)) < 1e-7);
}

TEST_CASE("psi solves the linear ODE with constant determinant") {
  auto p = sample2();
  std::vector<cd> pts = {{0.5, 0.7}, {-1.2, 0.4}, {1.0, -1.5}, {-2.5, -0.3}, {3.0, 2.0}, {0.1, -0.05}};
  cd det0 = psi_matrix(p, pts[0]).determinant();
  for (cd z : pts) {
    bool up = z.imag() > 0;
    Mat3 psi = psi_matrix(p, z);
    Mat3 r = psi_derivative(p, z, up) * psi.inverse() - psi_ode_coefficient(p, z);
    CHECK(max_abs(r) < 1e-7);
    CHECK(std::abs(psi.determinant() - det0) < 1e-8);
    CHECK(psi(0, 0) == 1.0);
    CHECK(psi(0, 1) == 0.0);
    CHECK(psi(0, 2) == 0.0);
    CHECK(psi(1, 0) == 0.0);
    CHECK(psi(2, 0) == 0.0);
  }
}

TEST_CASE("trivial model solution at q = 0") {
  auto p = ModelParams1::make(0.0);
  for (cd z : {cd(0.3, 0.2), cd(-4.0, 1.0), cd(2.0, -7.0)})
    CHECK(max_abs(mX_eval(p, z) - Mat3::Identity()) < 1e-14);
}

TEST_CASE("model solutions satisfy the jump relations") {
  auto p2 = sample2();
  for (auto& j : mX_jump_residuals(p2, {0.4, 1.3, 3.0})) {
    INFO(ray_name(j.ray) << " |z| = " << std::abs(j.z));
    CHECK(j.analytic < 1e-7);
    CHECK(j.offset < 1e-7);
  }
  auto p1 = ModelParams1::make(std::polar(0.6, 1.1));
  for (auto& j : mX_jump_residuals(p1, {0.4, 1.3, 3.0})) {
    INFO(ray_name(j.ray) << " |z| = " << std::abs(j.z));
    CHECK(j.analytic < 1e-7);
    CHECK(j.offset < 1e-7);
  }
}

TEST_CASE("large z coefficient matches the beta pattern") {
  auto p2 = sample2();
  auto p1 = ModelParams1::make(std::polar(0.6, 1.1));
  double a2 = m1_deviation(p2, 50), b2 = m1_deviation(p2, 200);
  double a1 = m1_deviation(p1, 50), b1 = m1_deviation(p1, 200);
  CHECK(a2 < 1e-3);
  CHECK(b2 < a2);
  CHECK(a1 < 1e-3);
  CHECK(b1 < a1);

  Mat3 m2 = m1_pattern(p2), m1 = m1_pattern(p1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      bool on2 = (i == 1 && j == 2) || (i == 2 && j == 1);
      bool on1 = (i == 0 && j == 2) || (i == 2 && j == 0);
      CHECK((m2(i, j) != 0.0) == on2);
      CHECK((m1(i, j) != 0.0) == on1);
    }
}
