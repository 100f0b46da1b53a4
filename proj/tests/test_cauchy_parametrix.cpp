#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <memory>
#include <random>

#include "bsq/cauchy_parametrix.hpp"

using namespace bsq;

namespace {

std::shared_ptr<const SyntheticSpectral> synthetic() {
  static auto sd = std::make_shared<const SyntheticSpectral>();
  return sd;
}

const Parametrix& param03() {
  static Parametrix P(0.3, synthetic());
  return P;
}

}  // namespace

TEST_CASE("zero spectral data gives a trivial parametrix") {
  auto z = std::make_shared<const ZeroSpectral>();
  Parametrix P(0.3, z);
  auto n = P.nus();
  CHECK(n.nu1 == 0.0);
  CHECK(n.nu2 == 0.0);
  CHECK(n.nu3 == 0.0);
  CHECK(n.nu4 == 0.0);
  CHECK(n.nu5 == 0.0);
  cd k(0.4, 0.2);
  for (int j = 1; j <= 5; ++j) {
    CHECK(std::abs(P.chi(j, k)) < 1e-13);
    CHECK(std::abs(P.delta_direct(j, k) - 1.0) < 1e-13);
  }
  CHECK(std::abs(P.D1(k) - 1.0) < 1e-15);
  CHECK(std::abs(P.D2(k) - 1.0) < 1e-15);
  for (cd d : P.Delta_diag(k)) CHECK(std::abs(d - 1.0) < 1e-15);
}

TEST_CASE("nu3 agrees with its rotated form") {
  const auto& sd = *synthetic();
  double a = nu_of(sd.f(kI), "f(i)");
  double b = nu_of(1.0 + sd.g(kOmega2 * kI), "1 + g(w^2 i)");
  CHECK(std::abs(a - b) < 1e-14);
}

TEST_CASE("nu1 and nu_hat2 are nonnegative across the sector") {
  const auto& sd = *synthetic();
  for (int i = 0; i < 50; ++i) {
    double zeta = 0.02 + (1.0 / kSqrt3 - 0.04) * i / 49.0;
    auto n = nu_values(zeta, sd);
    CHECK(n.nu1 >= 0.0);
    CHECK(n.nu_hat2 >= -1e-15);
  }
}

TEST_CASE("nu values reject nonpositive log arguments") {
  CHECK_THROWS_AS(nu_of(cd(-0.5, 0.0), "x"), DomainError);
  CHECK_THROWS_AS(nu_of(cd(0.0, 0.0), "x"), DomainError);
  CHECK_THROWS_AS(nu_of(cd(1.0, 0.1), "x"), DomainError);
}

TEST_CASE("regularized chi matches the integration-by-parts form for a toy simple zero") {
  auto S = saddle_points(0.3);
  ArcIntegralSpec spec = arc_spec(4, S);
  auto F = [](double th) { return 1.0 - std::polar(1.0, th - 2.0 * kPi / 3.0); };
  ArcIntegral arc(spec, F, 8, 24);
  double a = spec.theta_a, b = spec.theta_b;
  boost::math::quadrature::tanh_sinh<double> ts;
  for (cd k : {cd(0.3, 0.4), cd(-0.2, 1.4), kOmega2 * S.k2, std::polar(1.0, spec.theta_a), cd(1.5, -0.3)}) {
    auto r = arc.chi_regularized(k, BranchKind::LnTildeS);
    auto part = [&](bool im) {
      return ts.integrate([&](double th) {
        cd s = std::polar(1.0, th);
        cd v = (std::log(F(th)) - std::log(F(a))) * kI * s / (s - k);
        return im ? v.imag() : v.real();
      }, a, b, 1e-14);
    };
    cd by_parts = -ln_tilde_s_fast(k, b) * std::log(F(a)) - cd(part(false), part(true));
    by_parts /= cd(0.0, 2.0 * kPi);
    INFO("k = " << k);
    CHECK(std::abs(r.value - by_parts) < 1e-8);
    CHECK(r.observed_order >= 1.0);
  }
}

TEST_CASE("unstable epsilon extrapolation is reported") {
  auto S = saddle_points(0.3);
  ArcIntegralSpec spec = arc_spec(4, S);
  spec.epsilon_schedule = {0.2, 0.15, 0.1};
  auto F = [](double th) { return (1.0 - std::polar(1.0, th - 2.0 * kPi / 3.0)) * std::exp(8.0 * std::sin(40.0 * th)); };
  ArcIntegral arc(spec, F, 16, 32);
  CHECK_THROWS_AS(arc.chi_regularized(cd(0.3, 0.4), BranchKind::LnTildeS), RegularizationError);
}

TEST_CASE("delta tends to one at infinity like 1/k") {
  const auto& P = param03();
  cd d3 = P.delta_direct(1, std::polar(1e3, 0.3)) - 1.0;
  cd d4 = P.delta_direct(1, std::polar(1e4, 0.3)) - 1.0;
  CHECK(std::abs(d3) < 1e-2);
  CHECK(std::abs(d3) / std::abs(d4) == Catch::Approx(10.0).epsilon(1e-3));
}

TEST_CASE("delta jumps across their arcs") {
  const auto& P = param03();
  const auto& sd = *synthetic();
  for (int j = 1; j <= 5; ++j) {
    auto sp = P.arc(j).spec();
    for (int i = 1; i <= 8; ++i) {
      double th = sp.theta_a + (sp.theta_b - sp.theta_a) * i / 9.0;
      cd k = std::polar(1.0, th);
      cd ratio = P.delta_closed(j, k * (1.0 - 1e-7)) / P.delta_closed(j, k * (1.0 + 1e-7));
      cd want;
      switch (j) {
        case 1: want = 1.0 + sd.g(kOmega2 * k); break;
        case 2: want = 1.0 + sd.g(k); break;
        case 5: want = sd.f(kOmega2 * k); break;
        default: want = sd.f(k);
      }
      CHECK(std::abs(ratio - want) < 1e-6);
    }
  }
}

TEST_CASE("direct and closed representations agree") {
  const auto& P = param03();
  std::vector<cd> pts = {cd(0.5, 0.3), cd(0.05, 1.3), cd(0.2, 0.95), cd(-0.4, 0.8), cd(2, -1),
                         cd(-0.3, 0.7), cd(0.1, -0.2), cd(-1.5, 0.2), cd(0.6, 0.6), cd(0.9, -0.9)};
  for (cd k : pts) {
    for (int j = 1; j <= 5; ++j)
      CHECK(std::abs(P.delta_direct(j, k) - P.delta_closed(j, k)) < 1e-7);
    for (int j = 2; j <= 5; ++j)
      CHECK(std::abs(P.delta_direct(j, k) - P.delta_closed(j, k, DeltaForm::LnTilde)) < 1e-7);
  }
}

TEST_CASE("direct delta refuses points on its arc") {
  const auto& P = param03();
  auto sp = P.arc(2).spec();
  cd k = std::polar(1.0, 0.5 * (sp.theta_a + sp.theta_b));
  CHECK_THROWS_AS(P.delta_direct(2, k), NearContourError);
  CHECK_THROWS_AS(P.delta_closed(2, k), BranchCutError);
}

TEST_CASE("Delta33 is inversion invariant and Delta has the A, B symmetries") {
  const auto& P = param03();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    double r = U(rng) < 0.5 ? 0.2 + 0.7 * U(rng) : 1.2 + U(rng);
    cd k = std::polar(r, 2 * kPi * U(rng));
    CHECK(std::abs(P.log_Delta33(1.0 / k) - P.log_Delta33(k)) < 1e-10);
    auto d = P.Delta_diag(k), dw = P.Delta_diag(kOmega * k), di = P.Delta_diag(1.0 / k);
    CHECK(std::abs(d[0] - dw[2]) < 1e-10);
    CHECK(std::abs(d[1] - dw[0]) < 1e-10);
    CHECK(std::abs(d[2] - dw[1]) < 1e-10);
    CHECK(std::abs(d[0] - di[1]) < 1e-10);
    CHECK(std::abs(d[2] - di[2]) < 1e-10);
  }
}

TEST_CASE("Delta jumps on the three arcs") {
  const auto& P = param03();
  const auto& sd = *synthetic();
  for (int a : {1, 2, 4}) {
    auto sp = P.arc(a).spec();
    for (int i = 1; i <= 8; ++i) {
      double th = sp.theta_a + (sp.theta_b - sp.theta_a) * i / 9.0;
      cd k = std::polar(1.0, th);
      auto in = P.Delta_diag(k * (1.0 - 1e-7)), out = P.Delta_diag(k * (1.0 + 1e-7));
      cd r11 = in[0] / out[0], r22 = in[1] / out[1], r33 = in[2] / out[2];
      cd G = 1.0 + sd.g(k), Gw = 1.0 + sd.g(kOmega2 * k), f = sd.f(k), fw = sd.f(kOmega2 * k);
      if (a == 1) {
        CHECK(std::abs(r33 - 1.0 / Gw) < 1e-6);
        CHECK(std::abs(r11 - Gw) < 1e-6);
        CHECK(std::abs(r22 - 1.0) < 1e-6);
      } else if (a == 2) {
        CHECK(std::abs(r33 - G / f) < 1e-6);
        CHECK(std::abs(r11 - f) < 1e-6);
        CHECK(std::abs(r22 - 1.0 / G) < 1e-6);
      } else {
        CHECK(std::abs(r33 - 1.0 / fw) < 1e-6);
        CHECK(std::abs(r11 - f) < 1e-6);
        CHECK(std::abs(r22 - fw / f) < 1e-6);
      }
    }
  }
}

TEST_CASE("d10 is unimodular and d20 has the predicted modulus") {
  for (double zeta : {0.2, 0.35, 0.5}) {
    Parametrix P(zeta, synthetic());
    auto n = P.nus();
    for (double t : {10.0, 100.0, 1000.0}) {
      auto b = phase_factors(P, t);
      CHECK(std::abs(std::abs(b.d10) - 1.0) < 1e-8);
      CHECK(std::abs(std::abs(b.d20) - std::exp(kPi * (2 * n.nu2 - n.nu4))) < 1e-6);
    }
  }
}

TEST_CASE("z1 star branch and sign condition") {
  for (double zeta : {0.1, 0.3, 0.5}) {
    auto S = saddle_points(zeta);
    auto z = z_stars(S);
    double a4 = std::arg(kOmega * S.k4);
    CHECK(a4 > kPi / 3);
    CHECK(a4 < kPi / 2);
    CHECK(z.ln_z1.imag() == Catch::Approx(kPi / 2 - a4).margin(1e-14));
    CHECK(std::abs(std::remainder(std::arg(z.z1) - z.ln_z1.imag(), 2 * kPi)) < 1e-12);
    CHECK(std::abs(std::remainder(std::arg(z.z2) - z.ln_z2.imag(), 2 * kPi)) < 1e-12);
    cd c1 = -kI * kOmega * S.k4 * z.z1, c2 = -kI * kOmega2 * S.k2 * z.z2;
    CHECK(c1.real() > 0);
    CHECK(std::abs(c1.imag()) < 1e-12);
    CHECK(c2.real() > 0);
    CHECK(std::abs(c2.imag()) < 1e-12);
  }
}

TEST_CASE("arg d10 depends on t only through t^{-i nu1}") {
  const auto& P = param03();
  double nu1 = P.nus().nu1;
  cd a = P.log_d10(10.0), b = P.log_d10(1000.0);
  CHECK(std::abs((b - a).imag() + nu1 * std::log(100.0)) < 1e-8);
}

TEST_CASE("chi1 is Lipschitz-log continuous at omega k4") {
  const auto& P = param03();
  cd k0 = kOmega * P.saddles().k4;
  cd c0 = P.chi(1, k0);
  std::vector<double> q;
  for (int m = 4; m <= 9; ++m) {
    double d = std::ldexp(1.0, -m);
    cd k = k0 * (1.0 - d);
    q.push_back(std::abs(P.chi(1, k) - c0) / (d * (1.0 + std::abs(std::log(d)))));
  }
  double qmax = *std::max_element(q.begin(), q.end());
  CHECK(std::isfinite(qmax));
  CHECK(q.back() <= 2.0 * q.front() + 1e-12);
}

TEST_CASE("delta is bounded away from omega") {
  const auto& P = param03();
  double worst = 0;
  for (int i = 0; i < 40; ++i) {
    cd k = std::polar(0.5 + 0.04 * i, 0.157 * i);
    if (std::abs(k - kOmega) < 0.05) continue;
    for (int j = 1; j <= 5; ++j) {
      cd d = P.delta(j, k);
      worst = std::max({worst, std::abs(d), 1.0 / std::abs(d)});
    }
  }
  CHECK(worst < 10.0);
}

TEST_CASE("bundle serializes") {
  auto b = phase_factors(param03(), 50.0);
  auto j = to_json(b);
  CHECK(j["nu"]["nu1"].get<double>() == b.nus.nu1);
  CHECK(j["d10"][0].get<double>() == b.d10.real());
  CHECK_THROWS_AS(phase_factors(param03(), 1.0), DomainError);
}
