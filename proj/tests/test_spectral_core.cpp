#include <catch_amalgamated.hpp>

#include <random>

#include "bsq/forward_scattering.hpp"
#include "bsq/spectral_core.hpp"
#include "bsq/spectral_data.hpp"

using namespace bsq;

namespace {

cd w_pow(int j) { return std::exp(2.0 * kPi * kI * double(j) / 3.0); }

cd l_ref(int j, cd k) { return kI * (w_pow(j) * k + 1.0 / (w_pow(j) * k)) / (2.0 * std::sqrt(3.0)); }

cd z_ref(int j, cd k) {
  cd m = w_pow(j) * k;
  return kI * (m * m + 1.0 / (m * m)) / (4.0 * std::sqrt(3.0));
}

cd phi_ref(int i, int j, double zeta, cd k) {
  return (l_ref(i, k) - l_ref(j, k)) * zeta + z_ref(i, k) - z_ref(j, k);
}

cd dk(const std::function<cd(cd)>& f, cd k, double h = 1e-6) {
  return (f(k + h) - f(k - h)) / (2 * h);
}

int wrap(int j) { return ((j - 1) % 3 + 3) % 3 + 1; }

}  // namespace

TEST_CASE("eigenvalue rotation and inversion") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rr(0.2, 3.0), aa(-kPi, kPi);
  for (int n = 0; n < 100; ++n) {
    cd k = std::polar(rr(rng), aa(rng));
    for (int j = 1; j <= 3; ++j) {
      CHECK(std::abs(l_func(j, k) - l_ref(j, k)) < 1e-13);
      CHECK(std::abs(z_func(j, k) - z_ref(j, k)) < 1e-13 * std::max(1.0, std::abs(z_ref(j, k))));
      CHECK(std::abs(l_func(j, kOmega * k) - l_func(wrap(j + 1), k)) < 1e-13 * std::max(1.0, std::abs(l_func(j, k))));
      CHECK(std::abs(z_func(j, kOmega * k) - z_func(wrap(j + 1), k)) < 1e-13 * std::max(1.0, std::abs(z_func(j, k))));
      CHECK(std::abs(l_func(j, 1.0 / k) - l_func(wrap(3 - j), k)) < 1e-13 * std::max(1.0, std::abs(l_func(j, k))));
    }
  }
  CHECK_THROWS_AS(l_func(1, 0.0), DomainError);
}

TEST_CASE("phase functions and their relations") {
  double zeta = 0.3;
  cd k = std::polar(1.1, 0.4);
  CHECK(std::abs(phi(PhaseId::P21, zeta, k) - phi_ref(2, 1, zeta, k)) < 1e-14);
  CHECK(std::abs(phi(PhaseId::P31, zeta, k) + phi(PhaseId::P21, zeta, kOmega2 * k)) < 1e-13);
  CHECK(std::abs(phi(PhaseId::P32, zeta, k) - phi(PhaseId::P21, zeta, kOmega * k)) < 1e-13);
  CHECK(std::abs(theta(PhaseId::P21, 3.0, 10.0, k) - 10.0 * phi(PhaseId::P21, 0.3, k)) < 1e-12);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> rr(0.3, 2.0), aa(-kPi, kPi);
  for (int n = 0; n < 20; ++n) {
    cd q = std::polar(rr(rng), aa(rng));
    CHECK(std::abs(phi(PhaseId::P21, zeta, std::conj(q)) - std::conj(phi(PhaseId::P21, zeta, q))) < 1e-13);
  }
}

TEST_CASE("saddle points are stationary and unimodular") {
  for (int n = 0; n < 50; ++n) {
    double zeta = 0.02 + 0.54 * n / 49.0;
    auto S = saddle_points(zeta);
    for (int j = 1; j <= 4; ++j) {
      cd kj = S.k(j);
      CHECK(std::abs(std::abs(kj) - 1.0) < 1e-12);
      auto p21 = [&](cd q) { return phi_ref(2, 1, zeta, q); };
      CHECK(std::abs(dk(p21, kj)) < 1e-8);
      auto p31 = [&](cd q) { return phi_ref(3, 1, zeta, q); };
      auto p32 = [&](cd q) { return phi_ref(3, 2, zeta, q); };
      CHECK(std::abs(dk(p31, kOmega * kj)) < 1e-8);
      CHECK(std::abs(dk(p32, kOmega2 * kj)) < 1e-8);
    }
    CHECK(std::abs(S.k1 - std::conj(S.k2)) == 0.0);
    CHECK(std::abs(S.k3 - std::conj(S.k4)) == 0.0);
    double a4 = std::arg(S.k4);
    CHECK(a4 < -kPi / 6);
    CHECK(a4 > -kPi / 4);
  }
  auto S = saddle_points(0.25);
  for (int j = 1; j <= 4; ++j)
    CHECK(std::abs(dk([](cd q) { return phi_ref(2, 1, 0.25, q); }, S.k(j))) < 1e-9);
  auto z = saddle_points(1e-10);
  CHECK(std::abs(z.k4 - std::polar(1.0, -kPi / 4)) < 1e-9);
  CHECK(std::abs(z.k2 - std::polar(1.0, -3 * kPi / 4)) < 1e-9);
  CHECK_FALSE(z.warnings.empty());
  CHECK(saddle_points(0.3).warnings.empty());
  CHECK_THROWS_AS(saddle_points(0.0), DomainError);
  CHECK_THROWS_AS(saddle_points(1.0 / std::sqrt(3.0)), DomainError);
}

TEST_CASE("r tilde") {
  CHECK(std::abs(r_tilde(kOmega)) < 1e-15);
  cd k = std::polar(1.0, 0.3);
  CHECK(std::abs(r_tilde(k).imag()) < 1e-12);
  CHECK(std::abs(r_tilde(k) - r_tilde(1.0 / (kOmega * k)) * r_tilde(1.0 / (kOmega2 * k))) < 1e-12);
  cd ref = (kOmega2 - k * k) / (1.0 - kOmega2 * k * k);
  CHECK(std::abs(r_tilde(k) - ref) < 1e-14);
  CHECK_THROWS_AS(r_tilde(kOmega2), PoleError);
  CHECK_THROWS_AS(r_tilde(-kOmega2), PoleError);
}

TEST_CASE("branch logs") {
  cd s = kI;
  CHECK(std::abs(branch_log(BranchLog::ln_s(s), s + 1.0) - cd(0, 2 * kPi)) < 1e-14);
  CHECK(std::abs(branch_log(BranchLog::ln_tilde_s(s), s + 1.0)) < 1e-14);
  for (const auto& b : {BranchLog::ln_s(s), BranchLog::ln_tilde_s(s), BranchLog::principal(), BranchLog::ln0(cd(0.2, 0))}) {
    INFO(b.describe());
    cd k = b.kind == BranchKind::Ln0 ? cd(-0.5, 0) : cd(0.5, 0);
    for (double e : {1e-6, 1e-8}) {
      cd up = branch_log(b, k + kI * e), dn = branch_log(b, k - kI * e);
      CHECK(std::abs(up - dn) < 10 * e);
    }
    cd k1 = k + cd(0.3, 0.2);
    CHECK(std::abs(std::exp(branch_log(b, k1)) - (k1 - b.s)) < 1e-13);
  }
  CHECK_THROWS_AS(branch_log(BranchLog::ln_s(s), cd(0, 2)), BranchCutError);
  CHECK_THROWS_AS(branch_log(BranchLog::ln_tilde_s(s), cd(-2, 0)), BranchCutError);
  CHECK_THROWS_AS(branch_log(BranchLog::principal(), cd(-1, 0)), BranchCutError);
  CHECK_THROWS_AS(branch_log(BranchLog::ln0(), cd(1, 0)), BranchCutError);
  cd s2 = std::polar(1.0, 2.0);
  CHECK_THROWS_AS(branch_log(BranchLog::ln_s(s2), std::polar(1.0, 1.8)), BranchCutError);
  CHECK_NOTHROW(branch_log(BranchLog::ln_s(s2), std::polar(0.9, 1.8)));
  CHECK_THROWS_AS(branch_log(BranchLog::ln_s(cd(0.5, 0)), 1.0), DomainError);
}

TEST_CASE("synthetic data satisfy the unit circle relations") {
  SyntheticSpectral sd;
  double sym = 0, conj = 0, minf = 1e9, ming = 1e9;
  for (int n = 0; n < 400; ++n) {
    cd k = std::polar(1.0, -kPi + 2 * kPi * (n + 0.31) / 400);
    cd res = sd.r1(1.0 / (kOmega * k)) + sd.r2(kOmega * k) + sd.r1(kOmega2 * k) * sd.r2(1.0 / k);
    sym = std::max(sym, std::abs(res));
    conj = std::max(conj, std::abs(sd.r2(k) - r_tilde(k) * std::conj(sd.r1(k))));
    minf = std::min(minf, sd.f(k).real());
    ming = std::min(ming, (1.0 + sd.g(k)).real());
  }
  CHECK(sym < 1e-12);
  CHECK(conj < 1e-14);
  CHECK(minf > 0);
  CHECK(ming > 0);
  CHECK(std::abs(sd.r1(kI)) < 1e-14);
  CHECK(sd.r1(cd(0, 0.4)) == 0.0);
  for (int j = 1; j <= 6; ++j) CHECK(std::abs(sd.r1(kappa(j) * std::polar(1.0, 1e-9))) < 1e-8);
}

TEST_CASE("seeded synthetic data are deterministic and still symmetric") {
  auto a = SyntheticParams::from_seed(7), b = SyntheticParams::from_seed(7), c = SyntheticParams::from_seed(8);
  CHECK(a.amp_a == b.amp_a);
  CHECK(a.amp_a != c.amp_a);
  SyntheticSpectral sd(a);
  double sym = 0;
  for (int n = 0; n < 100; ++n) {
    cd k = std::polar(1.0, 2 * kPi * (n + 0.5) / 100);
    sym = std::max(sym, std::abs(sd.r1(1.0 / (kOmega * k)) + sd.r2(kOmega * k) + sd.r1(kOmega2 * k) * sd.r2(1.0 / k)));
  }
  CHECK(sym < 1e-12);
}

TEST_CASE("tabulated data interpolate between circle nodes") {
  SyntheticSpectral sd;
  std::vector<SpectralRecord> recs;
  for (auto& n : circle_grid(48, 1e-12)) recs.push_back({"circle", n.k, sd.r1(n.k), sd.r2(n.k)});
  TabulatedSpectral tab(recs, SpectralMode::UserSupplied);
  double mx = 0;
  for (int n = 0; n < 200; ++n) {
    cd k = std::polar(1.0, 2 * kPi * (n + 0.21) / 200);
    mx = std::max(mx, std::abs(tab.r1(k) - sd.r1(k)));
    mx = std::max(mx, std::abs(tab.r2(k) - sd.r2(k)));
  }
  CHECK(mx < 1e-8);
  recs.resize(10);
  CHECK_THROWS_AS(TabulatedSpectral(recs, SpectralMode::UserSupplied), DomainError);
}

TEST_CASE("perturbation is localized") {
  auto base = std::make_shared<const SyntheticSpectral>();
  PerturbedSpectral p(base, PerturbedSpectral::Target::R1, 0.05, 0.5, 0.05);
  CHECK(std::abs(p.r1(std::polar(1.0, 0.5)) - base->r1(std::polar(1.0, 0.5)) - 0.05) < 1e-14);
  CHECK(std::abs(p.r1(std::polar(1.0, 2.5)) - base->r1(std::polar(1.0, 2.5))) < 1e-12);
  CHECK(p.r2(std::polar(1.0, 0.5)) == base->r2(std::polar(1.0, 0.5)));
}

TEST_CASE("user supplied r1 vanishing on the segment passes assumption (iii)") {
  SyntheticSpectral sd;
  auto rep = check_assumptions(sd);
  CHECK(rep.global);
  CHECK(rep.max_abs_r1_segment == 0.0);
  CHECK_FALSE(rep.notes.empty());
}
