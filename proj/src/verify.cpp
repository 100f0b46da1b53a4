#include "bsq/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>

#include "bsq/asymptotics.hpp"
#include "bsq/cauchy_parametrix.hpp"
#include "bsq/forward_scattering.hpp"
#include "bsq/model_rhp.hpp"
#include "bsq/rhp_jumps.hpp"
#include "bsq/special.hpp"
#include "bsq/spectral_core.hpp"

namespace bsq {

namespace {

#define BSQ_TOL_FIELDS(X)                                                                     \
  X(saddle_stationarity) X(saddle_modulus) X(index_relations) X(d10_modulus) X(d20_modulus) \
  X(delta_jump) X(delta_slope) X(delta_dual) X(vsymm) X(factorization) X(coefficients)       \
  X(determinant) X(spectral_symmetry) X(solver) X(r_at_pm1) X(born_linearity)               \
  X(march_order) X(beta_product) X(gamma_modulus) X(vpsi_constancy) X(mX_jump)              \
  X(m1_pattern) X(envelope) X(phase_law) X(amplitude_real) X(nu_sign)

std::string fmt_k(cd k) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", k.real(), k.imag());
  return buf;
}

std::string fmt_d(const char* name, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%.6g", name, v);
  return buf;
}

// Worst residual of one named check.
class Acc {
 public:
  Acc(VerifyReport& rep, std::string suite, std::string check, double tol)
      : rep_(rep), slot_(rep.records.size()), tol_(tol) {
    rep_.records.push_back({std::move(suite), std::move(check), "", 0.0, tol, false});
  }
  Acc(const Acc&) = delete;
  ~Acc() {
    auto& r = rep_.records[slot_];
    r.at = at_;
    r.residual = bad_ ? NAN : worst_;
    r.pass = !bad_ && worst_ <= tol_;
  }
  void add(double r, const std::string& at) {
    if (!std::isfinite(r)) {
      if (!bad_) at_ = at;
      bad_ = true;
      return;
    }
    if (!bad_ && (r > worst_ || at_.empty())) {
      worst_ = std::max(worst_, r);
      at_ = at;
    }
  }
  void fail(const std::string& at) {
    bad_ = true;
    at_ = at;
  }

 private:
  VerifyReport& rep_;
  size_t slot_;
  std::string at_;
  double tol_, worst_ = 0;
  bool bad_ = false;
};

void single(VerifyReport& rep, const std::string& suite, const std::string& check, double r,
            double tol, const std::string& at) {
  Acc a(rep, suite, check, tol);
  a.add(r, at);
}

cd dk(const std::function<cd(cd)>& f, cd k, double h = 1e-6) {
  return (f(k + h) - f(k - h)) / (2 * h);
}

}  // namespace

Tolerances Tolerances::from_json(const nlohmann::json& j) {
  Tolerances t;
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
#define BSQ_READ(f)                                                         \
  if (it.key() == #f) {                                                     \
    t.f = it.value().get<double>();                                         \
    if (!(t.f >= 0)) throw DomainError("tolerance " #f " must be >= 0");    \
    known = true;                                                           \
  }
    BSQ_TOL_FIELDS(BSQ_READ)
#undef BSQ_READ
    if (!known) throw DomainError("unknown tolerance '" + it.key() + "'");
  }
  return t;
}

nlohmann::json Tolerances::to_json() const {
  nlohmann::json j;
#define BSQ_WRITE(f) j[#f] = f;
  BSQ_TOL_FIELDS(BSQ_WRITE)
#undef BSQ_WRITE
  return j;
}

bool VerifyReport::all_pass() const {
  for (const auto& r : records)
    if (!r.pass) return false;
  return true;
}

std::vector<std::string> VerifyReport::failing() const {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (!r.pass) out.push_back(r.suite + "/" + r.check);
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json o{{"suite", r.suite}, {"check", r.check}, {"k", r.at}, {"tol", r.tol}, {"pass", r.pass}};
    if (std::isfinite(r.residual))
      o["residual"] = r.residual;
    else
      o["residual"] = nullptr;
    recs.push_back(o);
  }
  return {{"pass", all_pass()}, {"failing", failing()}, {"records", recs}};
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"core", "scattering", "jumps", "parametrix", "asymptotics",
                                             "model-rhp"};
  return s;
}

SpectralPtr default_spectral(std::optional<std::uint64_t> seed) {
  return std::make_shared<const SyntheticSpectral>(seed ? SyntheticParams::from_seed(*seed) : SyntheticParams{});
}

void verify_core(VerifyReport& rep, const Tolerances& tol) {
  const std::string S = "core";
  {
    Acc stat(rep, S, "saddle_stationarity", tol.saddle_stationarity);
    Acc mod(rep, S, "saddle_modulus", tol.saddle_modulus);
    Acc rot(rep, S, "rotated_saddles", tol.saddle_stationarity);
    for (int n = 0; n < 100; ++n) {
      double z = 0.05 + 0.45 * n / 99.0;
      auto Sd = saddle_points(z);
      auto at = fmt_d("zeta", z);
      auto p21 = [z](cd k) { return phi(PhaseId::P21, z, k); };
      auto p31 = [z](cd k) { return phi(PhaseId::P31, z, k); };
      auto p32 = [z](cd k) { return phi(PhaseId::P32, z, k); };
      for (int j = 1; j <= 4; ++j) {
        stat.add(std::abs(dk(p21, Sd.k(j))), at);
        rot.add(std::max(std::abs(dk(p31, kOmega * Sd.k(j))), std::abs(dk(p32, kOmega2 * Sd.k(j)))), at);
      }
      mod.add(std::max(std::abs(std::abs(Sd.k2) - 1.0), std::abs(std::abs(Sd.k4) - 1.0)), at);
    }
  }
  {
    Acc rot(rep, S, "l_rotation", tol.index_relations);
    Acc inv(rep, S, "l_inversion", tol.index_relations);
    Acc sch(rep, S, "phi_schwarz", tol.index_relations);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> rr(0.2, 3.0), aa(-kPi, kPi);
    for (int n = 0; n < 100; ++n) {
      cd k = std::polar(rr(rng), aa(rng));
      auto at = fmt_k(k);
      for (int j = 1; j <= 3; ++j) {
        double sc = std::max(1.0, std::abs(l_func(j, k)));
        rot.add(std::abs(l_func(j, kOmega * k) - l_func(j % 3 + 1, k)) / sc, at);
        rot.add(std::abs(z_func(j, kOmega * k) - z_func(j % 3 + 1, k)) / std::max(1.0, std::abs(z_func(j, k))), at);
        inv.add(std::abs(l_func(j, 1.0 / k) - l_func((3 - j) % 3 == 0 ? 3 : 3 - j, k)) / sc, at);
      }
      sch.add(std::abs(phi(PhaseId::P21, 0.3, std::conj(k)) - std::conj(phi(PhaseId::P21, 0.3, k))) /
                  std::max(1.0, std::abs(phi(PhaseId::P21, 0.3, k))),
              at);
    }
  }
  {
    cd k = std::polar(1.0, 0.3);
    single(rep, S, "r_tilde_real", std::abs(r_tilde(k).imag()), 1e-12, fmt_k(k));
    single(rep, S, "r_tilde_product",
           std::abs(r_tilde(k) - r_tilde(1.0 / (kOmega * k)) * r_tilde(1.0 / (kOmega2 * k))), 1e-12, fmt_k(k));
    cd q = std::polar(1.1, 0.4);
    double r = std::max(std::abs(phi(PhaseId::P31, 0.3, q) + phi(PhaseId::P21, 0.3, kOmega2 * q)),
                        std::abs(phi(PhaseId::P32, 0.3, q) - phi(PhaseId::P21, 0.3, kOmega * q)));
    single(rep, S, "phi_relations", r, tol.index_relations * 10, fmt_k(q));
  }
}

void verify_scattering(VerifyReport& rep, const Tolerances& tol, const SpectralData& sd) {
  const std::string S = "scattering";
  {
    Acc sym(rep, S, "r2_symmetry", tol.spectral_symmetry);
    Acc rel(rep, S, "r1r2_unit_circle", tol.spectral_symmetry);
    for (int n = 0; n < 64; ++n) {
      cd k = std::polar(1.0, 2 * kPi * (n + 0.37) / 64);
      auto at = fmt_k(k);
      try {
        sym.add(std::abs(sd.r2(k) - r_tilde(k) * std::conj(sd.r1(k))), at);
        rel.add(std::abs(sd.r1(1.0 / (kOmega * k)) + sd.r2(kOmega * k) + sd.r1(kOmega2 * k) * sd.r2(1.0 / k)), at);
      } catch (const Error&) {
        sym.fail(at);
        rel.fail(at);
      }
    }
  }

  auto gauss = InitialData::gaussian(0.5, 1.0, 0.3, 1.0, 0.0);
  ForwardScattering fs(gauss);
  {
    Acc z(rep, S, "zero_data_r", 0.0);
    ForwardScattering zf(InitialData::gaussian(0.0, 1.0, 0.0, 1.0, 0.0), 300);
    for (int n = 0; n < 64; ++n) {
      cd k = std::polar(1.0, 2 * kPi * (n + 0.37) / 64);
      z.add(std::max(std::abs(zf.r1(k)), std::abs(zf.r2(k))), fmt_k(k));
    }
  }
  {
    cd k = std::polar(1.0, 0.9);
    ForwardScattering a(gauss.scaled(1e-4)), b(gauss.scaled(1e-5));
    cd ra = a.r1(k) / 1e-4, rb = b.r1(k) / 1e-5;
    single(rep, S, "born_linearity", std::abs(ra - rb) / std::abs(ra), tol.born_linearity, fmt_k(k));
  }
  {
    Acc rel(rep, S, "r1r2_circle_relation", 10 * tol.solver);
    Acc conj(rep, S, "r1r2_conjugation", 10 * tol.solver);
    for (int n = 0; n < 32; ++n) {
      cd k = std::polar(1.0, 2 * kPi * (n + 0.37) / 32);
      auto at = fmt_k(k);
      rel.add(std::abs(fs.r1(1.0 / (kOmega * k)) + fs.r2(kOmega * k) + fs.r1(kOmega2 * k) * fs.r2(1.0 / k)), at);
      conj.add(std::abs(fs.r2(k) - r_tilde(k) * std::conj(fs.r1(k))), at);
    }
  }
  {
    Acc r1a(rep, S, "r1_at_pm1", tol.r_at_pm1);
    Acc r2a(rep, S, "r2_at_pm1", tol.r_at_pm1);
    auto r1 = [&](cd k) { return fs.r1(k); };
    auto r2 = [&](cd k) { return fs.r2(k); };
    for (double ks : {1.0, -1.0}) {
      r1a.add(std::abs(fs.circle_limit_two_sided(r1, ks) - 1.0), fmt_k(ks));
      r2a.add(std::abs(fs.circle_limit_two_sided(r2, ks) + 1.0), fmt_k(ks));
    }
    Acc fz(rep, S, "f_at_1_omega", 10 * tol.solver);
    auto f = [&](cd k) {
      auto g = [&](cd q) { return fs.r1(q) * fs.r2(q); };
      return 1.0 + g(k) + g(1.0 / (kOmega2 * k));
    };
    for (cd ks : {cd(1.0), kOmega}) fz.add(std::abs(fs.circle_limit_two_sided(f, ks)), fmt_k(ks));
  }
  {
    cd k = std::polar(1.0, 0.7);
    std::vector<Mat3> X;
    for (int n : {480, 960, 1920}) X.push_back(solve_volterra(k, gauss, VolterraKind::X, n).X_min);
    double order = std::log2(max_abs(X[1] - X[0]) / max_abs(X[2] - X[1]));
    single(rep, S, "march_order", std::abs(order - 4.0), tol.march_order, fmt_d("order", order));
    ForwardScattering coarse(gauss, gauss.n_samples / 2);
    single(rep, S, "solver_step_halving", std::abs(fs.r1(k) - coarse.r1(k)), tol.solver, fmt_k(k));
  }
  {
    auto rep_a = check_assumptions(fs);
    single(rep, S, "s11_nonzero", rep_a.no_solitons ? 0.0 : 1.0, 0.0, fmt_k(rep_a.min_abs_s11_at));
    single(rep, S, "generic_limits", rep_a.generic ? 0.0 : 1.0, 0.0, "k=+-1");
  }
}

void verify_jumps(VerifyReport& rep, const Tolerances& tol, const SpectralData& sd) {
  const std::string S = "jumps";
  const double x = 0.51, t = 1.7;
  {
    Acc A(rep, S, "vsymm_A", tol.vsymm);
    Acc B(rep, S, "vsymm_B", tol.vsymm);
    Acc det(rep, S, "jump_det", tol.determinant);
    std::vector<cd> pts;
    for (int deg = 30; deg < 360; deg += 60)
      for (int i = 0; i < 20; ++i) {
        pts.push_back(std::polar(0.1 + 0.85 * (i + 0.5) / 20, deg * kPi / 180));
        pts.push_back(std::polar(1.05 + 2.0 * (i + 0.5) / 20, deg * kPi / 180));
      }
    for (int s = 0; s < 6; ++s)
      for (int i = 0; i < 20; ++i) pts.push_back(std::polar(1.0, s * kPi / 3 + kPi / 3 * (i + 0.5) / 20));
    for (cd k : pts) {
      auto at = fmt_k(k);
      try {
        auto r = verify_v_symmetry(x, t, k, sd);
        A.add(r.a, at);
        B.add(r.b, at);
        det.add(std::abs(jump_at(x, t, k, sd).determinant() - 1.0), at);
      } catch (const Error&) {
        A.fail(at);
        B.fail(at);
      }
    }
  }
  {
    double zeta = 0.3, tt = 1.7, xx = zeta * tt;
    auto Sd = saddle_points(zeta);
    double a4 = std::arg(kOmega * Sd.k4), a2 = std::arg(kOmega2 * Sd.k2);
    struct Arc {
      const char* name;
      double lo, hi;
    };
    for (Arc arc : {Arc{"123", kPi / 3, a4}, Arc{"456", a4, kPi / 2}, Arc{"789", kPi / 2, a2},
                    Arc{"101112", a2, 2 * kPi / 3 - 1e-2}}) {
      Acc f(rep, S, std::string("factorization_") + arc.name, tol.factorization);
      Acc c(rep, S, std::string("coefficients_") + arc.name, tol.coefficients);
      for (int i = 1; i <= 12; ++i) {
        cd k = std::polar(1.0, arc.lo + (arc.hi - arc.lo) * i / 13.0);
        auto at = fmt_k(k);
        try {
          f.add(verify_factorizations(xx, tt, k, sd).at(arc.name), at);
          c.add(verify_coefficients(xx, tt, k, sd).at(arc.name), at);
        } catch (const Error&) {
          f.fail(at);
          c.fail(at);
        }
      }
    }
  }
}

void verify_parametrix(VerifyReport& rep, const Tolerances& tol, SpectralPtr sd) {
  const std::string S = "parametrix";
  {
    Acc m1(rep, S, "d10_modulus", tol.d10_modulus);
    Acc m2(rep, S, "d20_modulus", tol.d20_modulus);
    for (double zeta : {0.2, 0.35, 0.5}) {
      Parametrix P(zeta, sd);
      auto n = P.nus();
      for (double t : {10.0, 100.0, 1000.0}) {
        auto b = phase_factors(P, t);
        auto at = fmt_d("zeta", zeta) + "," + fmt_d("t", t);
        m1.add(std::abs(std::abs(b.d10) - 1.0), at);
        m2.add(std::abs(std::abs(b.d20) - std::exp(kPi * (2 * n.nu2 - n.nu4))), at);
      }
    }
  }
  Parametrix P(0.3, sd);
  for (int j = 1; j <= 5; ++j) {
    Acc jr(rep, S, "delta_jump_" + std::to_string(j), tol.delta_jump);
    auto sp = P.arc(j).spec();
    for (int i = 1; i <= 8; ++i) {
      double th = sp.theta_a + (sp.theta_b - sp.theta_a) * i / 9.0;
      cd k = std::polar(1.0, th);
      cd ratio = P.delta_closed(j, k * (1.0 - 1e-7)) / P.delta_closed(j, k * (1.0 + 1e-7));
      cd want = j == 1 ? 1.0 + sd->g(kOmega2 * k)
                : j == 2 ? 1.0 + sd->g(k)
                : j == 5 ? sd->f(kOmega2 * k)
                         : sd->f(k);
      jr.add(std::abs(ratio - want), fmt_k(k));
    }
  }
  {
    Acc sl(rep, S, "delta_decay_slope", tol.delta_slope);
    for (int j = 1; j <= 5; ++j) {
      double a = std::abs(P.delta_direct(j, std::polar(1e3, 0.3)) - 1.0);
      double b = std::abs(P.delta_direct(j, std::polar(1e4, 0.3)) - 1.0);
      double slope = std::log10(b / a);
      sl.add(std::abs(slope + 1.0), "delta_" + std::to_string(j) + " " + fmt_d("slope", slope));
    }
  }
  {
    std::vector<cd> pts = {cd(0.5, 0.3), cd(0.05, 1.3), cd(0.2, 0.95), cd(-0.4, 0.8), cd(2, -1),
                           cd(-0.3, 0.7), cd(0.1, -0.2), cd(-1.5, 0.2), cd(0.6, 0.6), cd(0.9, -0.9)};
    for (int j = 1; j <= 5; ++j) {
      Acc d(rep, S, "delta_dual_" + std::to_string(j), tol.delta_dual);
      for (cd k : pts) {
        d.add(std::abs(P.delta_direct(j, k) - P.delta_closed(j, k)), fmt_k(k));
        if (j >= 2) d.add(std::abs(P.delta_direct(j, k) - P.delta_closed(j, k, DeltaForm::LnTilde)), fmt_k(k));
      }
    }
  }
  {
    auto z = P.zstars();
    auto Sd = P.saddles();
    double s1 = (-kI * kOmega * Sd.k4 * z.z1).real(), s2 = (-kI * kOmega2 * Sd.k2 * z.z2).real();
    single(rep, S, "zstar_sign", std::max(0.0, -std::min(s1, s2)), 0.0, fmt_d("zeta", 0.3));
  }
}

void verify_asymptotics(VerifyReport& rep, const Tolerances& tol, SpectralPtr sd) {
  const std::string S = "asymptotics";
  {
    Acc nu(rep, S, "nu_nonnegative", tol.nu_sign);
    for (int n = 0; n < 24; ++n) {
      double zeta = 0.05 + 0.45 * n / 23.0;
      auto v = nu_values(zeta, *sd);
      nu.add(std::max(0.0, -std::min(v.nu1, v.nu_hat2)), fmt_d("zeta", zeta));
    }
  }
  const double zeta = 0.3;
  Parametrix P(zeta, sd);
  auto q = q_coefficients(zeta, *sd);
  single(rep, S, "q_admissibility", q.admissibility_residual, 1e-9, fmt_d("zeta", zeta));
  auto b = phase_factors(P, 100.0);
  auto L0 = leading_term(zeta, 100.0, b, q);
  {
    Acc re(rep, S, "amplitude_real", tol.amplitude_real);
    Acc ti(rep, S, "amplitude_t_independent", 1e-10);
    for (double t : {100.0, 1000.0, 10000.0}) {
      auto L = leading_term(zeta, t, with_time(b, t), q);
      for (int i = 0; i < 2; ++i) {
        re.add(L.terms[i].imag_residual, fmt_d("t", t));
        ti.add(std::abs(L.terms[i].amplitude - L0.terms[i].amplitude), fmt_d("t", t));
      }
    }
  }
  {
    Acc p1(rep, S, "phase_increment_1", tol.phase_law);
    Acc p2(rep, S, "phase_increment_2", tol.phase_law);
    auto n = P.nus();
    auto Sd = P.saddles();
    double im31 = phi(PhaseId::P31, zeta, phase_saddle(PhaseId::P31, Sd)).imag();
    double im32 = phi(PhaseId::P32, zeta, phase_saddle(PhaseId::P32, Sd)).imag();
    for (double t : {1000.0, 10000.0}) {
      auto L = leading_term(zeta, t, phase_factors(P, t), q);
      double law1 = -(t - 100.0) * im31 - n.nu1 * std::log(t / 100.0);
      double law2 = -(t - 100.0) * im32 - n.nu_hat2 * std::log(t / 100.0);
      p1.add(std::abs(L.terms[0].phase - L0.terms[0].phase - law1), fmt_d("t", t));
      p2.add(std::abs(L.terms[1].phase - L0.terms[1].phase - law2), fmt_d("t", t));
    }
  }
  {
    double bound = std::abs(L0.terms[0].amplitude) + std::abs(L0.terms[1].amplitude);
    double best = 0, excess = 0;
    for (double t = 100; t <= 10000; t += 0.05) {
      auto L = leading_term(zeta, t, with_time(b, t), q);
      double v = std::abs(L.u) * std::sqrt(t);
      best = std::max(best, v);
      excess = std::max(excess, v / bound - 1.0);
    }
    // the sweep must stay below the bound and come within the tolerance of it
    double r = std::max(excess, 1.0 - best / bound);
    single(rep, S, "envelope_bound", r, tol.envelope, fmt_d("max_ratio", best / bound));
  }
}

void verify_model_rhp(VerifyReport& rep, const Tolerances& tol) {
  const std::string S = "model-rhp";
  {
    auto p1 = ModelParams1::make(std::polar(0.6, 1.1));
    auto b1 = beta_model1(p1);
    single(rep, S, "beta_product_1", std::abs(b1.b12 * b1.b21 - p1.nu), tol.beta_product, fmt_k(p1.q));
    Acc b2(rep, S, "beta_product_2", tol.beta_product);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.35, 0.35);
    for (int i = 0; i < 20; ++i) {
      auto p = ModelParams2::from_q256({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
      auto b = beta_model2(p);
      b2.add(std::abs(b.b12 * b.b21 - p.nu_hat2), fmt_k(p.q2));
    }
  }
  {
    Acc g(rep, S, "gamma_modulus", tol.gamma_modulus);
    for (double nu : {0.05, 0.3, 1.0}) {
      double lhs = std::norm(gamma_fn(cd(0.0, nu)));
      double rhs = 2 * kPi / (nu * (std::exp(kPi * nu) - std::exp(-kPi * nu)));
      g.add(std::abs(lhs - rhs) / rhs, fmt_d("nu", nu));
    }
  }
  auto p2 = ModelParams2::from_q256({0.3, 0.2}, {-0.25, 0.1}, {0.4, -0.3});
  auto p1 = ModelParams1::make(std::polar(0.6, 1.1));
  {
    Acc c(rep, S, "vpsi_constancy", tol.vpsi_constancy);
    const double h = 1e-6;
    auto side = [&](double x, double s) {
      Mat3 a = psi_matrix(p2, cd(x, s * h)), b = psi_matrix(p2, cd(x, 2 * s * h));
      return Mat3(2.0 * a - b);
    };
    Mat3 vp = v_psi_positive(p2);
    for (double x : {-2.0, -1.0, 1.0, 2.0})
      c.add(max_abs(side(x, -1).inverse() * side(x, 1) - vp), fmt_d("x", x));
    c.add(max_abs(v_psi_negative(p2) - vp), "products");
  }
  {
    Acc j(rep, S, "mX_jump", tol.mX_jump);
    for (const auto& r : mX_jump_residuals(p2, {0.4, 1.3, 3.0}))
      j.add(std::max(r.analytic, r.offset), "model2 " + ray_name(r.ray) + " " + fmt_k(r.z));
    for (const auto& r : mX_jump_residuals(p1, {0.4, 1.3, 3.0}))
      j.add(std::max(r.analytic, r.offset), "model1 " + ray_name(r.ray) + " " + fmt_k(r.z));
  }
  {
    double a2 = m1_deviation(p2, 50), c2 = m1_deviation(p2, 200);
    double a1 = m1_deviation(p1, 50), c1 = m1_deviation(p1, 200);
    Acc m(rep, S, "m1_pattern_50", tol.m1_pattern);
    m.add(a2, "model2 |z|=50");
    m.add(a1, "model1 |z|=50");
    Acc im(rep, S, "m1_pattern_improves", 1.0 - 1e-12);
    im.add(c2 / a2, "model2 ratio 200/50");
    im.add(c1 / a1, "model1 ratio 200/50");
  }
}

VerifyReport run_verify(const VerifyOptions& opt) {
  auto wanted = [&](const std::string& s) {
    if (opt.only.empty()) return true;
    for (const auto& o : opt.only)
      if (o == s) return true;
    return false;
  };
  for (const auto& o : opt.only) {
    bool ok = false;
    for (const auto& s : verify_suites()) ok = ok || s == o;
    if (!ok) throw DomainError("unknown suite '" + o + "'");
  }
  SpectralPtr sd = opt.spectral ? opt.spectral : default_spectral();
  VerifyReport rep;
  auto guarded = [&](const std::string& suite, auto&& fn) {
    if (!wanted(suite)) return;
    try {
      fn();
    } catch (const std::exception& e) {
      rep.records.push_back({suite, "suite_error", e.what(), NAN, 0.0, false});
    }
  };
  guarded("core", [&] { verify_core(rep, opt.tol); });
  guarded("scattering", [&] { verify_scattering(rep, opt.tol, *sd); });
  guarded("jumps", [&] { verify_jumps(rep, opt.tol, *sd); });
  guarded("parametrix", [&] { verify_parametrix(rep, opt.tol, sd); });
  guarded("asymptotics", [&] { verify_asymptotics(rep, opt.tol, sd); });
  guarded("model-rhp", [&] { verify_model_rhp(rep, opt.tol); });
  return rep;
}

}  // namespace bsq
