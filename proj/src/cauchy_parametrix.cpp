#include "bsq/cauchy_parametrix.hpp"

#include <cmath>

#include "bsq/quadrature.hpp"

namespace bsq {

namespace {

const double kTwoPi = 2.0 * kPi;
const cd kTwoPiI{0.0, 2.0 * kPi};

// Argument transforms k, wk, w^2k, 1/k, 1/(wk), 1/(w^2k).
cd transform(int idx, cd k) {
  switch (idx) {
    case 0: return k;
    case 1: return kOmega * k;
    case 2: return kOmega2 * k;
    case 3: return 1.0 / k;
    case 4: return 1.0 / (kOmega * k);
    default: return 1.0 / (kOmega2 * k);
  }
}

using PowerTable = std::array<std::array<int, 6>, 5>;

const PowerTable kD1 = {{{0, 1, 1, -1, 2, -1},
                         {1, -2, 1, 2, -1, -1},
                         {-2, 1, 1, -1, 2, -1},
                         {-1, -1, 2, 1, 1, -2},
                         {-1, 2, -1, -2, 1, 1}}};

const PowerTable kD2 = {{{-1, -1, 2, -2, 1, 1},
                         {0, -1, -1, 1, 1, -2},
                         {0, -1, 2, -2, 1, 1},
                         {0, -2, 1, -1, 2, -1},
                         {0, 1, 1, -1, -1, 2}}};

const PowerTable kDelta33 = {{{-1, 0, 1, -1, 1, 0},
                              {1, -1, 0, 1, 0, -1},
                              {-1, 0, 1, -1, 1, 0},
                              {0, -1, 1, 0, 1, -1},
                              {-1, 1, 0, -1, 0, 1}}};

cd branch_L(BranchKind b, cd k, double theta) {
  return b == BranchKind::LnTildeS ? ln_tilde_s_fast(k, theta) : ln_s_fast(k, theta);
}

}  // namespace

double nu_of(cd x, const char* what) {
  if (!(x.real() > 0.0) || std::abs(x.imag()) > 1e-8 * std::max(1.0, std::abs(x)))
    throw DomainError(std::string("log argument not positive: ") + what);
  return -std::log(x.real()) / kTwoPi;
}

NuValues nu_values(const SaddleSet& S, const SpectralData& sd) {
  NuValues n;
  n.nu1 = nu_of(1.0 + sd.g(S.k4), "1 + r1 r2 at k4");
  n.nu2 = nu_of(1.0 + sd.g(kOmega2 * S.k2), "1 + r1 r2 at w^2 k2");
  n.nu3 = nu_of(sd.f(kI), "f(i)");
  n.nu4 = nu_of(sd.f(kOmega2 * S.k2), "f(w^2 k2)");
  n.nu5 = nu_of(sd.f(kOmega * S.k2), "f(w k2)");
  n.nu_hat2 = n.nu2 + n.nu5 - n.nu4;
  return n;
}

NuValues nu_values(double zeta, const SpectralData& sd) {
  return nu_values(saddle_points(zeta), sd);
}

ArcIntegralSpec arc_spec(int j, const SaddleSet& S) {
  double a4 = std::arg(kOmega * S.k4), a2 = std::arg(kOmega2 * S.k2);
  ArcIntegralSpec s;
  switch (j) {
    case 1: s.theta_a = a4; s.theta_b = 0.5 * kPi; s.kind = IntegrandKind::Log1pGRot; break;
    case 2: s.theta_a = 0.5 * kPi; s.theta_b = a2; s.kind = IntegrandKind::Log1pG; break;
    case 3: s.theta_a = 0.5 * kPi; s.theta_b = a2; s.kind = IntegrandKind::LogF; break;
    case 4: s.theta_a = a2; s.theta_b = 2.0 * kPi / 3.0; s.kind = IntegrandKind::LogF; s.regularized = true; break;
    case 5: s.theta_a = a2; s.theta_b = 2.0 * kPi / 3.0; s.kind = IntegrandKind::LogFRot; s.regularized = true; break;
    default: throw DomainError("arc index must be 1..5");
  }
  return s;
}

std::function<cd(double)> arc_integrand(IntegrandKind kind, const SpectralData& sd) {
  const SpectralData* p = &sd;
  switch (kind) {
    case IntegrandKind::Log1pG:
      return [p](double th) { return 1.0 + p->g(std::polar(1.0, th)); };
    case IntegrandKind::Log1pGRot:
      return [p](double th) { return 1.0 + p->g(kOmega2 * std::polar(1.0, th)); };
    case IntegrandKind::LogF:
      return [p](double th) { return p->f(std::polar(1.0, th)); };
    case IntegrandKind::LogFRot:
      return [p](double th) { return p->f(kOmega2 * std::polar(1.0, th)); };
  }
  return {};
}

ArcIntegral::ArcIntegral(ArcIntegralSpec spec, std::function<cd(double)> F,
                         int pieces, int order)
    : spec_(std::move(spec)), fit_(F, spec_.theta_a, spec_.theta_b, pieces, order) {}

std::vector<double> ArcIntegral::focus_for(cd k) const {
  std::vector<double> out;
  double a = spec_.theta_a, b = spec_.theta_b;
  double th = std::arg(k);
  for (double sh : {-kTwoPi, 0.0, kTwoPi}) {
    double c = std::clamp(th + sh, a, b);
    if (std::abs(k - std::polar(1.0, c)) < 0.2) out.push_back(c);
  }
  return out;
}

cd ArcIntegral::cauchy_log(cd k) const {
  double a = spec_.theta_a, b = spec_.theta_b;
  auto focus = focus_for(k);
  focus.push_back(a);
  focus.push_back(b);
  double best = 1e300, ts = a;
  for (double c : focus) {
    double d = std::abs(k - std::polar(1.0, c));
    if (d < best) best = d, ts = c;
  }
  if (best < 1e-12) throw NearContourError("k lies on the integration arc");
  if (best < 0.05 && ts > a && ts < b) {
    cd L0 = log_F(ts);
    auto fn = [&](double th) {
      cd s = std::polar(1.0, th);
      return (log_F(th) - L0) * kI * s / (s - k);
    };
    return (integrate(fn, a, b, focus) + L0 * arc_inc(k, a, b)) / kTwoPiI;
  }
  auto fn = [&](double th) {
    cd s = std::polar(1.0, th);
    return log_F(th) * kI * s / (s - k);
  };
  return integrate(fn, a, b, focus) / kTwoPiI;
}

cd ArcIntegral::chi_truncated(cd k, BranchKind branch, double eps) const {
  double a = spec_.theta_a, b = spec_.theta_b - eps;
  auto focus = focus_for(k);
  focus.push_back(b);
  auto fn = [&](double th) { return branch_L(branch, k, th) * dlog_F(th); };
  cd v = integrate(fn, a, b, focus);
  if (eps > 0.0) v -= branch_L(branch, k, spec_.theta_b) * log_F(b);
  return v / kTwoPiI;
}

RegularizedChi ArcIntegral::chi_regularized(cd k, BranchKind branch) const {
  const auto& e = spec_.epsilon_schedule;
  RegularizedChi r;
  for (double eps : e) r.raw.push_back(chi_truncated(k, branch, eps));
  // Neville extrapolation to eps = 0 (the truncation error is a power series in eps)
  auto extrap = [&](std::size_t from) {
    std::vector<cd> p(r.raw.begin() + from, r.raw.end());
    std::vector<double> x(e.begin() + from, e.end());
    for (std::size_t m = 1; m < p.size(); ++m)
      for (std::size_t i = p.size() - 1; i >= m; --i)
        p[i] = (x[i - m] * p[i] - x[i] * p[i - 1]) / (x[i - m] - x[i]);
    return p.back();
  };
  std::size_t n = r.raw.size();
  r.value = extrap(0);
  cd coarse = n >= 2 ? extrap(n - 2) : r.raw.back();
  r.relative_change = std::abs(r.value - coarse) / std::max(1.0, std::abs(r.value));
  if (n >= 3) {
    double d1 = std::abs(r.raw[n - 3] - r.raw[n - 2]), d2 = std::abs(r.raw[n - 2] - r.raw[n - 1]);
    r.observed_order = (d1 > 0 && d2 > 0) ? std::log(d1 / d2) / std::log(e[n - 3] / e[n - 2]) : 99.0;
  }
  if (r.relative_change > 1e-6)
    throw RegularizationError("epsilon extrapolation did not stabilize");
  return r;
}

cd ArcIntegral::chi(cd k, BranchKind branch) const {
  if (spec_.regularized) return chi_regularized(k, branch).value;
  return chi_truncated(k, branch, 0.0);
}

Zstar z_stars(const SaddleSet& S) {
  double z = S.zeta;
  cd k4 = S.k4, k2 = S.k2;
  cd pre = std::sqrt(2.0) * std::polar(1.0, kPi / 4);
  Zstar out;
  out.z1 = pre * std::sqrt(kOmega * (4.0 - 3.0 * k4 * z - k4 * k4 * k4 * z) / (4.0 * std::pow(k4, 4)));
  out.z2 = pre * std::sqrt(-kOmega2 * (4.0 - 3.0 * k2 * z - k2 * k2 * k2 * z) / (4.0 * std::pow(k2, 4)));
  auto fix = [](cd& zs, cd rot, const char* what) {
    cd c = -kI * rot * zs;
    if (c.real() < 0) zs = -zs, c = -c;
    if (!(c.real() > 0) || std::abs(c.imag()) > 1e-10 * std::abs(c))
      throw SignConditionError(std::string("sign condition fails for ") + what);
  };
  fix(out.z1, kOmega * k4, "z1*");
  fix(out.z2, kOmega2 * k2, "z2*");
  out.ln_z1 = cd(std::log(std::abs(out.z1)), 0.5 * kPi - std::arg(kOmega * k4));
  out.ln_z2 = cd(std::log(std::abs(out.z2)), 0.5 * kPi - std::arg(kOmega2 * k2));
  return out;
}

Parametrix::Parametrix(double zeta, SpectralPtr sd, int pieces, int order)
    : S_(saddle_points(zeta)) {
  nus_ = nu_values(S_, *sd);
  for (int j = 1; j <= 5; ++j) {
    auto spec = arc_spec(j, S_);
    arcs_.emplace_back(spec, arc_integrand(spec.kind, *sd), pieces, order);
    if (arcs_.back().fit_tail() > 1e-11)
      warnings_.push_back("arc " + std::to_string(j) + " fit not fully resolved");
  }
  warnings_.insert(warnings_.end(), S_.warnings.begin(), S_.warnings.end());
}

Parametrix::Parametrix(double zeta, std::vector<ArcIntegral> arcs, NuValues nus)
    : S_(saddle_points(zeta)), nus_(nus), arcs_(std::move(arcs)) {
  if (arcs_.size() != 5) throw DomainError("five arcs required");
}

cd Parametrix::chi(int j, cd k) const { return arc(j).chi(k, BranchKind::LnS); }

cd Parametrix::chi_tilde(int j, cd k) const {
  if (j < 2) throw DomainError("chi tilde is defined for j = 2..5");
  return arc(j).chi(k, BranchKind::LnTildeS);
}

RegularizedChi Parametrix::chi_tilde_detail(int j, cd k) const {
  return arc(j).chi_regularized(k, BranchKind::LnTildeS);
}

cd Parametrix::log_delta_direct(int j, cd k) const { return arc(j).cauchy_log(k); }

cd Parametrix::log_delta_closed(int j, cd k, DeltaForm form) const {
  const auto& n = nus_;
  double t4 = std::arg(kOmega * S_.k4), t2 = std::arg(kOmega2 * S_.k2);
  BranchKind bk = form == DeltaForm::LnTilde ? BranchKind::LnTildeS : BranchKind::LnS;
  if (j == 1 && form == DeltaForm::LnTilde)
    throw DomainError("delta_1 has no ln_tilde representation");
  BranchLog Bi{bk, kI}, B2{bk, std::polar(1.0, t2)};
  auto L = [&](const BranchLog& b) { return branch_log(b, k); };
  cd chi = arc(j).chi(k, bk);
  switch (j) {
    case 1:
      return -kI * n.nu1 * branch_log(BranchLog::ln_s(std::polar(1.0, t4)), k) +
             kI * n.nu3 * branch_log(BranchLog::ln_s(kI), k) - chi;
    case 2: return kI * n.nu2 * L(B2) - chi;
    case 3: return -kI * n.nu3 * L(Bi) + kI * n.nu4 * L(B2) - chi;
    case 4: return -kI * n.nu4 * L(B2) - chi;
    case 5: return -kI * n.nu5 * L(B2) - chi;
  }
  throw DomainError("delta index must be 1..5");
}

cd Parametrix::log_delta(int j, cd k) const {
  try {
    return log_delta_direct(j, k);
  } catch (const NearContourError&) {
    return log_delta_closed(j, k);
  }
}

namespace {

cd table_log(const Parametrix& P, const PowerTable& T, cd k) {
  cd sum = 0.0;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 6; ++i)
      if (T[j][i] != 0) sum += double(T[j][i]) * P.log_delta(j + 1, transform(i, k));
  return sum;
}

}  // namespace

cd Parametrix::log_D1(cd k) const { return table_log(*this, kD1, k); }
cd Parametrix::log_D2(cd k) const { return table_log(*this, kD2, k); }
cd Parametrix::log_Delta33(cd k) const { return table_log(*this, kDelta33, k); }

std::array<cd, 3> Parametrix::Delta_diag(cd k) const {
  return {std::exp(log_Delta33(kOmega * k)), std::exp(log_Delta33(kOmega2 * k)),
          std::exp(log_Delta33(k))};
}

cd Parametrix::log_d10(double t) const {
  const auto& n = nus_;
  cd k = kOmega * S_.k4;
  auto zs = zstars();
  return -4.0 * kPi * n.nu1 + 2.0 * chi(1, k) -
         2.0 * kI * n.nu3 * branch_log(BranchLog::ln_s(kI), k) -
         kI * n.nu1 * std::log(t) - 2.0 * kI * n.nu1 * zs.ln_z1 + log_D1(k);
}

cd Parametrix::log_d20(double t) const {
  const auto& n = nus_;
  cd k = kOmega2 * S_.k2;
  auto zs = zstars();
  double e = n.nu4 - n.nu5 - n.nu2;
  return -2.0 * chi(2, k) + chi(3, k) - chi_tilde(4, k) + 2.0 * chi_tilde(5, k) +
         kI * n.nu3 * branch_log(BranchLog::ln_s(kI), k) + kI * e * std::log(t) +
         2.0 * kI * e * zs.ln_z2 + log_D2(k);
}

ParametrixBundle phase_factors(const Parametrix& P, double t) {
  if (t < 2.0) throw DomainError("t must be at least 2");
  ParametrixBundle b;
  b.zeta = P.zeta();
  b.t = t;
  b.nus = P.nus();
  const auto& S = P.saddles();
  cd k1 = kOmega * S.k4, k2 = kOmega2 * S.k2;
  b.chi_at_saddle = {P.chi(1, k1), P.chi(2, k2), P.chi(3, k2), P.chi_tilde(4, k2),
                     P.chi_tilde(5, k2)};
  b.D1 = P.D1(k1);
  b.D2 = P.D2(k2);
  b.zstar = P.zstars();
  b.log_d10 = P.log_d10(t);
  b.log_d20 = P.log_d20(t);
  b.d10 = std::exp(b.log_d10);
  b.d20 = std::exp(b.log_d20);
  b.warnings = P.warnings();
  return b;
}

ParametrixBundle with_time(const ParametrixBundle& b, double t) {
  if (t < 2.0) throw DomainError("t must be at least 2");
  ParametrixBundle r = b;
  double l = std::log(t / b.t);
  r.t = t;
  r.log_d10 -= kI * b.nus.nu1 * l;
  r.log_d20 += kI * (b.nus.nu4 - b.nus.nu5 - b.nus.nu2) * l;
  r.d10 = std::exp(r.log_d10);
  r.d20 = std::exp(r.log_d20);
  return r;
}

nlohmann::json to_json(const ParametrixBundle& b) {
  auto c = [](cd z) { return nlohmann::json::array({z.real(), z.imag()}); };
  nlohmann::json j;
  j["zeta"] = b.zeta;
  j["t"] = b.t;
  j["nu"] = {{"nu1", b.nus.nu1}, {"nu2", b.nus.nu2}, {"nu3", b.nus.nu3},
             {"nu4", b.nus.nu4}, {"nu5", b.nus.nu5}, {"nu_hat2", b.nus.nu_hat2}};
  j["chi"] = {{"chi1", c(b.chi_at_saddle[0])}, {"chi2", c(b.chi_at_saddle[1])},
              {"chi3", c(b.chi_at_saddle[2])}, {"chi4_tilde", c(b.chi_at_saddle[3])},
              {"chi5_tilde", c(b.chi_at_saddle[4])}};
  j["D1"] = c(b.D1);
  j["D2"] = c(b.D2);
  j["z1_star"] = c(b.zstar.z1);
  j["z2_star"] = c(b.zstar.z2);
  j["d10"] = c(b.d10);
  j["d20"] = c(b.d20);
  j["log_d10"] = c(b.log_d10);
  j["log_d20"] = c(b.log_d20);
  j["warnings"] = b.warnings;
  return j;
}

}  // namespace bsq
