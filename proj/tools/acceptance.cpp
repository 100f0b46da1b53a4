#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "bsq/cli.hpp"
#include "bsq/forward_scattering.hpp"
#include "bsq/verify.hpp"

using namespace bsq;

namespace {

Tolerances pinned() {
  Tolerances t;
  t.saddle_stationarity = 1e-8;
  t.saddle_modulus = 1e-12;
  t.d10_modulus = 1e-8;
  t.d20_modulus = 1e-6;
  t.delta_jump = 1e-6;
  t.delta_slope = 0.05;
  t.delta_dual = 1e-7;
  t.vsymm = 1e-9;
  t.factorization = 1e-8;
  t.solver = kSolverTol;
  t.r_at_pm1 = 1e-3;
  t.born_linearity = 10 * 1e-4;  // O(eps) at eps = 1e-4
  t.beta_product = 1e-12;
  t.gamma_modulus = 1e-12;
  t.vpsi_constancy = 1e-7;
  t.mX_jump = 1e-7;
  t.m1_pattern = 1e-3;
  t.envelope = 0.01;
  t.phase_law = 1e-8;
  t.nu_sign = 1e-12;
  return t;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Suite {
  VerifyReport rep;
  double seconds = 0;
};

Suite run_suite(const std::function<void(VerifyReport&)>& fn) {
  Suite s;
  auto t0 = std::chrono::steady_clock::now();
  try {
    fn(s.rep);
  } catch (const std::exception& e) {
    s.rep.records.push_back({"", "suite_error", e.what(), NAN, 0, false});
  }
  s.seconds = seconds_since(t0);
  return s;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

int failures = 0;

void criterion(int n, const std::string& title, const Suite& s, const std::vector<std::string>& prefixes,
               double limit_s) {
  bool ok = true, any = false;
  std::string detail;
  for (const auto& r : s.rep.records) {
    bool sel = r.check == "suite_error";
    for (const auto& p : prefixes) sel = sel || starts_with(r.check, p);
    if (!sel) continue;
    any = true;
    ok = ok && r.pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s %.2g/%.2g", detail.empty() ? "" : ", ", r.check.c_str(), r.residual, r.tol);
    detail += buf;
  }
  bool fast = s.seconds < limit_s;
  bool pass = any && ok && fast;
  if (!pass) ++failures;
  std::printf("criterion %d %s %s: %s [%.2f s, limit %.0f s]\n", n, pass ? "PASS" : "FAIL", title.c_str(),
              detail.c_str(), s.seconds, limit_s);
}

bool determinism_and_cache(std::string& detail) {
  bool ok = true;
  RunConfig a;
  a.mode = "asymptotics";
  a.config = {{"zeta", {{"from", 0.1}, {"to", 0.5}, {"n", 5}}}, {"t", {{"from", 10}, {"to", 1e4}, {"n", 4}}}};
  auto a1 = run_command(a), a2 = run_command(a);
  a.threads = 2;
  auto a3 = run_command(a);
  bool asym = a1.files == a2.files && a1.files == a3.files;
  RunConfig s;
  s.mode = "scatter";
  s.config = {{"preset", "gaussian"}, {"assumption_iii", "warn"}};
  auto s1 = run_command(s), s2 = run_command(s);
  bool scat = s1.files == s2.files;
  RunConfig v;
  v.mode = "verify";
  v.only = {"core", "model-rhp"};
  bool ver = run_command(v).files == run_command(v).files;

  auto recs = spectral_cache_records(nlohmann::json::parse(s1.files.at("spectral_cache.json")));
  auto path = (std::filesystem::temp_directory_path() / "bsq_acceptance_cache.json").string();
  write_spectral_cache(path, recs);
  auto back = read_spectral_cache(path);
  std::filesystem::remove(path);
  bool trip = back.size() == recs.size();
  for (size_t i = 0; trip && i < recs.size(); ++i) {
    auto same = [](cd x, cd y) {
      return (x == y) || (std::isnan(x.real()) && std::isnan(y.real()) && std::isnan(x.imag()) && std::isnan(y.imag()));
    };
    trip = back[i].contour_id == recs[i].contour_id && back[i].k == recs[i].k && same(back[i].r1, recs[i].r1) &&
           same(back[i].r2, recs[i].r2);
  }
  trip = trip && spectral_cache_json(back).dump(1) + "\n" == s1.files.at("spectral_cache.json");
  ok = asym && scat && ver && trip;
  detail = std::string("asymptotics csv ") + (asym ? "identical" : "differs") + " (3 runs, 1 and 2 threads), scatter " +
           (scat ? "identical" : "differs") + ", verify report " + (ver ? "identical" : "differs") + ", cache " +
           std::to_string(recs.size()) + " records round trip " + (trip ? "bit exact" : "differs");
  return ok;
}

}  // namespace

int main() {
  const Tolerances tol = pinned();
  SpectralPtr sd = default_spectral();

  auto core = run_suite([&](VerifyReport& r) { verify_core(r, tol); });
  criterion(1, "saddle closed form", core, {"saddle_stationarity", "saddle_modulus"}, 1.0);

  auto par = run_suite([&](VerifyReport& r) { verify_parametrix(r, tol, sd); });
  criterion(2, "modulus identities", par, {"d10_modulus", "d20_modulus"}, 30.0);
  criterion(3, "delta jump relations", par, {"delta_jump_", "delta_decay_slope"}, 60.0);
  criterion(4, "dual representation", par, {"delta_dual_2", "delta_dual_3", "delta_dual_4", "delta_dual_5"}, 60.0);

  auto jumps = run_suite([&](VerifyReport& r) { verify_jumps(r, tol, *sd); });
  criterion(5, "jump algebra", jumps, {"vsymm_", "factorization_"}, 60.0);

  auto scat = run_suite([&](VerifyReport& r) { verify_scattering(r, tol, *sd); });
  criterion(6, "scattering", scat, {"zero_data_r", "born_linearity", "r1r2_conjugation", "r1_at_pm1", "r2_at_pm1"},
            300.0);

  auto model = run_suite([&](VerifyReport& r) { verify_model_rhp(r, tol); });
  criterion(7, "model RHPs", model,
            {"beta_product_", "gamma_modulus", "vpsi_constancy", "mX_jump", "m1_pattern_50", "m1_pattern_improves"},
            60.0);

  auto asym = run_suite([&](VerifyReport& r) { verify_asymptotics(r, tol, sd); });
  criterion(8, "theorem structure", asym, {"envelope_bound", "phase_increment_", "nu_nonnegative"}, 30.0);

  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool det = false;
  try {
    det = determinism_and_cache(detail);
  } catch (const std::exception& e) {
    detail = e.what();
  }
  if (!det) ++failures;
  std::printf("criterion 9 %s determinism and format: %s [%.2f s]\n", det ? "PASS" : "FAIL", detail.c_str(),
              seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
