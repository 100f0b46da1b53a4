#include "bsq/cli.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "bsq/forward_scattering.hpp"
#include "bsq/model_rhp.hpp"
#include "bsq/verify.hpp"

namespace bsq {

namespace {

nlohmann::json cd_json(cd z) { return nlohmann::json::array({z.real(), z.imag()}); }

cd json_cd(const nlohmann::json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return cd(j[0].get<double>(), j[1].get<double>());
  throw DomainError(std::string(what) + " must be a number or [re, im]");
}

nlohmann::json mat_json(const Mat3& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < 3; ++j) r.push_back(cd_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> axis(const nlohmann::json& j, const char* what, bool log_default) {
  std::vector<double> v;
  if (j.is_array()) {
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
  }
  if (!j.is_object()) throw DomainError(std::string(what) + " must be a list or {from, to, n}");
  double a = j.at("from").get<double>(), b = j.at("to").get<double>();
  int n = j.at("n").get<int>();
  if (n < 1) throw DomainError(std::string(what) + ".n must be positive");
  bool lg = j.value("spacing", log_default ? "log" : "linear") == "log";
  if (lg && !(a > 0 && b > 0)) throw DomainError(std::string(what) + ": log spacing needs positive ends");
  for (int i = 0; i < n; ++i) {
    double s = n == 1 ? 0.0 : double(i) / (n - 1);
    v.push_back(lg ? a * std::pow(b / a, s) : a + (b - a) * s);
  }
  return v;
}

double now_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("malformed JSON in " + origin + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_json_text(ss.str(), path);
}

void write_outputs(const CmdResult& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
  for (const auto& [name, body] : r.files) {
    auto path = (std::filesystem::path(dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << body;
    if (!f) throw IoError("write failed for " + path);
  }
}

std::string csv_number(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value in a table row");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string grid_csv(const GridResult& g) {
  std::string out = std::string(kGridCsvHeader) + "\n";
  for (const auto& r : g.rows) {
    double v[] = {r.zeta, r.t, r.x, r.u, r.A1, r.A2, r.alpha1, r.alpha2, r.nu1, r.nu_hat2};
    for (size_t i = 0; i < std::size(v); ++i) out += (i ? "," : "") + csv_number(v[i]);
    out += "\n";
  }
  return out;
}

std::string defects_csv(const GridResult& g) {
  std::string out = "zeta,t,message\n";
  for (const auto& d : g.defects) out += csv_number(d.zeta) + "," + csv_number(d.t) + "," + csv_field(d.message) + "\n";
  return out;
}

std::string plot_script(const std::string& csv_name) {
  return "import csv\n"
         "import sys\n"
         "import matplotlib.pyplot as plt\n"
         "\n"
         "path = sys.argv[1] if len(sys.argv) > 1 else \"" + csv_name + "\"\n"
         "rows = list(csv.DictReader(open(path)))\n"
         "ts = sorted({float(r[\"t\"]) for r in rows})\n"
         "t = float(sys.argv[2]) if len(sys.argv) > 2 else ts[-1]\n"
         "sel = sorted((float(r[\"x\"]), float(r[\"u\"])) for r in rows if float(r[\"t\"]) == t)\n"
         "plt.plot([p[0] for p in sel], [p[1] for p in sel], \".-\")\n"
         "plt.xlabel(\"x\")\n"
         "plt.ylabel(\"u leading term\")\n"
         "plt.title(\"t = %g\" % t)\n"
         "plt.savefig(path.rsplit(\".\", 1)[0] + \"_t%g.png\" % t, dpi=150)\n";
}

std::vector<double> zeta_axis(const nlohmann::json& j) {
  auto v = axis(j, "zeta", false);
  if (v.empty()) throw DomainError("zeta grid is empty");
  for (double z : v)
    if (!(z > 0 && z < 1.0 / kSqrt3)) throw DomainError("zeta values must lie in (0, 1/sqrt(3))");
  return v;
}

std::vector<double> t_axis(const nlohmann::json& j) {
  auto v = axis(j, "t", true);
  if (v.empty()) throw DomainError("t grid is empty");
  for (double t : v)
    if (!(t >= 2)) throw DomainError("t values must be >= 2");
  return v;
}

SpectralPtr spectral_from_config(const nlohmann::json& j, std::optional<std::uint64_t> seed) {
  std::string src = j.value("source", "synthetic");
  SpectralPtr sd;
  if (src == "synthetic") {
    auto s = seed;
    if (!s && j.contains("seed")) s = j["seed"].get<std::uint64_t>();
    sd = default_spectral(s);
  } else if (src == "cache") {
    auto recs = read_spectral_cache(j.at("path").get<std::string>());
    sd = std::make_shared<const TabulatedSpectral>(recs, SpectralMode::FromInitialData);
  } else {
    throw DomainError("unknown spectral source '" + src + "'");
  }
  if (j.contains("perturb")) {
    const auto& p = j["perturb"];
    std::string tg = p.value("target", "r2");
    if (tg != "r1" && tg != "r2") throw DomainError("perturb.target must be r1 or r2");
    sd = std::make_shared<const PerturbedSpectral>(
        sd, tg == "r1" ? PerturbedSpectral::Target::R1 : PerturbedSpectral::Target::R2, p.value("eps", 1e-3),
        p.value("center", 0.5), p.value("width", 0.3));
  }
  return sd;
}

GridResult evaluate_grid_parallel(const std::vector<double>& zetas, const std::vector<double>& ts,
                                  SpectralPtr sd, int threads) {
  int n = std::max(1, std::min<int>(threads, zetas.size()));
  if (n == 1) return evaluate_grid(zetas, ts, sd);
  std::vector<GridResult> parts(n);
  std::vector<std::thread> pool;
  size_t chunk = (zetas.size() + n - 1) / n;
  for (int i = 0; i < n; ++i) {
    size_t a = std::min(zetas.size(), i * chunk), b = std::min(zetas.size(), a + chunk);
    std::vector<double> part(zetas.begin() + a, zetas.begin() + b);
    pool.emplace_back([&parts, i, part, &ts, sd] { parts[i] = evaluate_grid(part, ts, sd); });
  }
  for (auto& t : pool) t.join();
  GridResult out;
  for (auto& p : parts) {
    out.rows.insert(out.rows.end(), p.rows.begin(), p.rows.end());
    out.defects.insert(out.defects.end(), p.defects.begin(), p.defects.end());
  }
  return out;
}

CmdResult cmd_scatter(const RunConfig& rc) {
  const auto& c = rc.config;
  nlohmann::json data = c.contains("initial_data") ? c["initial_data"] : c;
  InitialData d = InitialData::from_json(data);
  ForwardScattering fs(d);
  int per = c.value("circle_per_sextant", 24), nseg = c.value("segment_nodes", 12), nray = c.value("ray_nodes", 12);
  double atol = c.value("assumption_tol", 1e-6);
  std::string mode_iii = c.value("assumption_iii", "error");
  if (mode_iii != "error" && mode_iii != "warn") throw DomainError("assumption_iii must be error or warn");

  auto nodes = circle_grid(per);
  for (auto& n : segment_grid(nseg)) nodes.push_back(n);
  for (auto& n : ray_grid(nray)) nodes.push_back(n);
  std::vector<std::string> skipped;
  auto recs = fs.tabulate(nodes, &skipped);
  auto rep = check_assumptions(fs, 6 * per, atol);

  nlohmann::json limits = nlohmann::json::array();
  for (const auto& [name, v] : rep.limits) limits.push_back({{"quantity", name}, {"value", cd_json(v)}});
  auto r1 = [&](cd k) { return fs.r1(k); };
  auto r2 = [&](cd k) { return fs.r2(k); };
  nlohmann::json report{
      {"preset", d.preset},
      {"n_samples", d.n_samples},
      {"x_support", {d.x_min, d.x_max}},
      {"assumption_i", {{"min_abs_s11", rep.min_abs_s11}, {"at", cd_json(rep.min_abs_s11_at)},
                        {"pass", rep.no_solitons}}},
      {"assumption_ii", {{"limits", limits}, {"pass", rep.generic}}},
      {"assumption_iii", {{"max_abs_r1_segment", rep.max_abs_r1_segment}, {"tol", atol}, {"pass", rep.global}}},
      {"r1_at_1", cd_json(fs.circle_limit_two_sided(r1, 1.0))},
      {"r1_at_minus_1", cd_json(fs.circle_limit_two_sided(r1, -1.0))},
      {"r2_at_1", cd_json(fs.circle_limit_two_sided(r2, 1.0))},
      {"r2_at_minus_1", cd_json(fs.circle_limit_two_sided(r2, -1.0))},
      {"notes", rep.notes},
      {"skipped_nodes", skipped}};
  CmdResult out;
  out.files["spectral_cache.json"] = spectral_cache_json(recs).dump(1) + "\n";
  out.files["assumptions.json"] = report.dump(1) + "\n";
  if (!rep.global && mode_iii == "error") {
    out.exit_code = kExitAssumption;
    out.message = "assumption (iii) fails: max |r1| on [0, i] = " + csv_number(rep.max_abs_r1_segment);
  }
  return out;
}

CmdResult cmd_asymptotics(const RunConfig& rc) {
  const auto& c = rc.config;
  auto zetas = zeta_axis(c.at("zeta"));
  auto ts = t_axis(c.at("t"));
  nlohmann::json sj = c.contains("spectral") ? c["spectral"] : nlohmann::json::object();
  SpectralPtr sd = spectral_from_config(sj, rc.seed);
  CmdResult out;
  if (sj.value("source", "synthetic") == "cache") {
    auto rep = check_assumptions(*sd, 24, c.value("assumption_tol", 1e-6));
    if (!rep.global) {
      out.exit_code = kExitAssumption;
      out.message = "assumption (iii) fails for the cached data";
      return out;
    }
  }
  double t0 = now_seconds();
  auto g = evaluate_grid_parallel(zetas, ts, sd, rc.threads);
  double wall = now_seconds() - t0;
  out.files["asymptotics.csv"] = grid_csv(g);
  if (!g.defects.empty()) out.files["asymptotics_defects.csv"] = defects_csv(g);
  if (c.value("plot", false)) out.files["plot_u.py"] = plot_script("asymptotics.csv");
  if (rc.timing)
    out.files["asymptotics_meta.json"] =
        nlohmann::json{{"wall_time_s", wall}, {"grid", {zetas.size(), ts.size()}}, {"threads", rc.threads}}.dump(1) +
        "\n";
  size_t total = zetas.size() * ts.size();
  if (10 * g.defects.size() > total) {
    out.exit_code = kExitDefects;
    out.message = std::to_string(g.defects.size()) + " of " + std::to_string(total) + " grid points defect";
  }
  return out;
}

CmdResult cmd_verify(const RunConfig& rc) {
  const auto& c = rc.config;
  VerifyOptions o;
  o.only = rc.only;
  if (c.contains("tolerances")) o.tol = Tolerances::from_json(c["tolerances"]);
  o.spectral = spectral_from_config(c.contains("spectral") ? c["spectral"] : nlohmann::json::object(), rc.seed);
  auto rep = run_verify(o);
  auto j = rep.to_json();
  j["tolerances"] = o.tol.to_json();
  CmdResult out;
  out.files["verify_report.json"] = j.dump(1) + "\n";
  if (!rep.all_pass()) {
    out.exit_code = kExitVerify;
    std::string m = "failing checks:";
    for (const auto& f : rep.failing()) m += " " + f;
    out.message = m;
  }
  return out;
}

CmdResult cmd_model_rhp(const RunConfig& rc) {
  const auto& c = rc.config;
  int model = c.value("model", 2);
  std::vector<cd> zs;
  if (c.contains("z"))
    for (const auto& z : c["z"]) zs.push_back(json_cd(z, "z"));
  std::vector<double> radii = c.value("radii", std::vector<double>{0.4, 1.3, 3.0});
  nlohmann::json r;
  r["model"] = model;
  double jump = 0;
  auto record_jumps = [&](const std::vector<JumpResidual>& res) {
    for (const auto& e : res) jump = std::max(jump, std::max(e.analytic, e.offset));
  };
  nlohmann::json samples = nlohmann::json::array();
  if (model == 1) {
    auto p = ModelParams1::make(json_cd(c.at("q"), "q"));
    auto b = beta_model1(p);
    r["q"] = cd_json(p.q);
    r["nu"] = p.nu;
    r["beta12"] = cd_json(b.b12);
    r["beta21"] = cd_json(b.b21);
    r["m1"] = mat_json(m1_pattern(p));
    record_jumps(mX_jump_residuals(p, radii));
    r["m1_deviation"] = {{"r50", m1_deviation(p, 50)}, {"r200", m1_deviation(p, 200)}};
    for (cd z : zs) samples.push_back({{"z", cd_json(z)}, {"mX", mat_json(mX_eval(p, z))}});
  } else if (model == 2) {
    auto p = c.contains("q4") ? ModelParams2::make(json_cd(c.at("q2"), "q2"), json_cd(c["q4"], "q4"),
                                                   json_cd(c.at("q5"), "q5"), json_cd(c.at("q6"), "q6"))
                              : ModelParams2::from_q256(json_cd(c.at("q2"), "q2"), json_cd(c.at("q5"), "q5"),
                                                        json_cd(c.at("q6"), "q6"));
    auto b = beta_model2(p);
    r["q"] = {{"q2", cd_json(p.q2)}, {"q4", cd_json(p.q4)}, {"q5", cd_json(p.q5)}, {"q6", cd_json(p.q6)}};
    r["nu"] = {{"nu2", p.nu2}, {"nu4", p.nu4}, {"nu5", p.nu5}, {"nu_hat2", p.nu_hat2}};
    r["beta12"] = cd_json(b.b12);
    r["beta21"] = cd_json(b.b21);
    r["m1"] = mat_json(m1_pattern(p));
    record_jumps(mX_jump_residuals(p, radii));
    r["m1_deviation"] = {{"r50", m1_deviation(p, 50)}, {"r200", m1_deviation(p, 200)}};
    for (cd z : zs) samples.push_back({{"z", cd_json(z)}, {"mX", mat_json(mX_eval(p, z))}});
  } else {
    throw DomainError("model must be 1 or 2");
  }
  r["max_jump_residual"] = jump;
  r["samples"] = samples;
  CmdResult out;
  out.files["model_rhp.json"] = r.dump(1) + "\n";
  return out;
}

CmdResult run_command(const RunConfig& rc) {
  if (rc.mode == "scatter") return cmd_scatter(rc);
  if (rc.mode == "asymptotics") return cmd_asymptotics(rc);
  if (rc.mode == "verify") return cmd_verify(rc);
  if (rc.mode == "model-rhp") return cmd_model_rhp(rc);
  throw DomainError("unknown mode '" + rc.mode + "'");
}

}  // namespace bsq
