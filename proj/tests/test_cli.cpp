#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsq/cli.hpp"
#include "bsq/forward_scattering.hpp"
#include "bsq/spectral_core.hpp"

using namespace bsq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunConfig asym(nlohmann::json c) {
  RunConfig rc;
  rc.mode = "asymptotics";
  rc.config = std::move(c);
  return rc;
}

double max_r1_away_from_q(const std::string& cache_json) {
  double m = 0;
  for (const auto& r : spectral_cache_records(nlohmann::json::parse(cache_json))) {
    double d = std::abs(r.k);
    for (int j = 1; j <= 6; ++j) d = std::min(d, std::abs(r.k - kappa(j)));
    if (d > 0.1) m = std::max(m, std::abs(r.r1));
  }
  return m;
}

}  // namespace

TEST_CASE("frozen small config reproduces the golden table") {
  std::string dir = BSQ_SOURCE_DIR "/tests/golden/";
  auto rc = asym(read_json_file(dir + "asymptotics_small.json"));
  auto r = run_command(rc);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.files.at("asymptotics.csv") == slurp(dir + "asymptotics_small.csv"));
  CHECK(r.files.count("asymptotics_defects.csv") == 0);
}

TEST_CASE("tables are byte identical across runs and thread counts") {
  auto rc = asym({{"zeta", {{"from", 0.1}, {"to", 0.5}, {"n", 4}}}, {"t", {{"from", 10}, {"to", 1000}, {"n", 3}}}});
  auto a = run_command(rc);
  rc.threads = 3;
  auto b = run_command(rc);
  CHECK(a.files == b.files);
  auto& csv = a.files.at("asymptotics.csv");
  CHECK(csv.rfind(std::string(kGridCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE("single point grid gives a single row") {
  auto r = run_command(asym({{"zeta", {0.3}}, {"t", {100}}, {"plot", true}}));
  auto& csv = r.files.at("asymptotics.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
  CHECK(r.files.count("plot_u.py") == 1);
  CHECK(r.files.count("asymptotics_meta.json") == 0);
  auto rc = asym({{"zeta", {0.3}}, {"t", {100}}});
  rc.timing = true;
  CHECK(run_command(rc).files.count("asymptotics_meta.json") == 1);
}

TEST_CASE("grids with mostly defective points exit 3") {
  auto S = saddle_points(0.3);
  double center = std::arg(kOmega2 * S.k2);
  auto r = run_command(asym({{"zeta", {0.3}},
                             {"t", {10, 100}},
                             {"spectral", {{"perturb", {{"target", "r1"}, {"eps", 0.05}, {"center", center}, {"width", 0.05}}}}}}));
  CHECK(r.exit_code == kExitDefects);
  CHECK(r.files.count("asymptotics_defects.csv") == 1);
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(zeta_axis(nlohmann::json::array({0.3, 0.6})), DomainError);
  CHECK_THROWS_AS(t_axis(nlohmann::json::array({1.0})), DomainError);
  CHECK(t_axis({{"from", 10}, {"to", 1000}, {"n", 3}}) == std::vector<double>{10, 100, 1000});
  CHECK_THROWS_AS(parse_json_text("{\"a\": 1,, }", "inline"), IoError);
  try {
    parse_json_text("{\"preset\": x}", "inline");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("at byte 12") != std::string::npos);
  }
  CHECK_THROWS_AS(read_json_file("/nonexistent/config.json"), IoError);
  CHECK_THROWS_AS(spectral_from_config({{"source", "tape"}}, std::nullopt), DomainError);
}

TEST_CASE("csv quoting follows RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_number(0.1) == "0.1");
  CHECK(csv_number(-2.5e-17) == "-2.5e-17");
  CHECK_THROWS_AS(csv_number(NAN), DomainError);
}

TEST_CASE("scatter on zero data writes a zero cache") {
  RunConfig rc;
  rc.mode = "scatter";
  rc.config = {{"preset", "zero"}};
  auto r = run_command(rc);
  CHECK(r.exit_code == kExitOk);
  for (const auto& rec : spectral_cache_records(nlohmann::json::parse(r.files.at("spectral_cache.json")))) {
    CHECK(rec.r1 == 0.0);
    if (rec.contour_id == "circle") CHECK(rec.r2 == 0.0);
  }
  auto rep = nlohmann::json::parse(r.files.at("assumptions.json"));
  CHECK(rep["assumption_i"]["pass"] == true);
  CHECK(rep["assumption_iii"]["pass"] == true);
  CHECK(rep["assumption_ii"]["pass"] == false);
}

TEST_CASE("scatter cache scales linearly with amplitude away from Q hat") {
  RunConfig rc;
  rc.mode = "scatter";
  rc.config = {{"preset", "gaussian"}, {"params", {{"u0_amplitude", 1e-3}, {"v0_amplitude", 5e-4}}}};
  auto a = run_command(rc);
  CHECK(a.exit_code == kExitAssumption);
  rc.config["params"] = {{"u0_amplitude", 2e-3}, {"v0_amplitude", 1e-3}};
  auto b = run_command(rc);
  double ratio = max_r1_away_from_q(b.files.at("spectral_cache.json")) /
                 max_r1_away_from_q(a.files.at("spectral_cache.json"));
  CHECK(std::abs(ratio - 2.0) < 0.02);
  rc.config["assumption_iii"] = "warn";
  CHECK(run_command(rc).exit_code == kExitOk);
}

TEST_CASE("verify exit codes and injected defect") {
  RunConfig rc;
  rc.mode = "verify";
  rc.only = {"model-rhp"};
  auto ok = run_command(rc);
  CHECK(ok.exit_code == kExitOk);
  auto rep = nlohmann::json::parse(ok.files.at("verify_report.json"));
  CHECK(rep["pass"] == true);
  CHECK(rep["tolerances"]["beta_product"] == 1e-12);
  rc.only = {"scattering"};
  rc.config = {{"spectral", {{"perturb", {{"target", "r2"}, {"eps", 1e-3}, {"center", 2.2}, {"width", 0.1}}}}}};
  auto bad = run_command(rc);
  CHECK(bad.exit_code == kExitVerify);
  CHECK(bad.message.find("r2_symmetry") != std::string::npos);
}

TEST_CASE("model-rhp report") {
  RunConfig rc;
  rc.mode = "model-rhp";
  rc.config = {{"model", 2}, {"q2", {0.3, 0.2}}, {"q5", {-0.25, 0.1}}, {"q6", {0.4, -0.3}}, {"z", {{1.0, 1.0}}}};
  auto r = run_command(rc);
  auto j = nlohmann::json::parse(r.files.at("model_rhp.json"));
  CHECK(j["max_jump_residual"].get<double>() < 1e-7);
  CHECK(j["m1_deviation"]["r200"].get<double>() < j["m1_deviation"]["r50"].get<double>());
  CHECK(j["samples"].size() == 1);
  rc.config = {{"model", 1}, {"q", {1.2, 0.0}}};
  CHECK_THROWS_AS(run_command(rc), AdmissibilityError);
  rc.config = {{"model", 3}};
  CHECK_THROWS_AS(run_command(rc), DomainError);
}

TEST_CASE("outputs are written in one directory") {
  auto dir = (std::filesystem::temp_directory_path() / "bsq_cli_test_out").string();
  std::filesystem::remove_all(dir);
  CmdResult r;
  r.files["a.txt"] = "x\n";
  r.files["b.txt"] = "y\n";
  write_outputs(r, dir);
  CHECK(slurp(dir + "/a.txt") == "x\n");
  CHECK(slurp(dir + "/b.txt") == "y\n");
  std::filesystem::remove_all(dir);
}
