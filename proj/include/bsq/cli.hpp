#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/asymptotics.hpp"
#include "bsq/spectral_data.hpp"

namespace bsq {

enum ExitCode { kExitOk = 0, kExitIo = 1, kExitAssumption = 2, kExitDefects = 3, kExitVerify = 4 };

struct RunConfig {
  std::string mode;  // scatter | asymptotics | verify | model-rhp
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> only;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  bool timing = false;
};

// Files keyed by name, written in key order.
struct CmdResult {
  int exit_code = kExitOk;
  std::map<std::string, std::string> files;
  std::string message;
};

CmdResult cmd_scatter(const RunConfig& rc);
CmdResult cmd_asymptotics(const RunConfig& rc);
CmdResult cmd_verify(const RunConfig& rc);
CmdResult cmd_model_rhp(const RunConfig& rc);
CmdResult run_command(const RunConfig& rc);

// IoError on unreadable files; parse errors name the byte offset.
nlohmann::json read_json_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
void write_outputs(const CmdResult& r, const std::string& dir);

// Shortest round-trip decimal, '.' separator.
std::string csv_number(double v);
std::string csv_field(const std::string& s);

inline constexpr const char* kGridCsvHeader = "zeta,t,x,u,A1,A2,alpha1,alpha2,nu1,nu_hat2";
std::string grid_csv(const GridResult& g);
std::string defects_csv(const GridResult& g);
std::string plot_script(const std::string& csv_name);

// Grid axes from {"from","to","n"} objects or explicit lists.
std::vector<double> zeta_axis(const nlohmann::json& j);
std::vector<double> t_axis(const nlohmann::json& j);

// Spectral data from a config block: synthetic (optionally seeded, optionally
// perturbed) or a cache file. seed overrides the block's own seed.
SpectralPtr spectral_from_config(const nlohmann::json& j, std::optional<std::uint64_t> seed);

// Evaluates the grid with zeta split into contiguous chunks over threads;
// rows keep the serial order.
GridResult evaluate_grid_parallel(const std::vector<double>& zetas, const std::vector<double>& ts,
                                  SpectralPtr sd, int threads);

}  // namespace bsq
