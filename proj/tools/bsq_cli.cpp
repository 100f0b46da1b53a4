#include <CLI11.hpp>

#include <iostream>

#include "bsq/cli.hpp"

using namespace bsq;

int main(int argc, char** argv) {
  CLI::App app{"Boussinesq sector toolkit"};
  app.require_subcommand(1);
  std::string config, out = ".";
  std::vector<std::string> only;
  std::uint64_t seed = 0;
  int threads = 1;
  bool timing = false, have_seed = false;

  for (const char* name : {"scatter", "asymptotics", "verify", "model-rhp"}) {
    auto* sc = app.add_subcommand(name);
    sc->add_option("--config", config, "JSON config file");
    sc->add_option("--out", out, "output directory")->capture_default_str();
    sc->add_option("--seed", seed, "seed of the synthetic spectral data")->each([&](const std::string&) {
      have_seed = true;
    });
    sc->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sc->add_flag("--timing", timing, "record wall time in a sidecar file");
    if (std::string(name) == "verify") sc->add_option("--only", only, "run only this suite (repeatable)");
  }
  CLI11_PARSE(app, argc, argv);

  RunConfig rc;
  rc.mode = app.get_subcommands().front()->get_name();
  rc.only = only;
  rc.threads = threads;
  rc.timing = timing;
  if (have_seed) rc.seed = seed;
  try {
    if (!config.empty()) rc.config = read_json_file(config);
    if (rc.mode != "verify" && config.empty())
      throw IoError(rc.mode + " needs --config");
    CmdResult r = run_command(rc);
    write_outputs(r, out);
    if (!r.message.empty()) std::cerr << r.message << "\n";
    return r.exit_code;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad config: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
