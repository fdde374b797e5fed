// Command-line front end; talks to the library only through homricci.h.
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "homricci/homricci.h"

namespace {

int exit_code(hrf_status s) {
  switch (s) {
    case HRF_OK:
      return 0;
    case HRF_ERR_VERIFICATION:
      return 2;
    default:
      return 1;
  }
}

int report(hrf_status s, const char* command) {
  if (s != HRF_OK && s != HRF_ERR_VERIFICATION) {
    std::fprintf(stderr, "homricci %s: %s: %s\n", command, hrf_status_string(s),
                 hrf_last_error());
  }
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homogeneous Ricci flow on SO(3)xR^3/SO(2) and SL(2,C)/U(1)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", hrf_version());

  std::string config, out_csv, out_json;
  auto* run = app.add_subcommand("run", "integrate one flow; write CSV and summary JSON");
  run->add_option("--config", config, "run configuration")->required();
  run->add_option("--out-csv", out_csv, "trajectory CSV path");
  run->add_option("--out-json", out_json, "summary JSON path");

  bool parallel = false;
  std::string sweep_config, sweep_json;
  auto* sweep = app.add_subcommand("sweep", "integrate a grid or random set of initial conditions");
  sweep->add_option("--config", sweep_config, "sweep configuration")->required();
  sweep->add_option("--out-json", sweep_json, "aggregate JSON path")->required();
  sweep->add_flag("--parallel", parallel, "spread trajectories over hardware threads");

  std::size_t samples = 1000;
  std::uint64_t seed = 20240611;
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--samples", samples, "random instances per case")->capture_default_str();
  verify->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*run) {
    return report(hrf_cmd_run(config.c_str(),
                              out_csv.empty() ? nullptr : out_csv.c_str(),
                              out_json.empty() ? nullptr : out_json.c_str()),
                  "run");
  }
  if (*sweep) {
    return report(hrf_cmd_sweep(sweep_config.c_str(), sweep_json.c_str(),
                                parallel ? 1 : 0),
                  "sweep");
  }
  char* text = nullptr;
  const hrf_status s = hrf_cmd_verify(samples, seed, &text);
  if (text != nullptr) {
    std::fputs(text, stdout);
    hrf_string_free(text);
  }
  return report(s, "verify");
}
