// SPDX-License-Identifier: Apache-2.0
//
// mmbeam command-line front end: batch experiment runs, codebook dumps and
// the release-gate selfcheck.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmbeam/config_io.hpp"
#include "mmbeam/errors.hpp"
#include "mmbeam/report.hpp"
#include "mmbeam/selfcheck.hpp"
#include "mmbeam/version.hpp"

namespace {

// Seed precedence: --set master_seed=... > MMBEAM_SEED > config file.
void apply_env_seed(nlohmann::json& j) {
  const char* env = std::getenv("MMBEAM_SEED");
  if (env == nullptr || *env == '\0') return;
  try {
    j["master_seed"] = static_cast<std::uint64_t>(std::stoull(env));
  } catch (const std::exception&) {
    throw mmbeam::ConfigError(std::string("MMBEAM_SEED is not an integer: '") + env + "'");
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::vector<std::string>& overrides, unsigned threads, bool quiet) {
  nlohmann::json j = mmbeam::load_config_json(config_path);
  apply_env_seed(j);
  for (const std::string& kv : overrides) mmbeam::apply_override(j, kv);
  const mmbeam::ScenarioConfig cfg = mmbeam::config_from_json(j);

  if (!quiet) {
    std::cout << "mmbeam " << mmbeam::kVersion << ": "
              << (cfg.mode == mmbeam::SearchMode::single_node ? "single-node" : "two-node")
              << " run, " << cfg.n_trials << " trials, seed " << cfg.master_seed << std::endl;
  }
  const mmbeam::ScenarioResult result = mmbeam::run_scenario(cfg, threads);
  const mmbeam::OutputBundle bundle = mmbeam::write_outputs(cfg, result, out_dir, threads);
  if (!quiet) {
    std::cout << "wrote " << bundle.rate_curve_csv << '\n'
              << "wrote " << bundle.sinr_cdf_csv << '\n'
              << "wrote " << bundle.records_csv << '\n'
              << "wrote " << bundle.metadata_json << '\n'
              << "wrote " << bundle.plot_script << std::endl;
  }
  return 0;
}

int cmd_dump_codebook(const std::string& config_path, const std::string& out_path,
                      const std::string& which) {
  const nlohmann::json j = mmbeam::load_config_json(config_path);
  const mmbeam::ScenarioConfig cfg = mmbeam::config_from_json(j);
  mmbeam::Codebook cb;
  if (which == "ue") {
    cb = mmbeam::build_codebook(cfg.ue_array, cfg.codebook_sizes.ue_azimuth, 1);
  } else if (which == "bs") {
    cb = mmbeam::build_codebook(cfg.bs_array, cfg.codebook_sizes.bs_azimuth,
                                cfg.codebook_sizes.bs_elevation);
  } else {
    throw mmbeam::ConfigError("--which must be 'bs' or 'ue'");
  }
  mmbeam::dump_codebook_csv(cb, out_path);
  std::cout << "wrote " << out_path << " (" << cb.size() << " entries)" << std::endl;
  return 0;
}

int cmd_selfcheck() {
  int failures = 0;
  for (const mmbeam::CheckResult& check : mmbeam::run_selfcheck()) {
    std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.name << " — " << check.detail
              << std::endl;
    if (!check.passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmbeam — two-step hybrid beamforming link-level simulator"};
  app.set_version_flag("--version", std::string(mmbeam::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string out_path;
  std::string which = "ue";
  std::vector<std::string> overrides;
  unsigned threads = 1;
  bool quiet = false;

  CLI::App* run = app.add_subcommand("run", "run a scenario and write CSV outputs");
  run->add_option("--config", config_path, "scenario config (JSON)")->required();
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--set", overrides, "dotted-path config override KEY=VALUE (repeatable)");
  run->add_option("--threads", threads, "worker threads; 0 = auto");
  run->add_flag("--quiet", quiet, "suppress progress output");

  CLI::App* dump = app.add_subcommand("dump-codebook", "write codebook entries as CSV");
  dump->add_option("--config", config_path, "scenario config (JSON)")->required();
  dump->add_option("--out", out_path, "output CSV path")->required();
  dump->add_option("--which", which, "'bs' or 'ue' (default: ue)");

  CLI::App* self = app.add_subcommand("selfcheck", "run the fast invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, overrides, threads, quiet);
    if (dump->parsed()) return cmd_dump_codebook(config_path, out_path, which);
    if (self->parsed()) return cmd_selfcheck();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
