// pwdirac command line: verification suite, evolutions, sweeps, convergence
// studies and the 3D-oracle comparison. Exit codes: 0 success, 2 config
// error, 3 check failure, 4 runtime error.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwdirac/config.hpp"
#include "pwdirac/experiments.hpp"
#include "pwdirac/io.hpp"
#include "pwdirac/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCheck = 3;
constexpr int kExitRuntime = 4;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int threads = 0;
  bool has_seed = false;
  bool has_threads = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key = value configuration file");
  cmd->add_option("--out", args.out_dir, "output directory (overrides out.dir)");
  cmd->add_option("--seed", args.seed, "seed for randomized diagnostics")
      ->each([&](const std::string&) { args.has_seed = true; });
  cmd->add_option("--threads", args.threads, "worker threads for sweeps")
      ->each([&](const std::string&) { args.has_threads = true; });
}

pwdirac::Config load_config(const CommonArgs& args) {
  pwdirac::Config cfg;
  if (!args.config_path.empty()) cfg = pwdirac::Config::from_file(args.config_path);
  if (!args.out_dir.empty()) cfg.set("out.dir", args.out_dir);
  if (args.has_seed) cfg.set("seed", std::to_string(args.seed));
  if (args.has_threads) cfg.set("threads", std::to_string(args.threads));
  return cfg;
}

void error_json(const std::string& kind, const std::string& message) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

int finish(const pwdirac::ExperimentReport& rep) {
  std::cout << rep.to_json();
  return rep.ok() ? kExitOk : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial-wave laboratory for the 3D massless Dirac equation"};
  app.require_subcommand(1);

  CommonArgs verify_args, evolve_args, amp_args, scale_args, conv_args, oracle_args;

  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  add_common(verify, verify_args);

  auto* evolve = app.add_subcommand("evolve", "evolve one channel (strang or picard)");
  add_common(evolve, evolve_args);

  auto* amp = app.add_subcommand("sweep-amplitude", "amplitude sweep with Picard diagnostics");
  add_common(amp, amp_args);
  std::string amp_list;
  amp->add_option("--amplitudes", amp_list, "comma-separated amplitudes (overrides config)");

  auto* scale = app.add_subcommand("sweep-scaling", "dilation-family endpoint ratio sweep");
  add_common(scale, scale_args);
  std::string lam_list;
  scale->add_option("--lambdas", lam_list, "comma-separated dilation factors");

  auto* conv = app.add_subcommand("converge", "convergence study under (h, dt) halving");
  add_common(conv, conv_args);
  int refinements = 2;
  std::string pipeline = "free-oracle";
  conv->add_option("--refinements", refinements, "number of halvings");
  conv->add_option("--pipeline", pipeline, "free-oracle | strang | duhamel");

  auto* oracle = app.add_subcommand("compare-oracle", "3D spectral oracle vs radial stepper");
  add_common(oracle, oracle_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      pwdirac::Config cfg = load_config(verify_args);
      pwdirac::VerificationOptions opts;
      opts.out_dir = cfg.get_string("out.dir", "out/verify");
      opts.seed = cfg.get_u64("seed", 1);
      opts.log = &std::cout;
      const auto results = pwdirac::run_verification(opts);
      bool all = true;
      for (const auto& c : results) all = all && c.pass;
      std::cout << (all ? "all criteria passed\n" : "criteria FAILED\n");
      return all ? kExitOk : kExitCheck;
    }
    if (evolve->parsed()) {
      pwdirac::Config cfg = load_config(evolve_args);
      const auto rc = pwdirac::RunConfig::from_config(cfg, true);
      return finish(pwdirac::run_evolve(rc));
    }
    if (amp->parsed()) {
      pwdirac::Config cfg = load_config(amp_args);
      if (!amp_list.empty()) cfg.set("sweep.amplitudes", amp_list);
      const auto rc = pwdirac::RunConfig::from_config(cfg, true);
      const auto amplitudes =
          cfg.get_double_list("sweep.amplitudes", {0.0, 0.05, 0.1, 0.2, 0.4, 0.8});
      return finish(pwdirac::sweep_amplitude(rc, amplitudes));
    }
    if (scale->parsed()) {
      pwdirac::Config cfg = load_config(scale_args);
      if (!lam_list.empty()) cfg.set("sweep.lambdas", lam_list);
      const auto rc = pwdirac::RunConfig::from_config(cfg, false);
      const auto lambdas = cfg.get_double_list("sweep.lambdas", {0.25, 0.5, 1.0, 2.0, 4.0});
      return finish(pwdirac::sweep_scaling(rc, lambdas));
    }
    if (conv->parsed()) {
      pwdirac::Config cfg = load_config(conv_args);
      const bool nonlinear = pipeline == "strang";
      const auto rc = pwdirac::RunConfig::from_config(cfg, nonlinear);
      return finish(pwdirac::convergence_study(rc, refinements, pipeline));
    }
    if (oracle->parsed()) {
      pwdirac::Config cfg = load_config(oracle_args);
      const auto rc = pwdirac::RunConfig::from_config(cfg, false);
      return finish(pwdirac::run_compare_oracle(rc));
    }
  } catch (const pwdirac::ConfigError& e) {
    error_json("config", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    error_json("config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    error_json("runtime", e.what());
    return kExitRuntime;
  }
  return kExitOk;
}
