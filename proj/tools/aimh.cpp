// Command-line driver: run, compare, diagnose, stub-simulator.
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "aimh/core/error.hpp"
#include "aimh/harness/config.hpp"
#include "aimh/harness/diagnose.hpp"
#include "aimh/harness/ensemble.hpp"
#include "aimh/harness/outputs.hpp"
#include "aimh/targets/example4.hpp"
#include "aimh/targets/external.hpp"

namespace {

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> chains;
  std::optional<std::uint64_t> iterations;
  unsigned threads = 0;
  std::optional<std::string> out;
  bool full_scale = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--chains", f.chains, "number of chains");
  cmd->add_option("--iterations", f.iterations, "iterations per chain");
  cmd->add_option("--threads", f.threads, "worker threads (default: AIMH_THREADS, else all cores)");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--full-scale", f.full_scale, "use the full ensemble sizes of the presets");
}

aimh::ExperimentConfig load(const std::string& path, const CommonFlags& f) {
  aimh::ExperimentConfig c = aimh::load_config(path, {f.full_scale});
  if (f.seed) c.seed = *f.seed;
  if (f.chains) c.chains = *f.chains;
  if (f.iterations) c.iterations = *f.iterations;
  if (f.out) c.output_dir = *f.out;
  aimh::validate_config(c);
  return c;
}

void report(const std::vector<aimh::SamplerSummary>& summary) {
  for (const auto& s : summary) {
    std::cout << s.name << ": ok_chains=" << s.ok_chains << " acceptance=" << aimh::format_number(s.acceptance)
              << " crossings_after_burn_in=" << s.crossings_after_burn_in;
    if (!s.convergence.empty())
      std::cout << " final_tv=" << aimh::format_number(s.convergence.back().tv)
                << " noise_floor=" << aimh::format_number(s.convergence.back().noise_floor);
    std::cout << "\n";
  }
}

int run(const std::vector<std::string>& paths, const CommonFlags& f, bool comparison) {
  aimh::ExperimentConfig config = load(paths.at(0), f);
  for (std::size_t k = 1; k < paths.size(); ++k) {
    const aimh::ExperimentConfig other = load(paths[k], f);
    if (!(other.target == config.target))
      throw aimh::ConfigError("target", -1, "compare needs every config to share the target ('" + paths[k] + "')");
    for (const auto& s : other.samplers) config.samplers.push_back(s);
  }
  aimh::validate_config(config);
  aimh::prepare_output_dir(config.output_dir);
  const aimh::RunResult result = aimh::run_ensemble(config, f.threads);
  const auto summary = aimh::summarize(result);
  aimh::emit_outputs(result, summary, config.output_dir, comparison);
  report(summary);
  return 0;
}

int diagnose(const std::string& path, const CommonFlags& f) {
  const aimh::ExperimentConfig config = load(path, f);
  aimh::prepare_output_dir(config.output_dir);
  const auto rep = aimh::diagnose(config);
  aimh::emit_diagnose(rep, config, config.output_dir);
  for (const auto& k : rep.kernels)
    std::cout << k.sampler << " (" << k.kernel << "): doeblin_a=" << (k.a ? aimh::format_number(*k.a) : "n/a")
              << "\n";
  if (rep.noise_floor) std::cout << "noise_floor=" << aimh::format_number(*rep.noise_floor) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive independent Metropolis-Hastings sampler"};
  app.require_subcommand(0, 1);

  CommonFlags run_flags, compare_flags, diag_flags;
  std::string run_path, diag_path;
  std::vector<std::string> compare_paths;

  auto* run_cmd = app.add_subcommand("run", "run every sampler of a config and write outputs");
  run_cmd->add_option("config", run_path, "config file")->required();
  add_common(run_cmd, run_flags);

  auto* cmp_cmd = app.add_subcommand("compare", "run samplers from one or more configs on a shared target");
  cmp_cmd->add_option("configs", compare_paths, "config files")->required();
  add_common(cmp_cmd, compare_flags);

  auto* diag_cmd = app.add_subcommand("diagnose", "Doeblin constants, bounds and noise floor without sampling");
  diag_cmd->add_option("config", diag_path, "config file")->required();
  add_common(diag_cmd, diag_flags);

  auto* stub_cmd = app.add_subcommand("stub-simulator", "serve the built-in example 4 response on stdin/stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    if (run_cmd->parsed()) return run({run_path}, run_flags, false);
    if (cmp_cmd->parsed()) return run(compare_paths, compare_flags, true);
    if (diag_cmd->parsed()) return diagnose(diag_path, diag_flags);
    if (stub_cmd->parsed()) {
      aimh::wire::serve(std::cin, std::cout, [](aimh::Point x) { return aimh::ex4_f(x); });
      return 0;
    }
  } catch (const aimh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
