#include "aimh/harness/outputs.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <Eigen/Core>
#include <boost/version.hpp>
#include <json.hpp>

#include "aimh/core/error.hpp"
#include "aimh/diagnostics/metrics.hpp"
#include "aimh/targets/external.hpp"

namespace aimh {
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

std::ofstream open_csv(const fs::path& path, const std::string& header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << header << "\n";
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return wire::format_double(v);
}

double ensemble_noise_floor(const RunResult& result, std::size_t n) {
  const auto& partition = *result.partition;
  if (result.reference->directly_sampleable())
    return noise_floor(*result.reference, partition, n, result.config.diagnostics.noise_replicates,
                       split_seed(result.config.seed, 0x6e6f697365ULL + n));
  return noise_floor_analytic(partition.probabilities(), n);
}

std::vector<SamplerSummary> summarize(const RunResult& result) {
  std::vector<SamplerSummary> out;
  std::map<std::size_t, double> floors;
  const auto& cfg = result.config;
  for (std::size_t s = 0; s < result.samplers.size(); ++s) {
    const SamplerResult& sr = result.samplers[s];
    SamplerSummary sum;
    sum.name = sr.name;
    std::uint64_t acc = 0, steps = 0, acc_burn = 0, steps_burn = 0;
    for (const auto& c : sr.chains) {
      if (!c.ok) continue;
      ++sum.ok_chains;
      acc += c.accepted;
      steps += c.iterations_done;
      acc_burn += c.accepted_after_burn_in;
      steps_burn += c.steps_after_burn_in;
      sum.crossings_after_burn_in += c.crossings_after_burn_in;
    }
    sum.acceptance = steps ? static_cast<double>(acc) / static_cast<double>(steps) : 0.0;
    sum.acceptance_after_burn_in = steps_burn ? static_cast<double>(acc_burn) / static_cast<double>(steps_burn) : 0.0;

    if (result.partition && sum.ok_chains > 0) {
      const auto it = floors.find(sum.ok_chains);
      const double floor =
          it != floors.end() ? it->second : (floors[sum.ok_chains] = ensemble_noise_floor(result, sum.ok_chains));
      const auto& doeblin = cfg.samplers[s].doeblin_a;
      for (std::size_t k = 0; k < result.snapshot_iterations.size(); ++k) {
        std::vector<State> states;
        states.reserve(sum.ok_chains);
        for (const auto& c : sr.chains)
          if (c.ok) states.push_back(c.snapshots[k]);
        ConvergenceRow row;
        row.iteration = result.snapshot_iterations[k];
        row.tv = tv_binned(states, *result.partition);
        row.noise_floor = floor;
        row.tv_bound = doeblin ? 2.0 * std::pow(1.0 - *doeblin, static_cast<double>(row.iteration)) : 2.0;
        sum.convergence.push_back(row);
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir.string() + "': " + ec.message());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw Error("output directory '" + dir.string() + "' is not writable");
  }
  fs::remove(probe, ec);
}

void emit_outputs(const RunResult& result, const std::vector<SamplerSummary>& summary, const fs::path& dir,
                  bool comparison) {
  prepare_output_dir(dir);
  const auto& cfg = result.config;
  nlohmann::ordered_json manifest;
  manifest["name"] = cfg.name;
  manifest["seed"] = cfg.seed;
  manifest["chains"] = cfg.chains;
  manifest["iterations"] = cfg.iterations;
  manifest["burn_in"] = cfg.burn_in;
  manifest["config"] = emit_config(cfg);
  manifest["versions"] = {{"aimh", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                        "." + std::to_string(EIGEN_MINOR_VERSION)},
                          {"boost", BOOST_LIB_VERSION}};
  manifest["snapshot_iterations"] = result.snapshot_iterations;
  manifest["samplers"] = nlohmann::ordered_json::array();

  for (std::size_t s = 0; s < result.samplers.size(); ++s) {
    const SamplerResult& sr = result.samplers[s];
    const SamplerSummary& sum = summary[s];
    const fs::path sdir = dir / sr.name;
    prepare_output_dir(sdir);
    std::vector<std::string> files;

    if (!sum.convergence.empty()) {
      auto out = open_csv(sdir / "convergence.csv", "iteration,tv,noise_floor,tv_bound");
      for (const auto& r : sum.convergence)
        out << r.iteration << "," << format_number(r.tv) << "," << format_number(r.noise_floor) << ","
            << format_number(r.tv_bound) << "\n";
      files.push_back("convergence.csv");
    }
    {
      auto out = open_csv(sdir / "acceptance.csv",
                          "chain,status,iterations,accepted,acceptance_rate,acceptance_rate_after_burn_in,regenerations");
      for (std::size_t c = 0; c < sr.chains.size(); ++c) {
        const auto& ch = sr.chains[c];
        const double rate = ch.iterations_done ? double(ch.accepted) / double(ch.iterations_done) : 0.0;
        const double rate_b = ch.steps_after_burn_in ? double(ch.accepted_after_burn_in) / double(ch.steps_after_burn_in) : 0.0;
        out << c << "," << (ch.ok ? "ok" : "error") << "," << ch.iterations_done << "," << ch.accepted << ","
            << format_number(rate) << "," << format_number(rate_b) << "," << ch.regenerations << "\n";
      }
      files.push_back("acceptance.csv");
    }
    {
      auto out = open_csv(sdir / "mode_jumps.csv", "chain,crossings,crossings_after_burn_in,final_jump_stat");
      for (std::size_t c = 0; c < sr.chains.size(); ++c) {
        const auto& ch = sr.chains[c];
        out << c << "," << ch.crossings << "," << ch.crossings_after_burn_in << "," << ch.final_jump_stat << "\n";
      }
      files.push_back("mode_jumps.csv");
    }
    {
      auto out = open_csv(sdir / "kernel_stats.csv", "chain,kernel,key,value");
      for (std::size_t c = 0; c < sr.chains.size(); ++c)
        for (std::size_t k = 0; k < sr.chains[c].kernel_stats.size(); ++k)
          for (const auto& [key, value] : sr.chains[c].kernel_stats[k].second)
            out << c << "," << k << ":" << sr.chains[c].kernel_stats[k].first << "," << key << ","
                << format_number(value) << "\n";
      files.push_back("kernel_stats.csv");
    }
    for (std::size_t c = 0; c < sr.chains.size(); ++c) {
      const auto& trace = sr.chains[c].trace;
      if (trace.empty()) continue;
      std::string header = "iteration,accepted";
      for (std::size_t d = 0; d < trace[0].state.size(); ++d) header += ",x" + std::to_string(d + 1);
      const std::string file = "trace_" + std::to_string(c) + ".csv";
      auto out = open_csv(sdir / file, header);
      for (const auto& t : trace) {
        out << t.iteration << "," << (t.accepted ? 1 : 0);
        for (double x : t.state) out << "," << format_number(x);
        out << "\n";
      }
      files.push_back(file);
    }

    nlohmann::ordered_json js;
    js["name"] = sr.name;
    js["ok_chains"] = sum.ok_chains;
    js["acceptance"] = format_number(sum.acceptance);
    js["acceptance_after_burn_in"] = format_number(sum.acceptance_after_burn_in);
    js["crossings_after_burn_in"] = sum.crossings_after_burn_in;
    js["files"] = files;
    js["errors"] = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < sr.chains.size(); ++c)
      if (!sr.chains[c].ok) js["errors"].push_back({{"chain", c}, {"message", sr.chains[c].error}});
    manifest["samplers"].push_back(js);
  }

  if (comparison) {
    std::string header = "iteration";
    for (const auto& s : summary) header += ",tv_" + s.name;
    header += ",noise_floor";
    auto out = open_csv(dir / "comparison.csv", header);
    for (std::size_t k = 0; k < result.snapshot_iterations.size(); ++k) {
      out << result.snapshot_iterations[k];
      double floor = kNaN;
      for (const auto& s : summary) {
        if (s.convergence.empty()) {
          out << ",nan";
          continue;
        }
        out << "," << format_number(s.convergence[k].tv);
        floor = s.convergence[k].noise_floor;
      }
      out << "," << format_number(floor) << "\n";
    }
  }

  std::ofstream mf(dir / "manifest.json", std::ios::binary);
  if (!mf) throw Error("cannot write manifest");
  mf << manifest.dump(2) << "\n";
}

}  // namespace aimh
