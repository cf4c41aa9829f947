#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aimh/core/kernel.hpp"
#include "aimh/core/target.hpp"
#include "aimh/diagnostics/partition.hpp"
#include "aimh/harness/config.hpp"

namespace aimh {

struct TracePoint {
  std::uint64_t iteration = 0;
  bool accepted = false;
  State state;
};

struct ChainResult {
  bool ok = true;
  std::string error;
  std::vector<State> snapshots;  // aligned with RunResult::snapshot_iterations
  std::uint64_t iterations_done = 0;
  std::uint64_t accepted = 0;
  std::uint64_t accepted_after_burn_in = 0;
  std::uint64_t steps_after_burn_in = 0;
  std::uint64_t regenerations = 0;
  std::uint64_t crossings = 0;
  std::uint64_t crossings_after_burn_in = 0;
  std::uint64_t final_jump_stat = 0;
  std::vector<TracePoint> trace;
  std::vector<std::pair<std::string, KernelStats>> kernel_stats;
};

struct SamplerResult {
  std::string name;
  std::vector<ChainResult> chains;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<std::uint64_t> snapshot_iterations;
  std::vector<SamplerResult> samplers;
  // Target instance for diagnostics (never a simulator process).
  std::shared_ptr<TargetDensity> reference;
  std::unique_ptr<BinPartition> partition;
};

// 0, the geometric grid 1, 2, 4, ... (when enabled), requested points and
// the final iteration, sorted and deduplicated, all <= iterations.
std::vector<std::uint64_t> snapshot_grid(const DiagnosticsSpec& spec, std::uint64_t iterations);

// Threads: 0 means AIMH_THREADS, else the hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs every sampler on `chains` chains. Chain k of every sampler uses the
// seed stream split_seed(seed, k). Results do not depend on `threads`.
RunResult run_ensemble(const ExperimentConfig& config, unsigned threads = 0);

}  // namespace aimh
