#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aimh/harness/ensemble.hpp"

namespace aimh {

struct ConvergenceRow {
  std::uint64_t iteration = 0;
  double tv = 0.0;
  double noise_floor = 0.0;
  double tv_bound = 2.0;
};

struct SamplerSummary {
  std::string name;
  std::size_t ok_chains = 0;
  std::vector<ConvergenceRow> convergence;  // empty without a partition
  double acceptance = 0.0;                  // pooled over ok chains
  double acceptance_after_burn_in = 0.0;
  std::uint64_t crossings_after_burn_in = 0;  // summed over ok chains
};

// Binned TV per snapshot over the chains that finished, with the noise
// floor for the same ensemble size (Monte Carlo when the target can be
// sampled directly, analytic otherwise) and the Doeblin bound.
std::vector<SamplerSummary> summarize(const RunResult& result);

// Noise floor of `n` draws; cached per n by the caller if needed.
double ensemble_noise_floor(const RunResult& result, std::size_t n);

// Creates the directory and checks it accepts files. Throws Error.
void prepare_output_dir(const std::filesystem::path& dir);

// Writes per-sampler CSVs under dir/<sampler>/ and dir/manifest.json;
// with `comparison`, also dir/comparison.csv.
void emit_outputs(const RunResult& result, const std::vector<SamplerSummary>& summary,
                  const std::filesystem::path& dir, bool comparison = false);

std::string format_number(double v);

}  // namespace aimh
