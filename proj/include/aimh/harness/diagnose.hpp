#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "aimh/harness/config.hpp"

namespace aimh {

struct KernelDoeblin {
  std::string sampler;
  std::string kernel;
  std::optional<double> a;  // empty when not computable (dependent or unnormalized)
  std::size_t points = 0;
  State argmin;
};

struct DiagnoseReport {
  std::vector<KernelDoeblin> kernels;
  std::vector<std::uint64_t> iterations;
  std::vector<std::vector<double>> bounds;  // per sampler, per iteration
  std::optional<double> noise_floor;        // for `chains` draws
};

// Doeblin constants of each sampler's first kernel before any adaptation,
// the bounds they imply and the noise floor; no chain is run.
DiagnoseReport diagnose(const ExperimentConfig& config);
void emit_diagnose(const DiagnoseReport& report, const ExperimentConfig& config, const std::filesystem::path& dir);

}  // namespace aimh
