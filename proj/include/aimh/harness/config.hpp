#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "aimh/core/state.hpp"

namespace aimh {

// Parameter values are typed by the schema of the section they belong to.
using ParamValue = std::variant<double, std::vector<double>, std::string, std::vector<std::string>>;
using Params = std::map<std::string, ParamValue>;

double param_double(const Params& p, const std::string& key);
std::size_t param_count(const Params& p, const std::string& key);
const std::vector<double>& param_vector(const Params& p, const std::string& key);
const std::string& param_string(const Params& p, const std::string& key);
const std::vector<std::string>& param_strings(const Params& p, const std::string& key);

// A `kind` plus its parameters, every key filled from the schema defaults.
struct Section {
  std::string kind;
  Params params;
  bool operator==(const Section&) const = default;
};

struct KernelSpec {
  std::string kind;
  std::uint64_t every = 1;
  Params params;
  std::optional<Section> wrap;  // defensive heavy-tail mixture
  bool operator==(const KernelSpec&) const = default;
};

struct SamplerSpec {
  std::string name;
  std::vector<KernelSpec> kernels;
  std::optional<double> doeblin_a;  // known lower bound; enables regeneration tracking
  bool operator==(const SamplerSpec&) const = default;
};

struct DiagnosticsSpec {
  Section partition{"none", {}};
  std::vector<std::uint64_t> snapshots;
  bool geometric = true;
  std::uint64_t noise_replicates = 20;
  std::vector<State> modes;             // mode-jump classifier
  std::optional<std::size_t> split_coordinate;  // alternative: side of a split
  double split_value = 0.5;
  std::uint64_t trace_chains = 0;
  std::uint64_t trace_iterations = 10000;
  bool operator==(const DiagnosticsSpec&) const = default;
};

struct ExperimentConfig {
  std::string name = "experiment";
  std::string preset;
  bool full_scale = false;
  std::uint64_t seed = 1;
  std::uint64_t chains = 1;
  std::uint64_t iterations = 1000;
  std::uint64_t burn_in = 0;
  Section target;
  Section initial{"target", {}};
  std::vector<SamplerSpec> samplers;
  DiagnosticsSpec diagnostics;
  std::string output_dir = "out";
  bool operator==(const ExperimentConfig&) const = default;
};

struct ParseOptions {
  bool full_scale = false;
};

// Strict parse: unknown keys, wrong types and violated constraints raise
// ConfigError with the key and line.
ExperimentConfig parse_config(const std::string& text, const ParseOptions& options = {});
ExperimentConfig load_config(const std::string& path, const ParseOptions& options = {});
std::string emit_config(const ExperimentConfig& config);

// Preset with the constants of the named example (ex1..ex4).
ExperimentConfig preset_config(const std::string& name, bool full_scale = false);

// Re-validates a config assembled in code; throws ConfigError.
void validate_config(const ExperimentConfig& config);

// Keys and defaults of every section kind.
const Params& schema_for(const std::string& section, const std::string& kind);

}  // namespace aimh
