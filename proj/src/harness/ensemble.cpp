#include "aimh/harness/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <thread>

#include "aimh/core/chain.hpp"
#include "aimh/core/error.hpp"
#include "aimh/harness/build.hpp"

namespace aimh {
namespace {

// Online version of the mode-jump statistic over class labels.
class JumpTracker {
 public:
  explicit JumpTracker(std::size_t classes) : last_(classes) {}

  void observe(std::uint64_t i, std::size_t label, std::uint64_t burn_in) {
    if (current_ && label != *current_) {
      ++crossings_;
      if (i > burn_in) ++crossings_after_;
    }
    current_ = label;
    std::optional<std::uint64_t> other;
    for (std::size_t k = 0; k < last_.size(); ++k)
      if (k != label && last_[k] && (!other || *last_[k] > *other)) other = last_[k];
    stat_ = other ? i - *other : i;
    last_[label] = i;
  }

  std::uint64_t crossings() const { return crossings_; }
  std::uint64_t crossings_after() const { return crossings_after_; }
  std::uint64_t stat() const { return stat_; }

 private:
  std::vector<std::optional<std::uint64_t>> last_;
  std::optional<std::size_t> current_;
  std::uint64_t crossings_ = 0;
  std::uint64_t crossings_after_ = 0;
  std::uint64_t stat_ = 0;
};

struct Classifier {
  std::vector<State> modes;
  std::optional<std::size_t> coordinate;
  double split = 0.5;

  std::size_t classes() const { return coordinate ? 2 : modes.size(); }
  std::size_t operator()(Point x) const {
    if (coordinate) return x[*coordinate] > split ? 1 : 0;
    std::size_t best = 0;
    double best_d = kPosInf;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const double d = squared_distance(x, modes[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  }
};

ChainResult run_one(const ExperimentConfig& config, const SamplerSpec& sampler, std::size_t chain,
                    const std::shared_ptr<TargetDensity>& shared_target, const Classifier& classify,
                    const std::vector<std::uint64_t>& snaps) {
  ChainResult out;
  const DiagnosticsSpec& diag = config.diagnostics;
  const bool traced = chain < diag.trace_chains;
  try {
    std::shared_ptr<TargetDensity> target = shared_target ? shared_target : build_target(config.target);
    KernelSchedule schedule = build_schedule(sampler, *target);
    const InitialDistribution initial = build_initial(config.initial, *target);

    Rng rng(split_seed(config.seed, chain));
    State x0 = draw_initial_state(*target, initial, rng);
    ChainState state = make_chain_state(*target, std::move(x0), std::move(rng));

    DoeblinBound bound;
    if (sampler.doeblin_a && target->log_norm_const()) {
      const double a = *sampler.doeblin_a;
      bound = [a](std::uint64_t, const History&) { return a; };
    }

    std::optional<JumpTracker> jumps;
    if (classify.classes() > 0) {
      jumps.emplace(classify.classes());
      jumps->observe(0, classify(state.current), config.burn_in);
    }
    std::size_t next_snap = 0;
    auto take_snapshots = [&](std::uint64_t i) {
      while (next_snap < snaps.size() && snaps[next_snap] == i) {
        out.snapshots.push_back(state.current);
        ++next_snap;
      }
    };
    take_snapshots(0);
    if (traced) out.trace.push_back({0, false, state.current});

    for (std::uint64_t i = 1; i <= config.iterations; ++i) {
      const std::size_t k = schedule.index_for(i);
      const StepRecord rec = aimh_step(state, schedule.kernel(k), *target, bound ? &bound : nullptr);
      schedule.adapt_all(state.history);
      out.iterations_done = i;
      out.accepted += rec.accepted;
      out.regenerations += rec.regenerated;
      if (i > config.burn_in) {
        ++out.steps_after_burn_in;
        out.accepted_after_burn_in += rec.accepted;
      }
      if (jumps) jumps->observe(i, classify(state.current), config.burn_in);
      take_snapshots(i);
      if (traced && i <= diag.trace_iterations) out.trace.push_back({i, rec.accepted, state.current});
    }
    if (jumps) {
      out.crossings = jumps->crossings();
      out.crossings_after_burn_in = jumps->crossings_after();
      out.final_jump_stat = jumps->stat();
    }
    for (std::size_t k = 0; k < schedule.size(); ++k)
      out.kernel_stats.emplace_back(schedule.kernel(k).name(), schedule.kernel(k).stats());
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> snapshot_grid(const DiagnosticsSpec& spec, std::uint64_t iterations) {
  std::vector<std::uint64_t> grid{0, iterations};
  if (spec.geometric)
    for (std::uint64_t i = 1; i <= iterations; i *= 2) grid.push_back(i);
  for (auto s : spec.snapshots)
    if (s <= iterations) grid.push_back(s);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("AIMH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunResult run_ensemble(const ExperimentConfig& config, unsigned threads) {
  validate_config(config);
  RunResult result;
  result.config = config;
  result.snapshot_iterations = snapshot_grid(config.diagnostics, config.iterations);

  Section reference_spec = config.target;
  const bool per_chain = target_per_chain(config.target);
  if (per_chain) std::get<std::vector<std::string>>(reference_spec.params.at("simulator")).clear();
  result.reference = build_target(reference_spec);
  result.partition = build_partition(config.diagnostics.partition, *result.reference);
  // Config problems surface before any chain runs.
  for (const auto& s : config.samplers) {
    build_schedule(s, *result.reference);
    build_initial(config.initial, *result.reference);
  }

  Classifier classify;
  classify.coordinate = config.diagnostics.split_coordinate;
  classify.split = config.diagnostics.split_value;
  if (!classify.coordinate) classify.modes = classifier_modes(config, *result.reference);
  if (classify.coordinate && *classify.coordinate >= result.reference->dim())
    throw ConfigError("diagnostics.split_coordinate", -1, "coordinate out of range");

  const std::shared_ptr<TargetDensity> shared = per_chain ? nullptr : result.reference;
  const std::size_t n_chains = config.chains;
  result.samplers.resize(config.samplers.size());
  for (std::size_t s = 0; s < config.samplers.size(); ++s) {
    result.samplers[s].name = config.samplers[s].name;
    result.samplers[s].chains.resize(n_chains);
  }

  const std::size_t total = n_chains * config.samplers.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t s = job / n_chains;
      const std::size_t c = job % n_chains;
      result.samplers[s].chains[c] =
          run_one(config, config.samplers[s], c, shared, classify, result.snapshot_iterations);
    }
  };
  const unsigned n_threads = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(total, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return result;
}

}  // namespace aimh
