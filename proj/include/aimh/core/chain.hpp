#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "aimh/core/history.hpp"
#include "aimh/core/kernel.hpp"
#include "aimh/core/random.hpp"
#include "aimh/core/state.hpp"
#include "aimh/core/target.hpp"

namespace aimh {

struct ChainState {
  State current;
  double current_log_f = kNegInf;
  double current_response = kNaN;
  std::uint64_t iteration = 0;
  History history;
  Rng rng;
  std::optional<std::uint64_t> last_regeneration;
};

// Lower bound a_i with q_i(z | history) >= a_i * pi(z) for all z, supplied by
// the caller when regeneration should be detected.
using DoeblinBound = std::function<double(std::uint64_t iteration, const History& history)>;

struct StepRecord {
  std::uint64_t iteration = 0;
  State proposal;
  double alpha = 0.0;
  double u = 0.0;
  bool accepted = false;
  bool independent = false;
  bool regenerated = false;
  std::size_t kernel_index = 0;
  State state;
};

struct Trace {
  State initial;
  double initial_log_f = kNegInf;
  std::vector<StepRecord> records;
  std::uint64_t accepted = 0;
  std::uint64_t independent_steps = 0;
  std::uint64_t regenerations = 0;
};

using InitialDistribution = std::function<State(Rng&)>;

// min{1, exp[(log f(z) + log q(x|z)) - (log f(x) + log q(z|x))]} from the four
// log terms. A -inf target value at z gives 0; a -inf proposal density at z
// means the kernel produced a point it claims it cannot produce and throws.
double acceptance_probability(double log_f_z, double log_f_x, double log_q_x_given_z,
                              double log_q_z_given_x);
// log of the above; stays exact where the probability underflows.
double log_acceptance_probability(double log_f_z, double log_f_x, double log_q_x_given_z,
                                  double log_q_z_given_x);

// Same, evaluating the target and kernel at (x_prev, z).
double acceptance_probability(const TargetDensity& target, const ProposalKernel& kernel,
                              Point x_prev, Point z, const History& history);

// Chain positioned at x0 with an empty history. Throws if f(x0) is not
// finite and positive.
ChainState make_chain_state(const TargetDensity& target, State x0, Rng rng);

// Draw x0 from `initial`, retrying draws outside the support up to
// `max_retries` times.
State draw_initial_state(const TargetDensity& target, const InitialDistribution& initial,
                         Rng& rng, int max_retries = 1000);

// u * q(z) / pi(z) <= a, evaluated in log space. Needs a normalized target.
bool detect_regeneration(double u, double log_q_z, double log_f_z, const TargetDensity& target,
                         double doeblin_const);

// One iteration: propose, accept/reject, update the history. Exactly one
// target evaluation (at the proposal). Does not call adapt.
StepRecord aimh_step(ChainState& chain, ProposalKernel& kernel, const TargetDensity& target,
                     const DoeblinBound* doeblin = nullptr);

struct RunOptions {
  DoeblinBound doeblin;
  int initial_retries = 1000;
  bool keep_records = true;
};

// Full run: x0 ~ initial, n iterations, every kernel adapted after each
// iteration. Deterministic in `seed`.
Trace run_chain(const TargetDensity& target, KernelSchedule& schedule,
                const InitialDistribution& initial, std::uint64_t n_iterations,
                std::uint64_t seed, const RunOptions& options = {});

}  // namespace aimh
