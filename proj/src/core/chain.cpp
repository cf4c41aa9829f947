#include "aimh/core/chain.hpp"

#include <algorithm>
#include <cmath>

#include "aimh/core/error.hpp"

namespace aimh {

double log_acceptance_probability(double log_f_z, double log_f_x, double log_q_x_given_z,
                                  double log_q_z_given_x) {
  if (log_f_z == kNegInf) return kNegInf;
  if (log_q_z_given_x == kNegInf) throw SamplingError("proposal density zero at own sample");
  if (!std::isfinite(log_f_x)) throw Error("current state has non-finite log density");
  if (log_q_x_given_z == kNegInf) return kNegInf;
  const double log_ratio = (log_f_z + log_q_x_given_z) - (log_f_x + log_q_z_given_x);
  if (std::isnan(log_ratio)) throw Error("acceptance ratio is NaN");
  return std::min(0.0, log_ratio);
}

double acceptance_probability(double log_f_z, double log_f_x, double log_q_x_given_z,
                              double log_q_z_given_x) {
  return std::exp(log_acceptance_probability(log_f_z, log_f_x, log_q_x_given_z, log_q_z_given_x));
}

double acceptance_probability(const TargetDensity& target, const ProposalKernel& kernel,
                              Point x_prev, Point z, const History& history) {
  const double log_f_z = target.log_f(z);
  if (log_f_z == kNegInf) return 0.0;
  return acceptance_probability(log_f_z, target.log_f(x_prev), kernel.log_density(x_prev, z, history),
                                kernel.log_density(z, x_prev, history));
}

ChainState make_chain_state(const TargetDensity& target, State x0, Rng rng) {
  const Evaluation e = target.evaluate(x0);
  if (!std::isfinite(e.log_f)) throw Error("initial state has zero or invalid target density");
  ChainState chain;
  chain.current = std::move(x0);
  chain.current_log_f = e.log_f;
  chain.current_response = e.response;
  chain.rng = std::move(rng);
  return chain;
}

State draw_initial_state(const TargetDensity& target, const InitialDistribution& initial, Rng& rng,
                         int max_retries) {
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    State x0 = initial(rng);
    if (target.support().contains(x0) && std::isfinite(target.log_f(x0))) return x0;
  }
  throw Error("initial distribution produced no state inside the support after " +
              std::to_string(max_retries) + " retries");
}

bool detect_regeneration(double u, double log_q_z, double log_f_z, const TargetDensity& target,
                         double doeblin_const) {
  const auto log_norm = target.log_norm_const();
  if (!log_norm) throw Error("regeneration detection requires normalized target");
  if (doeblin_const < 0.0 || doeblin_const > 1.0) throw Error("Doeblin constant outside [0, 1]");
  if (doeblin_const == 0.0 || log_f_z == kNegInf) return false;
  if (u == 0.0) return true;
  const double log_pi_z = log_f_z - *log_norm;
  return std::log(u) + log_q_z - log_pi_z <= std::log(doeblin_const);
}

StepRecord aimh_step(ChainState& chain, ProposalKernel& kernel, const TargetDensity& target,
                     const DoeblinBound* doeblin) {
  const std::uint64_t i = chain.iteration + 1;
  const bool independent = kernel.is_independent(i);

  State z = kernel.sample(chain.current, chain.history, chain.rng);
  const Evaluation ez = target.evaluate(z);

  double alpha = 0.0;
  double log_q_z = kNegInf;
  if (ez.log_f != kNegInf) {
    log_q_z = kernel.log_density(z, chain.current, chain.history);
    const double log_q_x = kernel.log_density(chain.current, z, chain.history);
    alpha = acceptance_probability(ez.log_f, chain.current_log_f, log_q_x, log_q_z);
  }

  const double u = uniform01(chain.rng);
  const bool accepted = u <= alpha && alpha > 0.0;

  bool regenerated = false;
  if (independent && doeblin && *doeblin && ez.log_f != kNegInf) {
    const double a = (*doeblin)(i, chain.history);
    regenerated = detect_regeneration(u, log_q_z, ez.log_f, target, a);
    if (regenerated && !accepted) throw Error("regeneration event without acceptance");
    if (regenerated) chain.last_regeneration = i;
  }

  if (independent) {
    if (accepted) {
      chain.history.append({chain.current, chain.current_log_f, chain.current_response, i});
    } else {
      chain.history.append({z, ez.log_f, ez.response, i});
    }
  }

  StepRecord record;
  record.iteration = i;
  record.alpha = alpha;
  record.u = u;
  record.accepted = accepted;
  record.independent = independent;
  record.regenerated = regenerated;
  if (accepted) {
    chain.current = z;
    chain.current_log_f = ez.log_f;
    chain.current_response = ez.response;
  }
  record.proposal = std::move(z);
  record.state = chain.current;
  chain.iteration = i;
  return record;
}

Trace run_chain(const TargetDensity& target, KernelSchedule& schedule, const InitialDistribution& initial,
                std::uint64_t n_iterations, std::uint64_t seed, const RunOptions& options) {
  Rng rng(seed);
  State x0 = draw_initial_state(target, initial, rng, options.initial_retries);
  ChainState chain = make_chain_state(target, std::move(x0), std::move(rng));

  Trace trace;
  trace.initial = chain.current;
  trace.initial_log_f = chain.current_log_f;
  if (options.keep_records) trace.records.reserve(n_iterations);

  const DoeblinBound* doeblin = options.doeblin ? &options.doeblin : nullptr;
  for (std::uint64_t n = 0; n < n_iterations; ++n) {
    const std::size_t k = schedule.index_for(chain.iteration + 1);
    StepRecord record = aimh_step(chain, schedule.kernel(k), target, doeblin);
    record.kernel_index = k;
    schedule.adapt_all(chain.history);
    trace.accepted += record.accepted;
    trace.independent_steps += record.independent;
    trace.regenerations += record.regenerated;
    if (options.keep_records) trace.records.push_back(std::move(record));
  }
  return trace;
}

}  // namespace aimh
