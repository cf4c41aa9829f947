#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "aimh/core/chain.hpp"
#include "aimh/core/random.hpp"
#include "aimh/core/target.hpp"
#include "aimh/diagnostics/partition.hpp"

namespace aimh {

std::vector<std::uint64_t> bin_counts(const std::vector<State>& states, const BinPartition& partition);

// sum_j |r_j - p_j| with r_j the fraction of states in cell j; in [0, 2].
double tv_binned(const std::vector<State>& states, const BinPartition& partition);
double tv_binned(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs);

struct GofResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};
// Pearson chi-square of observed counts against cell probabilities.
GofResult chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs);

// Mean tv_binned of n exact target draws over `replicates` repetitions.
double noise_floor(const TargetDensity& target, const BinPartition& partition, std::size_t n,
                   std::size_t replicates, std::uint64_t seed);
// sum_j sqrt(2 p_j (1 - p_j) / (pi n)), the same quantity to leading order.
double noise_floor_analytic(const std::vector<double>& probs, std::size_t n);

struct DoeblinEstimate {
  double a = 0.0;
  State argmin;
  std::size_t points = 0;
};
// min over the points of exp(log q(z) - log pi(z)), capped at 1. Points
// where pi vanishes are skipped.
DoeblinEstimate doeblin_estimate(const std::function<double(Point)>& log_q, const TargetDensity& target,
                                 const std::vector<State>& points);
// Regular grid with `per_dim` points per coordinate over [lower, upper].
std::vector<State> regular_grid(const State& lower, const State& upper, std::size_t per_dim);

// 2 prod_{j<=i} (1 - a_j) for i = 1..n. Throws on a_j outside [0, 1].
std::vector<double> tv_bound(const std::vector<double>& a);
// Ensemble mean of the per-chain running products, times 2. Sequences
// must have equal length.
std::vector<double> tv_bound_mean(const std::vector<std::vector<double>>& a_per_chain);

// Accepted fraction of records [begin, end).
double acceptance_rate(const std::vector<StepRecord>& records, std::size_t begin = 0,
                       std::size_t end = std::numeric_limits<std::size_t>::max());

struct ModeJumps {
  // stat[i]: i, or the iterations since the chain was last closer to
  // another mode, whichever applies.
  std::vector<std::uint64_t> stat;
  std::vector<std::size_t> nearest;
  std::uint64_t crossings = 0;
};
// `path` holds the state at iterations 0..n.
ModeJumps mode_jump_stat(const std::vector<State>& path, const std::vector<State>& modes);
// Crossings counted from iteration `from` on.
std::uint64_t crossings_after(const ModeJumps& jumps, std::size_t from);

// Target mass of the window [x - h/2, x + h/2] divided by the fraction of
// states inside it; +inf when the window is empty.
double point_density_ratio(const std::vector<State>& states, double x, double h,
                           const std::function<double(double, double)>& target_mass);

}  // namespace aimh
