#include "aimh/diagnostics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "aimh/core/error.hpp"

namespace aimh {

std::vector<std::uint64_t> bin_counts(const std::vector<State>& states, const BinPartition& partition) {
  std::vector<std::uint64_t> counts(partition.size(), 0);
  for (const State& s : states) ++counts[partition.cell(s)];
  return counts;
}

double tv_binned(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs) {
  if (counts.size() != probs.size()) throw Error("tv_binned: size mismatch");
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) throw Error("tv_binned: no states");
  double tv = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j)
    tv += std::abs(static_cast<double>(counts[j]) / static_cast<double>(n) - probs[j]);
  return tv;
}

double tv_binned(const std::vector<State>& states, const BinPartition& partition) {
  return tv_binned(bin_counts(states, partition), partition.probabilities());
}

GofResult chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs) {
  if (counts.size() != probs.size() || counts.size() < 2) throw Error("chi_square_gof: bad cells");
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  GofResult r;
  std::size_t used = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const double expected = static_cast<double>(n) * probs[j];
    if (!(expected > 0.0)) {
      if (counts[j] > 0) return {kPosInf, counts.size() - 1, 0.0};
      continue;
    }
    const double d = static_cast<double>(counts[j]) - expected;
    r.statistic += d * d / expected;
    ++used;
  }
  r.dof = used - 1;
  boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

double noise_floor(const TargetDensity& target, const BinPartition& partition, std::size_t n,
                   std::size_t replicates, std::uint64_t seed) {
  if (!target.directly_sampleable()) throw Error("noise floor: target '" + target.name() + "' is not directly sampleable");
  if (n == 0 || replicates == 0) throw Error("noise floor: need n, replicates > 0");
  double total = 0.0;
  for (std::size_t r = 0; r < replicates; ++r) {
    Rng rng(split_seed(seed, r));
    std::vector<std::uint64_t> counts(partition.size(), 0);
    for (std::size_t k = 0; k < n; ++k) ++counts[partition.cell(target.sample_exact(rng))];
    total += tv_binned(counts, partition.probabilities());
  }
  return total / static_cast<double>(replicates);
}

double noise_floor_analytic(const std::vector<double>& probs, std::size_t n) {
  double s = 0.0;
  for (double p : probs) s += std::sqrt(2.0 * p * (1.0 - p) / (std::numbers::pi * static_cast<double>(n)));
  return s;
}

DoeblinEstimate doeblin_estimate(const std::function<double(Point)>& log_q, const TargetDensity& target,
                                 const std::vector<State>& points) {
  DoeblinEstimate est;
  est.a = 1.0;
  double best = kPosInf;
  for (const State& z : points) {
    const double lp = target.log_pi(z);
    if (lp == kNegInf) continue;
    ++est.points;
    const double r = log_q(z) - lp;
    if (r < best) {
      best = r;
      est.argmin = z;
    }
  }
  if (est.points > 0) est.a = std::min(1.0, std::exp(best));
  return est;
}

std::vector<State> regular_grid(const State& lower, const State& upper, std::size_t per_dim) {
  if (per_dim < 2) throw Error("grid needs at least 2 points per dimension");
  const std::size_t d = lower.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_dim;
  std::vector<State> grid;
  grid.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    State p(d);
    std::size_t rest = idx;
    for (std::size_t k = d; k-- > 0;) {
      const std::size_t i = rest % per_dim;
      rest /= per_dim;
      p[k] = lower[k] + (upper[k] - lower[k]) * static_cast<double>(i) / static_cast<double>(per_dim - 1);
    }
    grid.push_back(std::move(p));
  }
  return grid;
}

std::vector<double> tv_bound(const std::vector<double>& a) {
  std::vector<double> out;
  out.reserve(a.size());
  double prod = 1.0;
  for (double aj : a) {
    if (!(aj >= 0.0 && aj <= 1.0)) throw Error("tv_bound: a_j outside [0, 1]");
    prod *= 1.0 - aj;
    out.push_back(2.0 * prod);
  }
  return out;
}

std::vector<double> tv_bound_mean(const std::vector<std::vector<double>>& a_per_chain) {
  if (a_per_chain.empty()) return {};
  const std::size_t n = a_per_chain[0].size();
  std::vector<double> mean(n, 0.0);
  for (const auto& seq : a_per_chain) {
    if (seq.size() != n) throw Error("tv_bound_mean: sequences differ in length");
    const auto b = tv_bound(seq);
    for (std::size_t i = 0; i < n; ++i) mean[i] += b[i];
  }
  for (double& v : mean) v /= static_cast<double>(a_per_chain.size());
  return mean;
}

double acceptance_rate(const std::vector<StepRecord>& records, std::size_t begin, std::size_t end) {
  end = std::min(end, records.size());
  if (begin >= end) return 0.0;
  std::size_t acc = 0;
  for (std::size_t i = begin; i < end; ++i) acc += records[i].accepted;
  return static_cast<double>(acc) / static_cast<double>(end - begin);
}

ModeJumps mode_jump_stat(const std::vector<State>& path, const std::vector<State>& modes) {
  if (modes.empty()) throw Error("mode_jump_stat: no modes");
  ModeJumps out;
  out.nearest.reserve(path.size());
  out.stat.reserve(path.size());
  // last[k]: last iteration spent nearest to mode k.
  std::vector<std::optional<std::uint64_t>> last(modes.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    std::size_t best = 0;
    double best_d = kPosInf;
    for (std::size_t k = 0; k < modes.size(); ++k) {
      const double d = squared_distance(path[i], modes[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (i > 0 && best != out.nearest.back()) ++out.crossings;
    out.nearest.push_back(best);
    std::optional<std::uint64_t> other;
    for (std::size_t k = 0; k < modes.size(); ++k)
      if (k != best && last[k] && (!other || *last[k] > *other)) other = last[k];
    out.stat.push_back(other ? i - *other : i);
    last[best] = i;
  }
  return out;
}

std::uint64_t crossings_after(const ModeJumps& jumps, std::size_t from) {
  std::uint64_t c = 0;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < jumps.nearest.size(); ++i)
    c += jumps.nearest[i] != jumps.nearest[i - 1];
  return c;
}

double point_density_ratio(const std::vector<State>& states, double x, double h,
                           const std::function<double(double, double)>& target_mass) {
  if (!(h > 0.0)) throw Error("point_density_ratio: bandwidth must be positive");
  const double lo = x - h / 2.0;
  const double hi = x + h / 2.0;
  std::size_t inside = 0;
  for (const State& s : states) inside += s[0] >= lo && s[0] <= hi;
  if (inside == 0 || states.empty()) return kPosInf;
  const double frac = static_cast<double>(inside) / static_cast<double>(states.size());
  return target_mass(lo, hi) / frac;
}

}  // namespace aimh
