#include "aimh/diagnostics/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "aimh/core/error.hpp"
#include "aimh/targets/quadrature.hpp"

namespace aimh {

IntervalPartition::IntervalPartition(std::vector<double> edges, std::vector<double> probs, bool on_abs,
                                     double overflow_prob)
    : edges_(std::move(edges)), abs_(on_abs), overflow_(overflow_prob > 0.0) {
  if (edges_.size() < 2 || probs.size() + 1 != edges_.size()) throw Error("interval partition: bad edges");
  if (!std::is_sorted(edges_.begin(), edges_.end())) throw Error("interval partition: edges must increase");
  probs_ = std::move(probs);
  if (overflow_) probs_.push_back(overflow_prob);
}

std::size_t IntervalPartition::cell(Point x) const {
  const double v = abs_ ? std::abs(x[0]) : x[0];
  const std::size_t m = edges_.size() - 1;
  if (v < edges_.front() || v >= edges_.back()) {
    if (overflow_) return m;
    return v < edges_.front() ? 0 : m - 1;
  }
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), v);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

BoxGridPartition::BoxGridPartition(State lower, State upper, std::vector<std::size_t> counts, std::vector<double> probs)
    : lower_(std::move(lower)), upper_(std::move(upper)), counts_(std::move(counts)) {
  if (lower_.size() != upper_.size() || lower_.size() != counts_.size()) throw Error("box partition: size mismatch");
  std::size_t total = 1;
  for (std::size_t c : counts_) {
    if (c == 0) throw Error("box partition: zero count");
    total *= c;
  }
  if (probs.size() != total) throw Error("box partition: wrong number of probabilities");
  probs_ = std::move(probs);
}

BoxGridPartition BoxGridPartition::uniform(State lower, State upper, std::vector<std::size_t> counts) {
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{1}, std::multiplies<>());
  return BoxGridPartition(std::move(lower), std::move(upper), std::move(counts),
                          std::vector<double>(total, 1.0 / static_cast<double>(total)));
}

std::size_t BoxGridPartition::cell(Point x) const {
  std::size_t index = 0;
  for (std::size_t d = 0; d < counts_.size(); ++d) {
    const double t = (x[d] - lower_[d]) / (upper_[d] - lower_[d]);
    const auto n = static_cast<double>(counts_[d]);
    const auto k = static_cast<std::size_t>(std::clamp(std::floor(t * n), 0.0, n - 1.0));
    index = index * counts_[d] + k;
  }
  return index;
}

FinitePartition::FinitePartition(const FiniteTarget& target) : points_(target.support().points()) {
  for (std::size_t k = 0; k < points_.size(); ++k) probs_.push_back(target.probability(k));
}

std::size_t FinitePartition::cell(Point x) const {
  for (std::size_t k = 0; k < points_.size(); ++k)
    if (std::equal(points_[k].begin(), points_[k].end(), x.begin(), x.end())) return k;
  throw Error("finite partition: point outside the support");
}

namespace {

// Integral over r in [r_lo, r_hi] of r * N(mu_i + r e; mu_j, s^2 I) in two
// dimensions, where b = e . (mu_i - mu_j) and c = |mu_i - mu_j|^2.
double radial_mass(double b, double c, double s, double r_lo, double r_hi) {
  const double s2 = s * s;
  const double perp = std::max(0.0, c - b * b);
  const double t_lo = r_lo + b;
  const double t_hi = r_hi + b;
  auto gauss = [&](double t) { return std::isinf(t) ? 0.0 : std::exp(-(perp + t * t) / (2.0 * s2)); };
  // erf(t_hi / (s sqrt 2)) - erf(t_lo / (s sqrt 2)) without cancellation in the tails.
  const double k = 1.0 / (s * std::numbers::sqrt2);
  double erf_diff;
  if (t_lo >= 0.0) erf_diff = std::erfc(t_lo * k) - (std::isinf(t_hi) ? 0.0 : std::erfc(t_hi * k));
  else if (t_hi <= 0.0) erf_diff = std::erfc(-t_hi * k) - std::erfc(-t_lo * k);
  else erf_diff = (std::isinf(t_hi) ? 1.0 : std::erf(t_hi * k)) - std::erf(t_lo * k);
  const double first = s2 * (gauss(t_lo) - gauss(t_hi));
  const double second = -b * s * std::sqrt(std::numbers::pi / 2.0) * std::exp(-perp / (2.0 * s2)) * erf_diff;
  return (first + second) / (2.0 * std::numbers::pi * s2);
}

}  // namespace

ModeShellPartition::ModeShellPartition(const GaussMixtureTarget& target, std::vector<double> radii)
    : modes_(target.means()), radii_(std::move(radii)) {
  if (target.dim() != 2) throw Error("mode-shell partition: two dimensions only");
  if (!std::is_sorted(radii_.begin(), radii_.end()) || (!radii_.empty() && !(radii_.front() > 0.0)))
    throw Error("mode-shell partition: radii must be positive and increasing");
  const std::size_t k = modes_.size();
  std::vector<double> sd(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& cov = target.component(j).cov();
    if (cov(0, 1) != 0.0 || cov(1, 0) != 0.0 || cov(0, 0) != cov(1, 1))
      throw Error("mode-shell partition: components must be isotropic");
    sd[j] = std::sqrt(cov(0, 0));
  }

  const std::size_t s = shells();
  probs_.assign(k * s, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const State& mu = modes_[i];
    // Distance along direction theta to the boundary of mode i's nearest-mode cell.
    auto ray_limit = [&](double ex, double ey) {
      double limit = kPosInf;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        const double dx = modes_[j][0] - mu[0];
        const double dy = modes_[j][1] - mu[1];
        const double proj = dx * ex + dy * ey;
        if (proj > 0.0) limit = std::min(limit, (dx * dx + dy * dy) / (2.0 * proj));
      }
      return limit;
    };
    for (std::size_t shell = 0; shell < s; ++shell) {
      const double r_lo = shell == 0 ? 0.0 : radii_[shell - 1];
      const double r_hi = shell + 1 == s ? kPosInf : radii_[shell];
      auto angular = [&](double theta) {
        const double ex = std::cos(theta);
        const double ey = std::sin(theta);
        const double top = std::min(r_hi, ray_limit(ex, ey));
        if (!(top > r_lo)) return 0.0;
        double total = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
          const double dx = mu[0] - modes_[j][0];
          const double dy = mu[1] - modes_[j][1];
          total += target.weight(j) * radial_mass(dx * ex + dy * ey, dx * dx + dy * dy, sd[j], r_lo, top);
        }
        return total;
      };
      // Breakpoints where the ray limit has kinks: directions to the other
      // modes and the corners of the cell.
      std::vector<double> breaks;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        double a = std::atan2(modes_[j][1] - mu[1], modes_[j][0] - mu[0]);
        if (a < 0.0) a += 2.0 * std::numbers::pi;
        breaks.push_back(a);
      }
      probs_[i * s + shell] = integrate(angular, 0.0, 2.0 * std::numbers::pi, breaks, 1e-12);
    }
  }
}

std::size_t ModeShellPartition::cell(Point x) const {
  std::size_t best = 0;
  double best_d = kPosInf;
  for (std::size_t j = 0; j < modes_.size(); ++j) {
    const double d = squared_distance(x, modes_[j]);
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  const double r = std::sqrt(best_d);
  const auto shell = static_cast<std::size_t>(std::upper_bound(radii_.begin(), radii_.end(), r) - radii_.begin());
  return best * shells() + shell;
}

std::vector<double> equiprobable_shell_radii(double sigma, std::size_t shells) {
  if (shells == 0) throw Error("shell count must be positive");
  std::vector<double> radii;
  for (std::size_t k = 1; k < shells; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(shells);
    radii.push_back(sigma * std::sqrt(-2.0 * std::log1p(-q)));
  }
  return radii;
}

ModeShellPartition gauss13_partition(const GaussMixtureTarget& target, double sigma, std::size_t shells) {
  return ModeShellPartition(target, equiprobable_shell_radii(sigma, shells));
}

IntervalPartition cauchy_partition(std::size_t m) {
  return IntervalPartition(cauchy_quantile_bins(m), std::vector<double>(m, 1.0 / static_cast<double>(m)), true);
}

IntervalPartition ex1_partition(const Example1Target& target, std::size_t m) {
  if (m < 2) throw Error("ex1 partition: need m >= 2");
  std::vector<double> edges{0.0};
  for (std::size_t k = 1; k < m; ++k) edges.push_back(target.quantile(static_cast<double>(k) / static_cast<double>(m)));
  edges.push_back(1.0);
  std::vector<double> probs;
  for (std::size_t k = 0; k < m; ++k) probs.push_back(target.cdf(edges[k + 1]) - target.cdf(edges[k]));
  return IntervalPartition(std::move(edges), std::move(probs));
}

}  // namespace aimh
