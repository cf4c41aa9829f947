#include "aimh/proposals/mode_list.hpp"

#include <algorithm>
#include <cmath>

#include "aimh/core/error.hpp"
#include "aimh/simd/distance.hpp"

namespace aimh {

ModeList::ModeList(std::size_t dim, std::size_t cap, double spacing)
    : cap_(cap), spacing_(spacing), points_(dim, cap + 1) {
  if (cap == 0) throw Error("mode list capacity must be positive");
  if (!(spacing > 0.0)) throw Error("mode list spacing must be positive");
}

bool ModeList::update(Point y, double log_score, double log_f, double aux) {
  if (std::isnan(log_score)) throw Error("mode list score is NaN");
  const std::size_t n = size();
  if (n >= cap_ && !(log_score > scores_[n - 1])) return false;

  // First position whose item y beats.
  const auto it = std::partition_point(scores_.begin(), scores_.end(),
                                       [&](double s) { return !(log_score > s); });
  const auto pos = static_cast<std::size_t>(it - scores_.begin());

  const auto view = points_.view();
  if (simd::first_within(view, 0, pos, y, spacing_ * spacing_) < pos) return false;

  points_.insert(pos, y);
  scores_.insert(scores_.begin() + static_cast<std::ptrdiff_t>(pos), log_score);
  log_f_.insert(log_f_.begin() + static_cast<std::ptrdiff_t>(pos), log_f);
  aux_.insert(aux_.begin() + static_cast<std::ptrdiff_t>(pos), aux);

  const double half = 0.5 * spacing_;
  const std::size_t k = simd::first_within(points_.view(), pos + 1, size(), y, half * half);
  if (k < size()) {
    points_.erase(k);
    scores_.erase(scores_.begin() + static_cast<std::ptrdiff_t>(k));
    log_f_.erase(log_f_.begin() + static_cast<std::ptrdiff_t>(k));
    aux_.erase(aux_.begin() + static_cast<std::ptrdiff_t>(k));
  }

  if (size() > cap_) {
    points_.truncate(cap_);
    scores_.resize(cap_);
    log_f_.resize(cap_);
    aux_.resize(cap_);
  }
  return true;
}

std::vector<double> mixture_weights(std::span<const double> log_f, std::size_t m0) {
  const std::size_t m = log_f.size();
  if (m == 0) throw Error("mixture weights need at least one mode");
  if (m > m0) throw Error("more modes than the retain cap");
  const double floor = 1.0 / (5.0 * static_cast<double>(m0));
  const double lse = log_sum_exp(log_f);
  std::vector<double> tau(m);
  if (lse == kNegInf) {
    std::fill(tau.begin(), tau.end(), 1.0 / static_cast<double>(m));
    return tau;
  }
  const double rest = 1.0 - static_cast<double>(m) * floor;
  for (std::size_t j = 0; j < m; ++j) tau[j] = floor + rest * std::exp(log_f[j] - lse);
  return tau;
}

}  // namespace aimh
