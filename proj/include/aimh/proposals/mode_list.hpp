#pragma once

#include <cstddef>
#include <vector>

#include "aimh/core/state.hpp"
#include "aimh/simd/point_set.hpp"

namespace aimh {

// Capped list of states kept in nonincreasing score order, with a minimum
// spacing rule on insertion. Scores are compared in log space. Serves both
// the high-f mode list and the low-f list of the suppressed mixture.
//
// Insertion of y with score s (an item "scores higher" when its score is
// >= s):
//   - nothing happens if the list is full and s does not beat the last item;
//   - nothing happens if a higher-scoring item lies within `spacing` of y;
//   - otherwise y goes in front of the first item it beats (or at the end
//     when it beats none and the list is not full), the first lower-scoring
//     item within spacing/2 of y is removed, and the list is cut to `cap`.
// Only one close item is removed per insertion, so near-duplicates below y
// can survive.
class ModeList {
 public:
  ModeList(std::size_t dim, std::size_t cap, double spacing);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  std::size_t cap() const { return cap_; }
  double spacing() const { return spacing_; }

  // Returns true when the list changed.
  bool update(Point y, double log_score, double log_f, double aux = 0.0);

  State state(std::size_t i) const { return points_.point(i); }
  double log_score(std::size_t i) const { return scores_[i]; }
  double log_f(std::size_t i) const { return log_f_[i]; }
  double aux(std::size_t i) const { return aux_[i]; }

  const simd::PointSet& points() const { return points_; }

 private:
  std::size_t cap_;
  double spacing_;
  simd::PointSet points_;
  std::vector<double> scores_;
  std::vector<double> log_f_;
  std::vector<double> aux_;
};

// Mixing weights over the first m = min(m0, list size) modes:
//   tau_j = 1/(5 m0) + c f(nu_j), c chosen so sum_j tau_j = 1.
// Computed from log f. All-zero f gives equal weights.
std::vector<double> mixture_weights(std::span<const double> log_f, std::size_t m0);

}  // namespace aimh
