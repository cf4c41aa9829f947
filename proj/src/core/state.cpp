#include "aimh/core/state.hpp"

#include <algorithm>
#include <cmath>

#include "aimh/core/error.hpp"

namespace aimh {

Support Support::unbounded(std::size_t dim) {
  if (dim == 0) throw Error("support dimension must be positive");
  Support s;
  s.kind_ = Kind::unbounded;
  s.dim_ = dim;
  return s;
}

Support Support::box(State lower, State upper) {
  if (lower.empty() || lower.size() != upper.size()) throw Error("box bounds must have equal, positive size");
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(lower[d] < upper[d])) throw Error("box lower bound must be below upper bound");
  }
  Support s;
  s.kind_ = Kind::box;
  s.dim_ = lower.size();
  s.lower_ = std::move(lower);
  s.upper_ = std::move(upper);
  return s;
}

Support Support::finite(std::vector<State> points) {
  if (points.empty() || points.front().empty()) throw Error("finite support needs at least one point");
  Support s;
  s.kind_ = Kind::finite;
  s.dim_ = points.front().size();
  for (const auto& p : points) {
    if (p.size() != s.dim_) throw Error("finite support points differ in dimension");
  }
  s.points_ = std::move(points);
  return s;
}

bool Support::contains(Point x) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case Kind::unbounded:
      return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
    case Kind::box:
      for (std::size_t d = 0; d < dim_; ++d) {
        if (!(lower_[d] < x[d] && x[d] < upper_[d])) return false;
      }
      return true;
    case Kind::finite:
      return std::any_of(points_.begin(), points_.end(),
                         [&](const State& p) { return std::equal(p.begin(), p.end(), x.begin()); });
  }
  return false;
}

double Support::volume() const {
  if (kind_ != Kind::box) return kPosInf;
  double v = 1.0;
  for (std::size_t d = 0; d < dim_; ++d) v *= upper_[d] - lower_[d];
  return v;
}

double squared_distance(Point a, Point b) {
  double s = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    s += diff * diff;
  }
  return s;
}

double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> values) {
  double hi = kNegInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == kNegInf || !std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double v : values) s += std::exp(v - hi);
  return hi + std::log(s);
}

}  // namespace aimh
