#include "aimh/simd/point_set.hpp"

#include <algorithm>

#include "aimh/core/error.hpp"

namespace aimh::simd {

PointSet::PointSet(std::size_t dim, std::size_t capacity)
    : dim_(dim), stride_(std::max<std::size_t>(capacity, 4)), coords_(dim * stride_) {
  if (dim == 0) throw Error("point set dimension must be positive");
}

State PointSet::point(std::size_t i) const {
  State x(dim_);
  for (std::size_t d = 0; d < dim_; ++d) x[d] = coords_[d * stride_ + i];
  return x;
}

void PointSet::grow(std::size_t min_capacity) {
  std::size_t cap = stride_;
  while (cap < min_capacity) cap *= 2;
  if (cap == stride_) return;
  std::vector<double> next(dim_ * cap);
  for (std::size_t d = 0; d < dim_; ++d) {
    std::copy_n(coords_.begin() + d * stride_, count_, next.begin() + d * cap);
  }
  coords_.swap(next);
  stride_ = cap;
}

void PointSet::insert(std::size_t pos, Point x) {
  if (x.size() != dim_) throw Error("point dimension mismatch");
  if (pos > count_) throw Error("insert position out of range");
  grow(count_ + 1);
  for (std::size_t d = 0; d < dim_; ++d) {
    double* row = coords_.data() + d * stride_;
    std::copy_backward(row + pos, row + count_, row + count_ + 1);
    row[pos] = x[d];
  }
  ++count_;
}

void PointSet::erase(std::size_t pos) {
  if (pos >= count_) throw Error("erase position out of range");
  for (std::size_t d = 0; d < dim_; ++d) {
    double* row = coords_.data() + d * stride_;
    std::copy(row + pos + 1, row + count_, row + pos);
  }
  --count_;
}

void PointSet::truncate(std::size_t n) { count_ = std::min(count_, n); }

PointsView PointSet::prefix(std::size_t n) const {
  return {coords_.data(), stride_, dim_, std::min(n, count_)};
}

}  // namespace aimh::simd
