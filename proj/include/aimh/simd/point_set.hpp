#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aimh/core/state.hpp"

namespace aimh::simd {

// Read-only structure-of-arrays view: coordinate d of point i lives at
// coords[d * stride + i].
struct PointsView {
  const double* coords = nullptr;
  std::size_t stride = 0;
  std::size_t dim = 0;
  std::size_t count = 0;
};

// Growable structure-of-arrays point container with ordered insert/erase.
class PointSet {
 public:
  explicit PointSet(std::size_t dim = 1, std::size_t capacity = 16);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }

  double coord(std::size_t i, std::size_t d) const { return coords_[d * stride_ + i]; }
  State point(std::size_t i) const;

  void insert(std::size_t pos, Point x);
  void push_back(Point x) { insert(count_, x); }
  void erase(std::size_t pos);
  void truncate(std::size_t n);
  void clear() { count_ = 0; }

  PointsView view() const { return {coords_.data(), stride_, dim_, count_}; }
  PointsView prefix(std::size_t n) const;

 private:
  void grow(std::size_t min_capacity);

  std::size_t dim_;
  std::size_t stride_;
  std::size_t count_ = 0;
  std::vector<double> coords_;
};

}  // namespace aimh::simd
