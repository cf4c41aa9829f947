#include "aimh/simd/distance.hpp"

namespace aimh::simd::scalar {

void squared_distances(const PointsView& points, const double* query, const double* weights, double* out) {
  for (std::size_t i = 0; i < points.count; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < points.dim; ++d) {
    const double* row = points.coords + d * points.stride;
    const double q = query[d];
    const double w = weights ? weights[d] : 1.0;
    for (std::size_t i = 0; i < points.count; ++i) {
      const double diff = row[i] - q;
      out[i] = out[i] + (diff * diff) * w;
    }
  }
}

std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end, const double* query,
                         double radius_sq) {
  for (std::size_t i = begin; i < end; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < points.dim; ++d) {
      const double diff = points.coords[d * points.stride + i] - query[d];
      s = s + diff * diff;
    }
    if (s < radius_sq) return i;
  }
  return end;
}

}  // namespace aimh::simd::scalar
