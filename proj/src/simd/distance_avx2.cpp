#include "aimh/simd/distance.hpp"

#if defined(__AVX2__)
#include <immintrin.h>

// Compiled with -mavx2 only; dispatch guarantees the CPU supports it.

namespace aimh::simd::avx2 {

void squared_distances(const PointsView& points, const double* query, const double* weights, double* out) {
  const std::size_t n = points.count;
  const std::size_t vec_end = n - n % 4;
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
  for (std::size_t d = 0; d < points.dim; ++d) {
    const double* row = points.coords + d * points.stride;
    const double w = weights ? weights[d] : 1.0;
    const __m256d q = _mm256_set1_pd(query[d]);
    const __m256d wv = _mm256_set1_pd(w);
    std::size_t i = 0;
    for (; i < vec_end; i += 4) {
      const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(row + i), q);
      const __m256d term = _mm256_mul_pd(_mm256_mul_pd(diff, diff), wv);
      _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), term));
    }
    for (; i < n; ++i) {
      const double diff = row[i] - query[d];
      out[i] = out[i] + (diff * diff) * w;
    }
  }
}

std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end, const double* query,
                         double radius_sq) {
  const __m256d r = _mm256_set1_pd(radius_sq);
  std::size_t i = begin;
  for (; i + 4 <= end; i += 4) {
    __m256d s = _mm256_setzero_pd();
    for (std::size_t d = 0; d < points.dim; ++d) {
      const __m256d diff =
          _mm256_sub_pd(_mm256_loadu_pd(points.coords + d * points.stride + i), _mm256_set1_pd(query[d]));
      s = _mm256_add_pd(s, _mm256_mul_pd(diff, diff));
    }
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(s, r, _CMP_LT_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < end; ++i) {
    double s = 0.0;
    for (std::size_t d = 0; d < points.dim; ++d) {
      const double diff = points.coords[d * points.stride + i] - query[d];
      s = s + diff * diff;
    }
    if (s < radius_sq) return i;
  }
  return end;
}

}  // namespace aimh::simd::avx2

#else

namespace aimh::simd::avx2 {

void squared_distances(const PointsView& points, const double* query, const double* weights, double* out) {
  scalar::squared_distances(points, query, weights, out);
}

std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end, const double* query,
                         double radius_sq) {
  return scalar::first_within(points, begin, end, query, radius_sq);
}

}  // namespace aimh::simd::avx2

#endif
