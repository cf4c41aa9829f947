#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "aimh/simd/point_set.hpp"

namespace aimh::simd {

// Instruction sets with a distance-kernel implementation. The scalar path is
// the reference; every other path must reproduce it bit for bit (no FMA,
// identical per-lane operation order).
enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

// Best ISA the running CPU supports, unless overridden by the environment
// variable AIMH_SIMD=scalar|avx2 or by force_isa().
Isa active_isa();
bool isa_supported(Isa isa);
// Test hook; throws if the ISA is unsupported on this CPU.
void force_isa(Isa isa);
void reset_isa();

// out[i] = sum_d weights[d] * (points_i[d] - query[d])^2. Empty weights mean
// all ones.
void squared_distances(const PointsView& points, std::span<const double> query,
                       std::span<const double> weights, std::span<double> out);

// Smallest i in [begin, end) with squared distance to `query` strictly below
// radius_sq, or `end` if none.
std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end,
                         std::span<const double> query, double radius_sq);

namespace scalar {
void squared_distances(const PointsView& points, const double* query, const double* weights, double* out);
std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end, const double* query,
                         double radius_sq);
}  // namespace scalar

namespace avx2 {
void squared_distances(const PointsView& points, const double* query, const double* weights, double* out);
std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end, const double* query,
                         double radius_sq);
}  // namespace avx2

}  // namespace aimh::simd
