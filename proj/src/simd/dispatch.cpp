#include <atomic>
#include <cstdlib>
#include <string>

#include "aimh/core/error.hpp"
#include "aimh/simd/distance.hpp"

namespace aimh::simd {
namespace {

Isa detect() {
#if defined(__x86_64__) || defined(__i386__)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
  return Isa::scalar;
}

Isa from_environment() {
  const Isa best = detect();
  const char* env = std::getenv("AIMH_SIMD");
  if (env == nullptr) return best;
  const std::string v(env);
  if (v == "scalar") return Isa::scalar;
  if (v == "avx2" && best == Isa::avx2) return Isa::avx2;
  return best;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(from_environment())};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) { return isa == Isa::scalar || detect() == Isa::avx2; }

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw Error("instruction set not supported on this CPU");
  selected().store(static_cast<int>(isa));
}

void reset_isa() { selected().store(static_cast<int>(from_environment())); }

void squared_distances(const PointsView& points, std::span<const double> query, std::span<const double> weights,
                       std::span<double> out) {
  if (query.size() != points.dim || (!weights.empty() && weights.size() != points.dim) ||
      out.size() < points.count) {
    throw Error("squared_distances: size mismatch");
  }
  const double* w = weights.empty() ? nullptr : weights.data();
  if (active_isa() == Isa::avx2) {
    avx2::squared_distances(points, query.data(), w, out.data());
  } else {
    scalar::squared_distances(points, query.data(), w, out.data());
  }
}

std::size_t first_within(const PointsView& points, std::size_t begin, std::size_t end,
                         std::span<const double> query, double radius_sq) {
  if (query.size() != points.dim) throw Error("first_within: size mismatch");
  if (end > points.count) end = points.count;
  if (begin >= end) return end;
  if (active_isa() == Isa::avx2) return avx2::first_within(points, begin, end, query.data(), radius_sq);
  return scalar::first_within(points, begin, end, query.data(), radius_sq);
}

}  // namespace aimh::simd
