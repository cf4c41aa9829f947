#pragma once

#include "aimh/core/target.hpp"

namespace aimh {

// Bimodal density on (0, 1):
//   f(x) = 4 min{(x + 2/3)^a, (4/3 - x)^a} + min{(x + 1/3)^a, (5/3 - x)^a}
// with peaks at 1/3 (height 4) and 2/3 (height 1).
class Example1Target final : public TargetDensity {
 public:
  explicit Example1Target(double alpha = 2000.0);

  std::string name() const override { return "example1"; }
  double alpha() const { return alpha_; }

  // Normalizer c with pi = c f.
  double c() const { return c_; }

  bool directly_sampleable() const override { return true; }
  State sample_exact(Rng& rng) const override;

  double cdf(double x) const;
  double quantile(double p) const;

  static constexpr double kModeHigh = 1.0 / 3.0;
  static constexpr double kModeLow = 2.0 / 3.0;

 protected:
  Evaluation evaluate_inside(Point x) const override;

 private:
  // Integral of the power-law piece u^a from lo to 1.
  double tail_mass(double lo) const;
  double alpha_;
  double c_;
};

double ex1_log_density(double x, double alpha);

}  // namespace aimh
