#pragma once

#include <optional>

#include <Eigen/Dense>

#include "aimh/core/kernel.hpp"

namespace aimh {

// f_hat(x) = a0 + sum_i a_i x_i + b x_1^2.
struct SurrogateModel {
  Eigen::VectorXd coefficients;  // a0, a1..ad, b
  std::size_t fit_count = 0;
  double ridge = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(coefficients.size()) - 2; }
  double predict(Point x) const;
};

// Running normal equations for the surrogate's least-squares fit.
class SurrogateFitter {
 public:
  explicit SurrogateFitter(std::size_t dim);

  void add(Point x, double y);
  std::size_t count() const { return count_; }
  SurrogateModel solve(double ridge) const;
  // Sum of squared residuals of `model` over the points added so far.
  double residual_ss(const SurrogateModel& model) const;

  static Eigen::VectorXd features(Point x);

 private:
  std::size_t dim_;
  std::size_t count_ = 0;
  Eigen::MatrixXd xtx_;
  Eigen::VectorXd xty_;
  double yty_ = 0.0;
};

inline constexpr std::size_t kSurrogateMinPoints = 10;

// Fit to every history entry with a finite cached response. Throws Error
// "insufficient data" below `min_points` usable entries.
SurrogateModel surrogate_fit(const History& history, double ridge, std::size_t min_points = kSurrogateMinPoints);

struct SurrogateParams {
  double data = 2.5;          // d
  double sigma2 = 0.005;      // sigma^2
  double widening = 5.0;      // w
  double ridge = 1e-8;
  std::size_t min_points = kSurrogateMinPoints;
  State lower;                // proposal box, defaults to the unit cube
  State upper;
};

// Uniform draws on the box, accepted with weight
//   l_hat(x) = exp(-(f_hat(x) - d)^2 / (w sigma^2)).
// Unnormalized; uniform until enough history exists for a fit. The fit
// uses the simulator responses cached in the history.
class SurrogateKernel final : public IndependentKernel {
 public:
  SurrogateKernel(std::size_t dim, SurrogateParams params);

  std::string name() const override { return "surrogate"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  void adapt(const History& history) override;
  bool normalized() const override { return false; }
  std::unique_ptr<ProposalKernel> clone() const override;
  KernelStats stats() const override;

  double log_weight(Point z) const;
  const std::optional<SurrogateModel>& model() const { return model_; }

 private:
  SurrogateParams params_;
  SurrogateFitter fitter_;
  std::optional<SurrogateModel> model_;
  std::size_t consumed_ = 0;
  std::uint64_t draws_ = 0;
  std::uint64_t trials_ = 0;
};

}  // namespace aimh
