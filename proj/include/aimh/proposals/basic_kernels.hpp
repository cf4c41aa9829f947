#pragma once

#include <optional>

#include "aimh/core/kernel.hpp"
#include "aimh/proposals/gaussian.hpp"

namespace aimh {

// Fixed (non-adaptive) independence proposal: uniform on an open box or a
// multivariate normal.
class FixedIndependenceKernel final : public IndependentKernel {
 public:
  static FixedIndependenceKernel uniform(State lower, State upper);
  static FixedIndependenceKernel normal(Gaussian g);

  std::string name() const override { return "fixed_independence"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  std::unique_ptr<ProposalKernel> clone() const override;

 private:
  FixedIndependenceKernel() = default;
  State lower_;
  State upper_;
  double log_volume_ = 0.0;
  std::optional<Gaussian> normal_;
};

// Uniform random walk: each coordinate moves uniformly within a window of
// length L around the current state, clipped to the support box and
// renormalized on the clipped window.
class UniformRandomWalkKernel final : public ProposalKernel {
 public:
  UniformRandomWalkKernel(double step_length, State lower, State upper);

  std::string name() const override { return "random_walk"; }
  bool is_independent(std::uint64_t) const override { return false; }
  State sample(Point x_prev, const History& history, Rng& rng) override;
  double log_density(Point z, Point x_prev, const History& history) const override;
  std::unique_ptr<ProposalKernel> clone() const override;

  // Clipped window [lo, hi] around x along coordinate d.
  std::pair<double, double> window(double x, std::size_t d) const;

 private:
  double step_;
  State lower_;
  State upper_;
};

// Gaussian random walk N(x_prev, cov); no clipping.
class GaussianRandomWalkKernel final : public ProposalKernel {
 public:
  explicit GaussianRandomWalkKernel(const Eigen::MatrixXd& cov);

  std::string name() const override { return "gaussian_random_walk"; }
  bool is_independent(std::uint64_t) const override { return false; }
  State sample(Point x_prev, const History& history, Rng& rng) override;
  double log_density(Point z, Point x_prev, const History& history) const override;
  std::unique_ptr<ProposalKernel> clone() const override;

 private:
  Gaussian step_;
};

// One-dimensional adaptive proposal with a uniform floor and local windows
// of length L around the best history state on each side of a split point.
// Each window carries mass p; the floor carries the rest. Sides with no
// history yet contribute no window and return their mass to the floor;
// windows closer than L merge into one window with mass 2p.
class TwoModeKernel final : public IndependentKernel {
 public:
  TwoModeKernel(double p, double window_length, double split, double lower = 0.0, double upper = 1.0);

  struct Window {
    double lo;
    double hi;
    double mass;
  };

  std::string name() const override { return "two_mode"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  void adapt(const History& history) override;
  std::unique_ptr<ProposalKernel> clone() const override;

  const std::vector<Window>& windows() const { return windows_; }
  double floor_density() const { return floor_mass_ / (upper_ - lower_); }
  double density(double x) const;
  std::optional<double> best(int side) const { return side == 0 ? best_lo_ : best_hi_; }

 private:
  void rebuild();

  double p_;
  double length_;
  double split_;
  double lower_;
  double upper_;
  std::size_t consumed_ = 0;
  std::optional<double> best_lo_;
  std::optional<double> best_hi_;
  double best_lo_f_ = kNegInf;
  double best_hi_f_ = kNegInf;
  std::vector<Window> windows_;
  double floor_mass_ = 1.0;
};

}  // namespace aimh
