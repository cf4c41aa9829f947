#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "aimh/core/target.hpp"
#include "aimh/proposals/gaussian.hpp"

namespace aimh {

// sum_j w_j N(x; mu_j, Sigma_j), normalized.
class GaussMixtureTarget final : public TargetDensity {
 public:
  GaussMixtureTarget(std::vector<State> means, std::vector<double> weights, std::vector<Eigen::MatrixXd> covs);
  // Equal weights, isotropic covariance sigma^2 I.
  static GaussMixtureTarget isotropic(std::vector<State> means, double sigma);

  std::string name() const override { return "gauss_mixture"; }
  std::size_t size() const { return components_.size(); }
  const Gaussian& component(std::size_t j) const { return components_[j]; }
  double weight(std::size_t j) const { return weights_[j]; }
  std::vector<State> means() const;

  bool directly_sampleable() const override { return true; }
  State sample_exact(Rng& rng) const override;

 protected:
  Evaluation evaluate_inside(Point x) const override;

 private:
  std::vector<Gaussian> components_;
  std::vector<double> weights_;
  std::vector<double> log_weights_;
};

// Center, four inner modes at (+-r_inner, 0), (0, +-r_inner), and eight
// modes equally spaced on the circle of radius r_outer starting at angle 0.
std::vector<State> gauss13_layout(double r_inner = 0.05, double r_outer = 1.5);

// Standard Cauchy on the real line, normalized.
class CauchyTarget final : public TargetDensity {
 public:
  CauchyTarget();
  std::string name() const override { return "cauchy"; }
  bool directly_sampleable() const override { return true; }
  State sample_exact(Rng& rng) const override;

 protected:
  Evaluation evaluate_inside(Point x) const override;
};

// Edges t_k = tan(pi k / (2m)), k = 0..m, of m equiprobable bins for |x|
// under the standard Cauchy. The last edge is +inf.
std::vector<double> cauchy_quantile_bins(std::size_t m);

// Uniform on an open box, normalized.
class UniformBoxTarget final : public TargetDensity {
 public:
  UniformBoxTarget(State lower, State upper);
  std::string name() const override { return "uniform_box"; }
  bool directly_sampleable() const override { return true; }
  State sample_exact(Rng& rng) const override;

 protected:
  Evaluation evaluate_inside(Point x) const override;
};

// Discrete target on a finite set of points with given unnormalized
// probabilities.
class FiniteTarget final : public TargetDensity {
 public:
  FiniteTarget(std::vector<State> points, std::vector<double> masses);
  std::string name() const override { return "finite"; }
  bool directly_sampleable() const override { return true; }
  State sample_exact(Rng& rng) const override;
  double probability(std::size_t k) const { return probs_[k]; }

 protected:
  Evaluation evaluate_inside(Point x) const override;

 private:
  std::vector<double> masses_;
  std::vector<double> probs_;
};

}  // namespace aimh
