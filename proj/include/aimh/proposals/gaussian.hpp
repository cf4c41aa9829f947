#pragma once

#include <Eigen/Dense>

#include "aimh/core/random.hpp"
#include "aimh/core/state.hpp"

namespace aimh {

// Multivariate normal N(mean, cov) with a cached Cholesky factor.
class Gaussian {
 public:
  Gaussian(State mean, const Eigen::MatrixXd& cov);
  static Gaussian diagonal(State mean, const State& variances);
  static Gaussian isotropic(State mean, double variance);

  std::size_t dim() const { return mean_.size(); }
  const State& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  double log_density(Point x) const;
  // log density at zero Mahalanobis distance.
  double log_peak() const { return log_norm_; }
  State sample(Rng& rng) const;

  // L^{-1} x with cov = L L^T; Mahalanobis distances become Euclidean in
  // whitened coordinates.
  State whiten(Point x) const;
  double mahalanobis_sq(Point x) const;

  // Same covariance, different mean.
  Gaussian recentred(State mean) const;

 private:
  State mean_;
  Eigen::MatrixXd cov_;
  Eigen::MatrixXd chol_;
  double log_norm_ = 0.0;
};

}  // namespace aimh
