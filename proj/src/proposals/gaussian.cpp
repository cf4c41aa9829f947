#include "aimh/proposals/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "aimh/core/error.hpp"

namespace aimh {

Gaussian::Gaussian(State mean, const Eigen::MatrixXd& cov) : mean_(std::move(mean)), cov_(cov) {
  const auto n = static_cast<Eigen::Index>(mean_.size());
  if (n == 0 || cov.rows() != n || cov.cols() != n) throw Error("covariance shape does not match mean");
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) throw Error("covariance is not positive definite");
  chol_ = llt.matrixL();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) log_det += 2.0 * std::log(chol_(i, i));
  log_norm_ = -0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + log_det);
}

Gaussian Gaussian::diagonal(State mean, const State& variances) {
  if (variances.size() != mean.size()) throw Error("variance vector does not match mean");
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(mean.size()),
                                              static_cast<Eigen::Index>(mean.size()));
  for (std::size_t i = 0; i < variances.size(); ++i) cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = variances[i];
  return Gaussian(std::move(mean), cov);
}

Gaussian Gaussian::isotropic(State mean, double variance) {
  const State v(mean.size(), variance);
  return diagonal(std::move(mean), v);
}

State Gaussian::whiten(Point x) const {
  const auto n = static_cast<Eigen::Index>(mean_.size());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = x[static_cast<std::size_t>(i)];
  chol_.triangularView<Eigen::Lower>().solveInPlace(v);
  return State(v.data(), v.data() + n);
}

double Gaussian::mahalanobis_sq(Point x) const {
  const auto n = static_cast<Eigen::Index>(mean_.size());
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = x[static_cast<std::size_t>(i)] - mean_[static_cast<std::size_t>(i)];
  chol_.triangularView<Eigen::Lower>().solveInPlace(v);
  return v.squaredNorm();
}

double Gaussian::log_density(Point x) const {
  if (x.size() != mean_.size()) throw Error("point dimension does not match Gaussian");
  return log_norm_ - 0.5 * mahalanobis_sq(x);
}

State Gaussian::sample(Rng& rng) const {
  const auto n = static_cast<Eigen::Index>(mean_.size());
  Eigen::VectorXd e(n);
  for (Eigen::Index i = 0; i < n; ++i) e(i) = standard_normal(rng);
  const Eigen::VectorXd y = chol_ * e;
  State x(mean_);
  for (Eigen::Index i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] += y(i);
  return x;
}

Gaussian Gaussian::recentred(State mean) const {
  Gaussian g = *this;
  if (mean.size() != mean_.size()) throw Error("point dimension does not match Gaussian");
  g.mean_ = std::move(mean);
  return g;
}

}  // namespace aimh
