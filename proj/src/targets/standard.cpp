#include "aimh/targets/standard.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "aimh/core/error.hpp"

namespace aimh {

GaussMixtureTarget::GaussMixtureTarget(std::vector<State> means, std::vector<double> weights,
                                       std::vector<Eigen::MatrixXd> covs)
    : TargetDensity(Support::unbounded(means.empty() ? 0 : means[0].size())) {
  if (means.empty()) throw Error("gauss mixture: no components");
  if (weights.size() != means.size() || covs.size() != means.size()) throw Error("gauss mixture: size mismatch");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw Error("gauss mixture: weights must have positive sum");
  for (std::size_t j = 0; j < means.size(); ++j) {
    if (means[j].size() != dim()) throw Error("gauss mixture: inconsistent dimensions");
    if (!(weights[j] >= 0.0)) throw Error("gauss mixture: negative weight");
    components_.emplace_back(means[j], covs[j]);
    weights_.push_back(weights[j] / total);
    log_weights_.push_back(std::log(weights_.back()));
  }
  set_log_norm_const(0.0, 0.0);
}

GaussMixtureTarget GaussMixtureTarget::isotropic(std::vector<State> means, double sigma) {
  const std::size_t k = means.size();
  const std::size_t d = k ? means[0].size() : 0;
  std::vector<Eigen::MatrixXd> covs(k, Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) * sigma * sigma);
  return GaussMixtureTarget(std::move(means), std::vector<double>(k, 1.0), std::move(covs));
}

std::vector<State> GaussMixtureTarget::means() const {
  std::vector<State> out;
  for (const auto& c : components_) out.push_back(c.mean());
  return out;
}

Evaluation GaussMixtureTarget::evaluate_inside(Point x) const {
  std::vector<double> terms(components_.size());
  for (std::size_t j = 0; j < components_.size(); ++j) terms[j] = log_weights_[j] + components_[j].log_density(x);
  return {log_sum_exp(terms), kNaN};
}

State GaussMixtureTarget::sample_exact(Rng& rng) const {
  double u = uniform01(rng);
  std::size_t j = 0;
  while (j + 1 < weights_.size() && u >= weights_[j]) u -= weights_[j++];
  return components_[j].sample(rng);
}

std::vector<State> gauss13_layout(double r_inner, double r_outer) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) throw Error("gauss13 layout: need 0 < r_inner < r_outer");
  std::vector<State> modes{{0.0, 0.0}, {r_inner, 0.0}, {-r_inner, 0.0}, {0.0, r_inner}, {0.0, -r_inner}};
  for (int k = 0; k < 8; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / 8.0;
    modes.push_back({r_outer * std::cos(angle), r_outer * std::sin(angle)});
  }
  return modes;
}

CauchyTarget::CauchyTarget() : TargetDensity(Support::unbounded(1)) { set_log_norm_const(0.0, 0.0); }

Evaluation CauchyTarget::evaluate_inside(Point x) const {
  return {-std::log1p(x[0] * x[0]) - std::log(std::numbers::pi), kNaN};
}

State CauchyTarget::sample_exact(Rng& rng) const {
  return {std::tan(std::numbers::pi * (uniform01(rng) - 0.5))};
}

std::vector<double> cauchy_quantile_bins(std::size_t m) {
  if (m < 2) throw Error("cauchy bins: need m >= 2");
  std::vector<double> edges(m + 1);
  for (std::size_t k = 0; k < m; ++k) edges[k] = std::tan(std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(m)));
  edges[m] = kPosInf;
  return edges;
}

UniformBoxTarget::UniformBoxTarget(State lower, State upper)
    : TargetDensity(Support::box(std::move(lower), std::move(upper))) {
  set_log_norm_const(std::log(support().volume()), 0.0);
}

Evaluation UniformBoxTarget::evaluate_inside(Point) const { return {0.0, kNaN}; }

State UniformBoxTarget::sample_exact(Rng& rng) const {
  State x(dim());
  for (std::size_t d = 0; d < dim(); ++d)
    x[d] = support().lower()[d] + (support().upper()[d] - support().lower()[d]) * uniform01(rng);
  return x;
}

FiniteTarget::FiniteTarget(std::vector<State> points, std::vector<double> masses)
    : TargetDensity(Support::finite(points)), masses_(std::move(masses)) {
  if (masses_.size() != points.size()) throw Error("finite target: size mismatch");
  const double total = std::accumulate(masses_.begin(), masses_.end(), 0.0);
  for (double m : masses_)
    if (!(m > 0.0)) throw Error("finite target: masses must be positive");
  for (double m : masses_) probs_.push_back(m / total);
  set_log_norm_const(std::log(total), 0.0);
}

Evaluation FiniteTarget::evaluate_inside(Point x) const {
  const auto& pts = support().points();
  for (std::size_t k = 0; k < pts.size(); ++k)
    if (std::equal(pts[k].begin(), pts[k].end(), x.begin(), x.end())) return {std::log(masses_[k]), kNaN};
  return {};
}

State FiniteTarget::sample_exact(Rng& rng) const {
  double u = uniform01(rng);
  std::size_t k = 0;
  while (k + 1 < probs_.size() && u >= probs_[k]) u -= probs_[k++];
  return support().points()[k];
}

}  // namespace aimh
