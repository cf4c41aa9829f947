#include "aimh/proposals/doeblin_wrap.hpp"

#include <cmath>
#include <numbers>

#include "aimh/core/error.hpp"

namespace aimh {

HeavyTail HeavyTail::uniform_box(State lower, State upper) {
  if (lower.size() != upper.size() || lower.empty()) throw Error("heavy tail: bad box");
  HeavyTail g;
  for (std::size_t d = 0; d < lower.size(); ++d) {
    if (!(upper[d] > lower[d])) throw Error("heavy tail: empty box");
    g.log_volume_ += std::log(upper[d] - lower[d]);
  }
  g.lower_ = std::move(lower);
  g.upper_ = std::move(upper);
  return g;
}

HeavyTail HeavyTail::student_t1(State location, const Eigen::MatrixXd& scale) {
  HeavyTail g;
  const double d = static_cast<double>(location.size());
  g.shape_.emplace(std::move(location), scale);
  // log Gamma((1+d)/2) - log Gamma(1/2) - d/2 log(pi) - 1/2 log|Sigma|;
  // the Gaussian's peak already holds -d/2 log(2 pi) - 1/2 log|Sigma|.
  g.log_t_norm_ = std::lgamma(0.5 * (1.0 + d)) - std::lgamma(0.5) + 0.5 * d * std::log(2.0) + g.shape_->log_peak();
  return g;
}

std::size_t HeavyTail::dim() const { return shape_ ? shape_->dim() : lower_.size(); }

std::string HeavyTail::name() const { return shape_ ? "student_t1" : "uniform_box"; }

double HeavyTail::log_density(Point z) const {
  if (shape_) {
    const double d = static_cast<double>(z.size());
    return log_t_norm_ - 0.5 * (1.0 + d) * std::log1p(shape_->mahalanobis_sq(z));
  }
  for (std::size_t d = 0; d < z.size(); ++d)
    if (z[d] < lower_[d] || z[d] > upper_[d]) return kNegInf;
  return -log_volume_;
}

State HeavyTail::sample(Rng& rng) const {
  if (shape_) {
    State centred = shape_->recentred(State(dim(), 0.0)).sample(rng);
    const double w = std::abs(standard_normal(rng));
    State z = shape_->mean();
    for (std::size_t d = 0; d < z.size(); ++d) z[d] += centred[d] / w;
    return z;
  }
  State z(dim());
  for (std::size_t d = 0; d < z.size(); ++d) z[d] = lower_[d] + (upper_[d] - lower_[d]) * uniform01(rng);
  return z;
}

DoeblinMixtureKernel::DoeblinMixtureKernel(std::unique_ptr<ProposalKernel> inner, double eps, HeavyTail g)
    : inner_(std::move(inner)), eps_(eps), g_(std::move(g)) {
  if (!inner_) throw Error("doeblin wrap: no inner kernel");
  if (!(eps_ >= 0.0 && eps_ <= 1.0)) throw Error("doeblin wrap: eps must lie in [0, 1]");
  if (!inner_->is_independent(0)) throw Error("doeblin wrap: inner kernel must be independent");
  if (!inner_->normalized()) throw Error("doeblin wrap: inner kernel must be normalized");
}

DoeblinMixtureKernel::DoeblinMixtureKernel(const DoeblinMixtureKernel& other)
    : inner_(other.inner_->clone()), eps_(other.eps_), g_(other.g_) {}

State DoeblinMixtureKernel::draw(const History& history, Rng& rng) {
  if (uniform01(rng) < eps_) return g_.sample(rng);
  return inner_->sample({}, history, rng);
}

double DoeblinMixtureKernel::log_density_at(Point z, const History& history) const {
  if (eps_ == 0.0) return inner_->log_density(z, {}, history);
  if (eps_ == 1.0) return g_.log_density(z);
  return log_add_exp(std::log1p(-eps_) + inner_->log_density(z, {}, history), std::log(eps_) + g_.log_density(z));
}

std::unique_ptr<ProposalKernel> DoeblinMixtureKernel::clone() const {
  return std::make_unique<DoeblinMixtureKernel>(*this);
}

}  // namespace aimh
