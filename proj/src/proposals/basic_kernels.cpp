#include "aimh/proposals/basic_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "aimh/core/error.hpp"

namespace aimh {

FixedIndependenceKernel FixedIndependenceKernel::uniform(State lower, State upper) {
  const Support box = Support::box(lower, upper);
  FixedIndependenceKernel k;
  k.lower_ = std::move(lower);
  k.upper_ = std::move(upper);
  k.log_volume_ = std::log(box.volume());
  return k;
}

FixedIndependenceKernel FixedIndependenceKernel::normal(Gaussian g) {
  FixedIndependenceKernel k;
  k.normal_ = std::move(g);
  return k;
}

State FixedIndependenceKernel::draw(const History&, Rng& rng) {
  if (normal_) return normal_->sample(rng);
  State z(lower_.size());
  for (std::size_t d = 0; d < z.size(); ++d) z[d] = lower_[d] + (upper_[d] - lower_[d]) * uniform01(rng);
  return z;
}

double FixedIndependenceKernel::log_density_at(Point z, const History&) const {
  if (normal_) return normal_->log_density(z);
  for (std::size_t d = 0; d < lower_.size(); ++d) {
    if (!(lower_[d] <= z[d] && z[d] <= upper_[d])) return kNegInf;
  }
  return -log_volume_;
}

std::unique_ptr<ProposalKernel> FixedIndependenceKernel::clone() const {
  return std::make_unique<FixedIndependenceKernel>(*this);
}

UniformRandomWalkKernel::UniformRandomWalkKernel(double step_length, State lower, State upper)
    : step_(step_length), lower_(std::move(lower)), upper_(std::move(upper)) {
  if (!(step_length > 0.0)) throw Error("random walk step length must be positive");
  Support::box(lower_, upper_);
}

std::pair<double, double> UniformRandomWalkKernel::window(double x, std::size_t d) const {
  return {std::max(lower_[d], x - 0.5 * step_), std::min(upper_[d], x + 0.5 * step_)};
}

State UniformRandomWalkKernel::sample(Point x_prev, const History&, Rng& rng) {
  State z(x_prev.size());
  for (std::size_t d = 0; d < z.size(); ++d) {
    const auto [lo, hi] = window(x_prev[d], d);
    z[d] = lo + (hi - lo) * uniform01(rng);
  }
  return z;
}

double UniformRandomWalkKernel::log_density(Point z, Point x_prev, const History&) const {
  double lp = 0.0;
  for (std::size_t d = 0; d < z.size(); ++d) {
    const auto [lo, hi] = window(x_prev[d], d);
    if (!(lo <= z[d] && z[d] <= hi) || !(hi > lo)) return kNegInf;
    lp -= std::log(hi - lo);
  }
  return lp;
}

std::unique_ptr<ProposalKernel> UniformRandomWalkKernel::clone() const {
  return std::make_unique<UniformRandomWalkKernel>(*this);
}

GaussianRandomWalkKernel::GaussianRandomWalkKernel(const Eigen::MatrixXd& cov)
    : step_(State(static_cast<std::size_t>(cov.rows()), 0.0), cov) {}

State GaussianRandomWalkKernel::sample(Point x_prev, const History&, Rng& rng) {
  State z = step_.sample(rng);
  for (std::size_t d = 0; d < z.size(); ++d) z[d] += x_prev[d];
  return z;
}

double GaussianRandomWalkKernel::log_density(Point z, Point x_prev, const History&) const {
  State diff(z.size());
  for (std::size_t d = 0; d < z.size(); ++d) diff[d] = z[d] - x_prev[d];
  return step_.log_density(diff);
}

std::unique_ptr<ProposalKernel> GaussianRandomWalkKernel::clone() const {
  return std::make_unique<GaussianRandomWalkKernel>(*this);
}

TwoModeKernel::TwoModeKernel(double p, double window_length, double split, double lower, double upper)
    : p_(p), length_(window_length), split_(split), lower_(lower), upper_(upper) {
  if (!(p > 0.0 && p < 0.5)) throw Error("two-mode kernel needs 0 < p < 0.5");
  if (!(lower < upper)) throw Error("two-mode kernel needs lower < upper");
  if (!(window_length > 0.0 && window_length < upper - lower)) throw Error("two-mode window length out of range");
  rebuild();
}

void TwoModeKernel::adapt(const History& history) {
  bool changed = false;
  for (; consumed_ < history.size(); ++consumed_) {
    const HistoryEntry& e = history[consumed_];
    const double x = e.state[0];
    if (x < split_ && e.log_f > best_lo_f_) {
      best_lo_ = x;
      best_lo_f_ = e.log_f;
      changed = true;
    } else if (x > split_ && e.log_f > best_hi_f_) {
      best_hi_ = x;
      best_hi_f_ = e.log_f;
      changed = true;
    }
  }
  if (changed) rebuild();
}

void TwoModeKernel::rebuild() {
  windows_.clear();
  auto clip = [&](double lo, double hi, double mass) {
    windows_.push_back({std::max(lower_, lo), std::min(upper_, hi), mass});
  };
  const double half = 0.5 * length_;
  if (best_lo_ && best_hi_ && std::abs(*best_hi_ - *best_lo_) < length_) {
    clip(std::min(*best_lo_, *best_hi_) - half, std::max(*best_lo_, *best_hi_) + half, 2.0 * p_);
  } else {
    if (best_lo_) clip(*best_lo_ - half, *best_lo_ + half, p_);
    if (best_hi_) clip(*best_hi_ - half, *best_hi_ + half, p_);
  }
  double used = 0.0;
  for (const auto& w : windows_) used += w.mass;
  floor_mass_ = 1.0 - used;
}

double TwoModeKernel::density(double x) const {
  if (!(lower_ <= x && x <= upper_)) return 0.0;
  double q = floor_density();
  for (const auto& w : windows_) {
    if (w.lo < x && x < w.hi) q += w.mass / (w.hi - w.lo);
  }
  return q;
}

State TwoModeKernel::draw(const History&, Rng& rng) {
  double u = uniform01(rng);
  for (const auto& w : windows_) {
    if (u < w.mass) return {w.lo + (w.hi - w.lo) * uniform01(rng)};
    u -= w.mass;
  }
  return {lower_ + (upper_ - lower_) * uniform01(rng)};
}

double TwoModeKernel::log_density_at(Point z, const History&) const { return std::log(density(z[0])); }

std::unique_ptr<ProposalKernel> TwoModeKernel::clone() const { return std::make_unique<TwoModeKernel>(*this); }

}  // namespace aimh
