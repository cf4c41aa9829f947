#include "aimh/proposals/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "aimh/core/error.hpp"
#include "aimh/simd/distance.hpp"

namespace aimh {
namespace {

constexpr std::uint64_t kMaxEnvelopeRejections = 1000000;

}  // namespace

NormalMixtureKernel::NormalMixtureKernel(NormalMixtureParams params)
    : params_(std::move(params)),
      modes_(params_.base.dim(), params_.cap, params_.spacing),
      mode_shape_(State(params_.base.dim(), 0.0), params_.mode_cov),
      whitened_(params_.base.dim(), params_.retain) {
  if (params_.retain == 0 || params_.retain > params_.cap) throw Error("mixture needs 0 < M0 <= M");
  if (!(params_.base_weight > 0.0)) throw Error("base weight must be positive");
  mode_log_norm_ = mode_shape_.log_peak();
}

bool NormalMixtureKernel::observe_mode(const HistoryEntry& entry) {
  const double log_r = entry.log_f - params_.base.log_density(entry.state);
  if (!std::isfinite(log_r)) return false;
  return modes_.update(entry.state, log_r, entry.log_f, log_r);
}

void NormalMixtureKernel::adapt(const History& history) {
  bool changed = false;
  for (; consumed_ < history.size(); ++consumed_) changed |= observe_mode(history[consumed_]);
  if (changed) rebuild_components();
}

void NormalMixtureKernel::rebuild_components() {
  const std::size_t m = std::min(params_.retain, modes_.size());
  whitened_.clear();
  tau_.clear();
  log_tau_.clear();
  cum_tau_.clear();
  if (m == 0) return;
  std::vector<double> log_f(m);
  for (std::size_t j = 0; j < m; ++j) {
    log_f[j] = modes_.log_f(j);
    whitened_.push_back(mode_shape_.whiten(modes_.state(j)));
  }
  tau_ = mixture_weights(log_f, params_.retain);
  double acc = 0.0;
  for (double t : tau_) {
    log_tau_.push_back(std::log(t));
    acc += t;
    cum_tau_.push_back(acc);
  }
  scratch_.resize(m);
}

double NormalMixtureKernel::log_mode_terms(Point z) const {
  const std::size_t m = tau_.size();
  if (m == 0) return kNegInf;
  const State wz = mode_shape_.whiten(z);
  simd::squared_distances(whitened_.view(), wz, {}, scratch_);
  for (std::size_t j = 0; j < m; ++j) scratch_[j] = log_tau_[j] + mode_log_norm_ - 0.5 * scratch_[j];
  return log_sum_exp(std::span<const double>(scratch_.data(), m));
}

State NormalMixtureKernel::draw_mode_component(Rng& rng) const {
  const double u = uniform01(rng) * cum_tau_.back();
  const auto it = std::upper_bound(cum_tau_.begin(), cum_tau_.end(), u);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - cum_tau_.begin()), cum_tau_.size() - 1);
  State z = mode_shape_.sample(rng);
  for (std::size_t d = 0; d < z.size(); ++d) z[d] += modes_.points().coord(j, d);
  return z;
}

State NormalMixtureKernel::draw(const History&, Rng& rng) {
  const double u = uniform01(rng);
  if (tau_.empty() || u * (params_.base_weight + 1.0) < params_.base_weight) return params_.base.sample(rng);
  return draw_mode_component(rng);
}

double NormalMixtureKernel::log_density_at(Point z, const History&) const {
  const double base = params_.base.log_density(z);
  if (tau_.empty()) return base;
  const double log_total = std::log(params_.base_weight + 1.0);
  return log_add_exp(std::log(params_.base_weight) + base, log_mode_terms(z)) - log_total;
}

std::unique_ptr<ProposalKernel> NormalMixtureKernel::clone() const {
  return std::make_unique<NormalMixtureKernel>(*this);
}

KernelStats NormalMixtureKernel::stats() const {
  return {{"modes", static_cast<double>(modes_.size())}, {"active_modes", static_cast<double>(tau_.size())}};
}

double rho(Point z, const ModeList& xi, std::size_t retain, double spacing, double delta, double c) {
  const std::size_t n = std::min(retain, xi.size());
  const std::size_t t = simd::first_within(xi.points().view(), 0, n, z, spacing * spacing);
  if (t == n) return c;
  return std::max(delta, std::exp(xi.aux(t)));
}

SuppressedMixtureKernel::SuppressedMixtureKernel(NormalMixtureParams params, SuppressionParams suppression)
    : NormalMixtureKernel(std::move(params)),
      sup_(suppression),
      xi_(params_.base.dim(), suppression.cap, suppression.spacing),
      c_(suppression.initial_c) {
  if (sup_.retain == 0 || sup_.retain > sup_.cap) throw Error("suppression needs 0 < N0 <= N");
  if (!(sup_.delta > 0.0)) throw Error("delta must be positive");
  if (!(sup_.exponent > 1.0)) throw Error("suppression exponent must exceed 1");
  if (!(c_ > 0.0)) throw Error("initial c must be positive");
  if (sup_.controller_window == 0) throw Error("controller window must be positive");
}

double SuppressedMixtureKernel::rho_at(Point z) const {
  return rho(z, xi_, sup_.retain, sup_.spacing, sup_.delta, c_);
}

void SuppressedMixtureKernel::set_c(double c) {
  if (!(c > 0.0)) throw Error("c must be positive");
  c_ = std::max(c, max_rho_);
}

void SuppressedMixtureKernel::refresh_max_rho() {
  const std::size_t n = std::min(sup_.retain, xi_.size());
  double best = kNegInf;
  for (std::size_t t = 0; t < n; ++t) best = std::max(best, xi_.aux(t));
  max_rho_ = n == 0 ? 0.0 : std::max(sup_.delta, std::exp(best));
  c_ = std::max(c_, max_rho_);
}

State SuppressedMixtureKernel::draw(const History&, Rng& rng) {
  const double tau0 = params_.base_weight;
  for (std::uint64_t attempt = 0; attempt < kMaxEnvelopeRejections; ++attempt) {
    const double base_mass = tau0 * c_;
    const double total = base_mass + (weights().empty() ? 0.0 : 1.0);
    if (uniform01(rng) * total < base_mass) {
      State z = params_.base.sample(rng);
      const double r = rho_at(z);
      if (r > c_) {
        ++envelope_violations_;
        std::cerr << "warning: suppressed mixture envelope violated (rho " << r << " > c " << c_
                  << "); raising c\n";
        c_ = r;
      }
      if (uniform01(rng) * c_ < r) {
        ++proposals_;
        ++base_proposals_;
        last_proposal_ = Tagged{z, Label::base};
        return z;
      }
    } else {
      State z = draw_mode_component(rng);
      ++proposals_;
      last_proposal_ = Tagged{z, Label::mode};
      return z;
    }
  }
  throw SamplingError("suppressed mixture: rejection sampler exhausted");
}

double SuppressedMixtureKernel::log_density_at(Point z, const History&) const {
  const double base = std::log(params_.base_weight) + std::log(rho_at(z)) + params_.base.log_density(z);
  return log_add_exp(base, log_mode_terms(z));
}

void SuppressedMixtureKernel::observe_label(const HistoryEntry& entry) {
  Label label = Label::unknown;
  if (last_proposal_ && last_proposal_->state == entry.state) {
    // Rejected proposal.
    label = last_proposal_->label;
    last_proposal_.reset();
  } else {
    // Vacated state; the last proposal (if any) became the current state.
    if (current_ && current_->state == entry.state) label = current_->label;
    current_ = std::move(last_proposal_);
    last_proposal_.reset();
  }
  if (label == Label::unknown) return;
  ++window_labelled_;
  window_base_ += label == Label::base;
  if (window_labelled_ == sup_.controller_window) {
    const double fraction = static_cast<double>(window_base_) / static_cast<double>(window_labelled_);
    const double c_max = std::max(sup_.c_max_factor * sup_.delta, max_rho_);
    c_ = std::clamp(c_ * std::exp(sup_.controller_gain * (sup_.target_base_fraction - fraction)), max_rho_, c_max);
    recent_fractions_.push_back(fraction);
    if (recent_fractions_.size() > sup_.recent_windows) recent_fractions_.erase(recent_fractions_.begin());
    window_base_ = 0;
    window_labelled_ = 0;
    ++controller_updates_;
  }
}

void SuppressedMixtureKernel::adapt(const History& history) {
  bool modes_changed = false;
  bool xi_changed = false;
  for (; consumed_ < history.size(); ++consumed_) {
    const HistoryEntry& e = history[consumed_];
    modes_changed |= observe_mode(e);
    const double log_phi0 = params_.base.log_density(e.state);
    const double log_s = sup_.exponent * log_phi0 - e.log_f;
    if (std::isfinite(log_s)) xi_changed |= xi_.update(e.state, log_s, e.log_f, e.log_f - log_phi0);
    observe_label(e);
  }
  if (modes_changed) rebuild_components();
  if (xi_changed) refresh_max_rho();
}

std::unique_ptr<ProposalKernel> SuppressedMixtureKernel::clone() const {
  return std::make_unique<SuppressedMixtureKernel>(*this);
}

KernelStats SuppressedMixtureKernel::stats() const {
  KernelStats s = NormalMixtureKernel::stats();
  s.emplace_back("suppressed", static_cast<double>(xi_.size()));
  s.emplace_back("c", c_);
  s.emplace_back("proposals", static_cast<double>(proposals_));
  s.emplace_back("base_proposals", static_cast<double>(base_proposals_));
  s.emplace_back("envelope_violations", static_cast<double>(envelope_violations_));
  s.emplace_back("controller_updates", static_cast<double>(controller_updates_));
  s.emplace_back("max_rho", max_rho_);
  double recent = kNaN;
  if (!recent_fractions_.empty()) {
    recent = 0.0;
    for (double f : recent_fractions_) recent += f;
    recent /= static_cast<double>(recent_fractions_.size());
  }
  s.emplace_back("recent_base_fraction", recent);
  return s;
}

}  // namespace aimh
