#pragma once

#include <optional>

#include "aimh/core/kernel.hpp"
#include "aimh/proposals/gaussian.hpp"
#include "aimh/proposals/mode_list.hpp"
#include "aimh/simd/point_set.hpp"

namespace aimh {

struct NormalMixtureParams {
  Gaussian base;               // phi_{nu0, Lambda0}
  Eigen::MatrixXd mode_cov;    // Lambda_j, shared by all mode components
  std::size_t retain = 20;     // M0: modes used in the proposal
  std::size_t cap = 25;        // M: modes kept in the list
  double spacing = 0.05;       // eps1
  double base_weight = 0.5;    // tau0
};

// Adaptive normal mixture
//   q(z) = [tau0 phi0(z) + sum_j tau_j phi(z; nu_j, Lambda_j)] / (tau0 + 1)
// over the first min(M0, n) entries of a mode list scored by
// R(y) = f(y) / phi0(y). With an empty list it is exactly phi0.
class NormalMixtureKernel : public IndependentKernel {
 public:
  explicit NormalMixtureKernel(NormalMixtureParams params);

  std::string name() const override { return "normal_mixture"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  void adapt(const History& history) override;
  std::unique_ptr<ProposalKernel> clone() const override;
  KernelStats stats() const override;

  const ModeList& modes() const { return modes_; }
  const std::vector<double>& weights() const { return tau_; }
  const NormalMixtureParams& params() const { return params_; }

 protected:
  // log of sum_j tau_j phi(z; nu_j, Lambda_j) over the active modes (-inf
  // when there are none).
  double log_mode_terms(Point z) const;
  State draw_mode_component(Rng& rng) const;
  // Feeds one history entry into the mode list; true if it changed.
  bool observe_mode(const HistoryEntry& entry);
  void rebuild_components();

  NormalMixtureParams params_;
  ModeList modes_;
  std::size_t consumed_ = 0;

 private:
  Gaussian mode_shape_;
  double mode_log_norm_ = 0.0;
  std::vector<double> tau_;
  std::vector<double> log_tau_;
  std::vector<double> cum_tau_;
  simd::PointSet whitened_;
  mutable std::vector<double> scratch_;
};

struct SuppressionParams {
  std::size_t cap = 1000;      // N
  std::size_t retain = 1000;   // N0
  double spacing = 0.05;       // eps2
  double delta = 0.1;
  double exponent = 1.3;       // p in S(y) = phi0(y)^p / f(y)
  double initial_c = 1.0;
  std::size_t controller_window = 50;
  std::size_t recent_windows = 20;  // windows averaged in the recent_base_fraction stat
  double controller_gain = 0.5;
  double target_base_fraction = 0.5;
  double c_max_factor = 1e3;   // c is capped at c_max_factor * delta
};

// Suppression factor: max{delta, f(xi_t)/phi0(xi_t)} for the first xi_t
// (among the first `retain` entries) within `spacing` of z, else c.
// `xi` stores log(f/phi0) of each entry in its aux slot.
double rho(Point z, const ModeList& xi, std::size_t retain, double spacing, double delta, double c);

// Mixture with the base term reweighted by rho:
//   q(z) ∝ tau0 rho(z) phi0(z) + sum_j tau_j phi(z; nu_j, Lambda_j).
// log_density is unnormalized (the normalizer is constant within an
// iteration). Sampling is rejection from the envelope with rho replaced by
// c; c follows a multiplicative controller aiming the base component at
// the configured fraction of proposals.
class SuppressedMixtureKernel final : public NormalMixtureKernel {
 public:
  SuppressedMixtureKernel(NormalMixtureParams params, SuppressionParams suppression);

  std::string name() const override { return "suppressed_mixture"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  void adapt(const History& history) override;
  bool normalized() const override { return false; }
  std::unique_ptr<ProposalKernel> clone() const override;
  KernelStats stats() const override;

  double c() const { return c_; }
  void set_c(double c);
  const ModeList& suppressed() const { return xi_; }
  double rho_at(Point z) const;
  // Largest rho any retained xi can produce.
  double max_listed_rho() const { return max_rho_; }

 private:
  enum class Label { unknown, base, mode };
  struct Tagged {
    State state;
    Label label = Label::unknown;
  };

  void observe_label(const HistoryEntry& entry);
  void refresh_max_rho();

  SuppressionParams sup_;
  ModeList xi_;
  double c_;
  double max_rho_ = 0.0;

  std::optional<Tagged> last_proposal_;
  std::optional<Tagged> current_;
  std::size_t window_base_ = 0;
  std::size_t window_labelled_ = 0;
  std::uint64_t proposals_ = 0;
  std::uint64_t base_proposals_ = 0;
  std::uint64_t envelope_violations_ = 0;
  std::uint64_t controller_updates_ = 0;
  // Base fractions of the most recent controller windows.
  std::vector<double> recent_fractions_;
};

}  // namespace aimh
