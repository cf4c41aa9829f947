#pragma once

#include <optional>

#include "aimh/core/kernel.hpp"
#include "aimh/proposals/gaussian.hpp"

namespace aimh {

// Heavy-tailed component g for the defensive mixture.
class HeavyTail {
 public:
  static HeavyTail uniform_box(State lower, State upper);
  // Multivariate Student-t with one degree of freedom (Cauchy).
  static HeavyTail student_t1(State location, const Eigen::MatrixXd& scale);

  std::size_t dim() const;
  double log_density(Point z) const;
  State sample(Rng& rng) const;
  std::string name() const;

 private:
  HeavyTail() = default;
  State lower_;
  State upper_;
  double log_volume_ = 0.0;
  std::optional<Gaussian> shape_;
  double log_t_norm_ = 0.0;
};

// (1 - eps) q + eps g for an independent, normalized inner kernel q.
class DoeblinMixtureKernel final : public IndependentKernel {
 public:
  DoeblinMixtureKernel(std::unique_ptr<ProposalKernel> inner, double eps, HeavyTail g);
  DoeblinMixtureKernel(const DoeblinMixtureKernel& other);

  std::string name() const override { return "doeblin(" + inner_->name() + ")"; }
  State draw(const History& history, Rng& rng) override;
  double log_density_at(Point z, const History& history) const override;
  void adapt(const History& history) override { inner_->adapt(history); }
  std::unique_ptr<ProposalKernel> clone() const override;
  KernelStats stats() const override { return inner_->stats(); }

  double eps() const { return eps_; }
  const HeavyTail& tail() const { return g_; }
  const ProposalKernel& inner() const { return *inner_; }

 private:
  std::unique_ptr<ProposalKernel> inner_;
  double eps_;
  HeavyTail g_;
};

}  // namespace aimh
