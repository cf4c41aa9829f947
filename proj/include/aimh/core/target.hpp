#pragma once

#include <memory>
#include <optional>
#include <string>

#include "aimh/core/random.hpp"
#include "aimh/core/state.hpp"

namespace aimh {

// One evaluation of the unnormalized target. `response` carries the raw
// simulator output for inverse problems (NaN when the target has none); it
// is cached next to log_f so adaptation never re-runs the simulator.
struct Evaluation {
  double log_f = kNegInf;
  double response = kNaN;
};

// Unnormalized log-density f = c*pi. This is the only view of pi the
// sampler gets.
class TargetDensity {
 public:
  virtual ~TargetDensity() = default;

  std::size_t dim() const { return support_.dim(); }
  const Support& support() const { return support_; }

  // -inf exactly outside the support.
  Evaluation evaluate(Point x) const {
    if (!support_.contains(x)) return {};
    return evaluate_inside(x);
  }
  double log_f(Point x) const { return evaluate(x).log_f; }

  // log of the integral of f over the support, when known.
  std::optional<double> log_norm_const() const { return log_norm_const_; }
  // Tolerance the normalizer was computed to (0 for closed forms).
  double norm_tolerance() const { return norm_tolerance_; }

  // log pi(x); requires log_norm_const().
  double log_pi(Point x) const;

  virtual bool directly_sampleable() const { return false; }
  virtual State sample_exact(Rng& rng) const;

  virtual std::string name() const = 0;

 protected:
  explicit TargetDensity(Support support) : support_(std::move(support)) {}
  void set_log_norm_const(double value, double tolerance) {
    log_norm_const_ = value;
    norm_tolerance_ = tolerance;
  }

  virtual Evaluation evaluate_inside(Point x) const = 0;

 private:
  Support support_;
  std::optional<double> log_norm_const_;
  double norm_tolerance_ = 0.0;
};

}  // namespace aimh
