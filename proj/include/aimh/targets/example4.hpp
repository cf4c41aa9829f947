#pragma once

#include <memory>

#include "aimh/core/target.hpp"

namespace aimh {

// f(x) = 3 sin(pi x1) - x1/2 + sum_{i=2..5} sin(pi x_i / 2) on (0,1)^5.
double ex4_f(Point x);
// -(f - d)^2 / sigma2
double ex4_log_likelihood(double f, double d, double sigma2);

// Source of the forward-model response. Implementations may hold a
// process and are therefore used by one chain at a time.
class ResponseEvaluator {
 public:
  virtual ~ResponseEvaluator() = default;
  virtual double response(Point x) = 0;
  virtual std::string name() const = 0;
};

class BuiltinEx4Evaluator final : public ResponseEvaluator {
 public:
  double response(Point x) override { return ex4_f(x); }
  std::string name() const override { return "builtin"; }
};

// Posterior of the inverse problem with a uniform prior on (0,1)^5:
//   log f(x) = -(g(x) - d)^2 / sigma2,
// g from the evaluator. The response is passed through to the history.
class Example4Target final : public TargetDensity {
 public:
  Example4Target(std::shared_ptr<ResponseEvaluator> evaluator, double data = 2.5, double sigma2 = 0.005);

  std::string name() const override { return "example4"; }
  double data() const { return data_; }
  double sigma2() const { return sigma2_; }

 protected:
  Evaluation evaluate_inside(Point x) const override;

 private:
  std::shared_ptr<ResponseEvaluator> evaluator_;
  double data_;
  double sigma2_;
};

}  // namespace aimh
