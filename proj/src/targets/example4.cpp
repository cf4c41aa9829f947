#include "aimh/targets/example4.hpp"

#include <cmath>
#include <numbers>

#include "aimh/core/error.hpp"

namespace aimh {

double ex4_f(Point x) {
  if (x.size() != 5) throw Error("ex4_f expects 5 coordinates");
  const double pi = std::numbers::pi;
  double f = 3.0 * std::sin(x[0] * pi) - x[0] / 2.0;
  for (std::size_t i = 1; i < 5; ++i) f += std::sin(x[i] * pi / 2.0);
  return f;
}

double ex4_log_likelihood(double f, double d, double sigma2) {
  const double r = f - d;
  return -r * r / sigma2;
}

Example4Target::Example4Target(std::shared_ptr<ResponseEvaluator> evaluator, double data, double sigma2)
    : TargetDensity(Support::box(State(5, 0.0), State(5, 1.0))),
      evaluator_(std::move(evaluator)),
      data_(data),
      sigma2_(sigma2) {
  if (!evaluator_) throw Error("example4: no evaluator");
  if (!(sigma2 > 0.0)) throw Error("example4: sigma2 must be positive");
}

Evaluation Example4Target::evaluate_inside(Point x) const {
  const double g = evaluator_->response(x);
  if (!std::isfinite(g)) throw EvaluationError("example4: non-finite response");
  return {ex4_log_likelihood(g, data_, sigma2_), g};
}

}  // namespace aimh
