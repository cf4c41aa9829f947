#include "aimh/core/target.hpp"

#include "aimh/core/error.hpp"

namespace aimh {

double TargetDensity::log_pi(Point x) const {
  if (!log_norm_const_) throw Error("target '" + name() + "' has no normalizing constant");
  return log_f(x) - *log_norm_const_;
}

State TargetDensity::sample_exact(Rng&) const {
  throw Error("target '" + name() + "' cannot be sampled directly");
}

}  // namespace aimh
