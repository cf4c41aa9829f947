#include "aimh/targets/example1.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "aimh/core/error.hpp"
#include "aimh/targets/quadrature.hpp"

namespace aimh {

double ex1_log_density(double x, double alpha) {
  if (!(x > 0.0 && x < 1.0)) return kNegInf;
  const double m1 = std::min(std::log(x + 2.0 / 3.0), std::log(4.0 / 3.0 - x));
  const double m2 = std::min(std::log(x + 1.0 / 3.0), std::log(5.0 / 3.0 - x));
  return log_add_exp(std::log(4.0) + alpha * m1, alpha * m2);
}

Example1Target::Example1Target(double alpha)
    : TargetDensity(Support::box({0.0}, {1.0})), alpha_(alpha) {
  if (!(alpha > 0.0)) throw Error("example1: alpha must be positive");
  // The peaks have width of order 1/alpha; give the integrator breakpoints
  // at the kinks and a ladder of scales on either side.
  std::vector<double> breaks{1.0 / 3.0, 2.0 / 3.0};
  for (double mode : {1.0 / 3.0, 2.0 / 3.0})
    for (double k : {1.0, 4.0, 16.0, 64.0}) {
      breaks.push_back(mode - k / alpha);
      breaks.push_back(mode + k / alpha);
    }
  double err = 0.0;
  const double integral =
      integrate([alpha](double x) { return std::exp(ex1_log_density(x, alpha)); }, 0.0, 1.0, breaks, 1e-13, &err);
  c_ = 1.0 / integral;
  set_log_norm_const(std::log(integral), err / integral);
}

Evaluation Example1Target::evaluate_inside(Point x) const { return {ex1_log_density(x[0], alpha_), kNaN}; }

double Example1Target::tail_mass(double lo) const {
  return -std::expm1((alpha_ + 1.0) * std::log(lo)) / (alpha_ + 1.0);
}

double Example1Target::cdf(double x) const {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a1 = alpha_ + 1.0;
  // Integral of u^a over [lo, hi] within (0, 1].
  auto piece = [a1](double lo, double hi) {
    return (std::exp(a1 * std::log(hi)) - std::exp(a1 * std::log(lo))) / a1;
  };
  // First term: rising (x + 2/3)^a up to 1/3, falling (4/3 - x)^a after.
  const double t1 = x <= 1.0 / 3.0 ? piece(2.0 / 3.0, x + 2.0 / 3.0)
                                   : tail_mass(2.0 / 3.0) + piece(4.0 / 3.0 - x, 1.0);
  const double t2 = x <= 2.0 / 3.0 ? piece(1.0 / 3.0, x + 1.0 / 3.0)
                                   : tail_mass(1.0 / 3.0) + piece(5.0 / 3.0 - x, 1.0);
  return std::clamp(c_ * (4.0 * t1 + t2), 0.0, 1.0);
}

double Example1Target::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("example1: quantile level outside [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  std::uintmax_t iters = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve([&](double x) { return cdf(x) - p; }, 0.0, 1.0, -p, 1.0 - p,
                                                    boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (lo + hi);
}

State Example1Target::sample_exact(Rng& rng) const {
  // Component, then side, then an inverse power-law draw.
  const bool first = uniform01(rng) < 0.8;
  const double near = first ? 2.0 / 3.0 : 1.0 / 3.0;  // lower end of the rising side
  const double far = first ? 1.0 / 3.0 : 2.0 / 3.0;   // lower end of the falling side
  const double m_rise = tail_mass(near);
  const double m_fall = tail_mass(far);
  const bool rising = uniform01(rng) * (m_rise + m_fall) < m_rise;
  const double lo = rising ? near : far;
  const double a1 = alpha_ + 1.0;
  const double lo_pow = std::exp(a1 * std::log(lo));
  const double v = uniform01(rng);
  const double u = std::exp(std::log(lo_pow + v * (1.0 - lo_pow)) / a1);
  const double peak = first ? 1.0 / 3.0 : 2.0 / 3.0;
  // u = x + (1 - peak) on the rising side, u = (1 + peak) - x on the falling side.
  double x = rising ? u - (1.0 - peak) : (1.0 + peak) - u;
  x = std::clamp(x, std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0));
  return {x};
}

}  // namespace aimh
