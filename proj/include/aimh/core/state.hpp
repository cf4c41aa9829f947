#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace aimh {

// A point of the state space. Discrete targets encode their elements as
// points too (see Support::finite).
using State = std::vector<double>;
using Point = std::span<const double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Region of the state space a target lives on.
class Support {
 public:
  enum class Kind { unbounded, box, finite };

  static Support unbounded(std::size_t dim);
  // Open box lower < x < upper, componentwise.
  static Support box(State lower, State upper);
  static Support finite(std::vector<State> points);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  bool contains(Point x) const;

  const State& lower() const { return lower_; }
  const State& upper() const { return upper_; }
  const std::vector<State>& points() const { return points_; }

  // Product of box side lengths; infinite for unbounded supports.
  double volume() const;

 private:
  Kind kind_ = Kind::unbounded;
  std::size_t dim_ = 0;
  State lower_;
  State upper_;
  std::vector<State> points_;
};

double squared_distance(Point a, Point b);

// log(exp(a) + exp(b)) without overflow; either side may be -inf.
double log_add_exp(double a, double b);
// log(sum(exp(v))) for a span of log values.
double log_sum_exp(std::span<const double> values);

}  // namespace aimh
