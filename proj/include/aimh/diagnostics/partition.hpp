#pragma once

#include <memory>
#include <vector>

#include "aimh/core/state.hpp"
#include "aimh/targets/example1.hpp"
#include "aimh/targets/standard.hpp"

namespace aimh {

// Disjoint cells covering the state space, each with its target
// probability. When the listed cells do not cover everything, the last
// cell is an overflow cell holding the remaining probability.
class BinPartition {
 public:
  virtual ~BinPartition() = default;
  virtual std::size_t cell(Point x) const = 0;
  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probabilities() const { return probs_; }
  double probability(std::size_t k) const { return probs_[k]; }

 protected:
  std::vector<double> probs_;
};

// Cells [e_k, e_{k+1}) on x (or on |x| with `on_abs`), one-dimensional.
// Values below the first or at/above the last edge land in an overflow
// cell, present only when `overflow_prob` > 0.
class IntervalPartition final : public BinPartition {
 public:
  IntervalPartition(std::vector<double> edges, std::vector<double> probs, bool on_abs = false, double overflow_prob = 0.0);
  std::size_t cell(Point x) const override;
  const std::vector<double>& edges() const { return edges_; }

 private:
  std::vector<double> edges_;
  bool abs_;
  bool overflow_;
};

// Regular grid of cells over a box; points outside clamp to the edge cell.
class BoxGridPartition final : public BinPartition {
 public:
  BoxGridPartition(State lower, State upper, std::vector<std::size_t> counts, std::vector<double> probs);
  // Grid cells weighted by volume (the uniform target).
  static BoxGridPartition uniform(State lower, State upper, std::vector<std::size_t> counts);
  std::size_t cell(Point x) const override;

 private:
  State lower_;
  State upper_;
  std::vector<std::size_t> counts_;
};

// One cell per support point of a finite target.
class FinitePartition final : public BinPartition {
 public:
  explicit FinitePartition(const FiniteTarget& target);
  std::size_t cell(Point x) const override;

 private:
  std::vector<State> points_;
};

// Nearest mode first, then the shell of Euclidean distance to that mode
// with the given radii (increasing, excluding 0 and infinity). Cell index
// = mode * (radii + 1) + shell. Probabilities are integrated against the
// mixture target in polar coordinates around each mode.
class ModeShellPartition final : public BinPartition {
 public:
  ModeShellPartition(const GaussMixtureTarget& target, std::vector<double> radii);
  std::size_t cell(Point x) const override;
  std::size_t shells() const { return radii_.size() + 1; }

 private:
  std::vector<State> modes_;
  std::vector<double> radii_;
};

// Radii sigma * sqrt(-2 ln(1 - q)) at q = k/shells, k = 1..shells-1: the
// equiprobable shells of an isotropic bivariate normal.
std::vector<double> equiprobable_shell_radii(double sigma, std::size_t shells);

// 52 cells: 13 modes x 4 shells, sigma = mode standard deviation.
ModeShellPartition gauss13_partition(const GaussMixtureTarget& target, double sigma, std::size_t shells = 4);
// m equiprobable bins on |x| for the standard Cauchy.
IntervalPartition cauchy_partition(std::size_t m);
// m equiprobable intervals of the first example's target.
IntervalPartition ex1_partition(const Example1Target& target, std::size_t m);

}  // namespace aimh
