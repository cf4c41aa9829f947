#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aimh/core/history.hpp"
#include "aimh/core/random.hpp"
#include "aimh/core/state.hpp"

namespace aimh {

using KernelStats = std::vector<std::pair<std::string, double>>;

// q_i(z | x_prev, history). Within one iteration log_density is a fixed
// function with a constant (possibly unknown) normalizer, and sample draws
// from exactly that density. Kernels carry per-chain adaptation state and
// are never shared between chains.
class ProposalKernel {
 public:
  virtual ~ProposalKernel() = default;

  virtual std::string name() const = 0;

  // True when neither sample nor log_density reads x_prev at `iteration`.
  virtual bool is_independent(std::uint64_t iteration) const = 0;

  // Throws SamplingError when no draw can be produced.
  virtual State sample(Point x_prev, const History& history, Rng& rng) = 0;

  // log q(z | x_prev, history), up to an iteration-constant normalizer.
  virtual double log_density(Point z, Point x_prev, const History& history) const = 0;

  // Called once after every iteration. Reads the history only.
  virtual void adapt(const History& /*history*/) {}

  // Whether log_density is a normalized log-density.
  virtual bool normalized() const { return true; }

  virtual std::unique_ptr<ProposalKernel> clone() const = 0;

  // Free-form counters for diagnostics output.
  virtual KernelStats stats() const { return {}; }
};

// Kernels that ignore the current state by construction.
class IndependentKernel : public ProposalKernel {
 public:
  bool is_independent(std::uint64_t) const final { return true; }

  State sample(Point, const History& history, Rng& rng) final {
    return draw(history, rng);
  }
  double log_density(Point z, Point, const History& history) const final {
    return log_density_at(z, history);
  }

  virtual State draw(const History& history, Rng& rng) = 0;
  virtual double log_density_at(Point z, const History& history) const = 0;
};

// Which kernel runs at which iteration. Slot k is used at iteration i when
// it is the first slot whose `every` divides i; the last slot acts as the
// fallback. Every kernel sees every adapt() call.
class KernelSchedule {
 public:
  KernelSchedule() = default;
  explicit KernelSchedule(std::unique_ptr<ProposalKernel> kernel);

  KernelSchedule(const KernelSchedule& other);
  KernelSchedule& operator=(const KernelSchedule& other);
  KernelSchedule(KernelSchedule&&) noexcept = default;
  KernelSchedule& operator=(KernelSchedule&&) noexcept = default;

  void add(std::unique_ptr<ProposalKernel> kernel, std::uint64_t every = 1);

  std::size_t size() const { return slots_.size(); }
  std::size_t index_for(std::uint64_t iteration) const;
  ProposalKernel& kernel_for(std::uint64_t iteration) { return *slots_[index_for(iteration)].kernel; }
  ProposalKernel& kernel(std::size_t k) { return *slots_[k].kernel; }
  const ProposalKernel& kernel(std::size_t k) const { return *slots_[k].kernel; }

  void adapt_all(const History& history);

 private:
  struct Slot {
    std::unique_ptr<ProposalKernel> kernel;
    std::uint64_t every = 1;
  };
  std::vector<Slot> slots_;
};

}  // namespace aimh
