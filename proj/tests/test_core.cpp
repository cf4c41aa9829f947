#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aimh/core/chain.hpp"
#include "aimh/core/error.hpp"
#include "aimh/proposals/basic_kernels.hpp"
#include "aimh/targets/example1.hpp"
#include "aimh/targets/example4.hpp"
#include "aimh/targets/standard.hpp"

using namespace aimh;

namespace {

UniformBoxTarget unit_interval() { return UniformBoxTarget({0.0}, {1.0}); }

InitialDistribution fixed_start(State x) {
  return [x](Rng&) { return x; };
}

}  // namespace

TEST(Random, SplitSeedIsDeterministicAndSpreads) {
  EXPECT_EQ(split_seed(7, 3), split_seed(7, 3));
  EXPECT_NE(split_seed(7, 3), split_seed(7, 4));
  EXPECT_NE(split_seed(7, 3), split_seed(8, 3));
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(State, LogSumExpHandlesInfinities) {
  EXPECT_EQ(log_add_exp(kNegInf, kNegInf), kNegInf);
  EXPECT_DOUBLE_EQ(log_add_exp(kNegInf, 1.5), 1.5);
  EXPECT_NEAR(log_add_exp(1000.0, 1000.0), 1000.0 + std::log(2.0), 1e-12);
  const std::vector<double> v{-1000.0, -1000.0, kNegInf};
  EXPECT_NEAR(log_sum_exp(v), -1000.0 + std::log(2.0), 1e-12);
}

TEST(State, SupportContainsIsOpenBox) {
  const Support box = Support::box({0.0, 0.0}, {1.0, 2.0});
  EXPECT_TRUE(box.contains(State{0.5, 1.9}));
  EXPECT_FALSE(box.contains(State{0.0, 1.0}));
  EXPECT_FALSE(box.contains(State{0.5, 2.0}));
  EXPECT_DOUBLE_EQ(box.volume(), 2.0);
  EXPECT_TRUE(std::isinf(Support::unbounded(3).volume()));
}

TEST(Acceptance, HandExample) {
  // f(z)=2, f(x)=4, q(z)=0.5, q(x)=0.25: (2*0.25)/(4*0.5) = 1/4.
  const double a = acceptance_probability(std::log(2.0), std::log(4.0), std::log(0.25), std::log(0.5));
  EXPECT_NEAR(a, 0.25, 1e-15);
}

TEST(Acceptance, SymmetricEqualValuesGiveOne) {
  EXPECT_EQ(acceptance_probability(-3.0, -3.0, -1.0, -1.0), 1.0);
}

TEST(Acceptance, OutsideSupportIsZeroNotError) {
  EXPECT_EQ(acceptance_probability(kNegInf, 0.0, 0.0, 0.0), 0.0);
}

TEST(Acceptance, ZeroProposalDensityAtOwnSampleThrows) {
  EXPECT_THROW(acceptance_probability(0.0, 0.0, 0.0, kNegInf), SamplingError);
}

TEST(Acceptance, PerfectProposalAlwaysAccepts) {
  GaussMixtureTarget target({{0.3}}, {1.0}, {Eigen::MatrixXd::Constant(1, 1, 0.49)});
  auto kernel = FixedIndependenceKernel::normal(Gaussian({0.3}, Eigen::MatrixXd::Constant(1, 1, 0.49)));
  Rng rng(5);
  History h;
  for (int i = 0; i < 200; ++i) {
    const State x{0.3 + 3.0 * standard_normal(rng)};
    const State z{0.3 + 3.0 * standard_normal(rng)};
    EXPECT_NEAR(acceptance_probability(target, kernel, x, z, h), 1.0, 1e-12);
  }
}

TEST(Chain, MakeChainStateRejectsZeroDensityStart) {
  const auto target = unit_interval();
  EXPECT_THROW(make_chain_state(target, {1.5}, Rng(1)), Error);
  EXPECT_NO_THROW(make_chain_state(target, {0.5}, Rng(1)));
}

TEST(Chain, DrawInitialRetriesThenFails) {
  const auto target = unit_interval();
  Rng rng(3);
  const InitialDistribution outside = [](Rng&) { return State{2.0}; };
  EXPECT_THROW(draw_initial_state(target, outside, rng, 5), Error);
  int calls = 0;
  const InitialDistribution eventually = [&calls](Rng&) { return State{++calls < 3 ? 2.0 : 0.25}; };
  EXPECT_EQ(draw_initial_state(target, eventually, rng, 5), State{0.25});
}

TEST(Chain, ZeroIterationsGivesOnlyTheStart) {
  const auto target = unit_interval();
  KernelSchedule schedule(std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::uniform({0.0}, {1.0})));
  const Trace t = run_chain(target, schedule, fixed_start({0.4}), 0, 11);
  EXPECT_EQ(t.initial, State{0.4});
  EXPECT_TRUE(t.records.empty());
  EXPECT_EQ(t.independent_steps, 0u);
}

TEST(Chain, RandomWalkOnlyNeverGrowsHistory) {
  const Example1Target target;
  KernelSchedule schedule(std::make_unique<UniformRandomWalkKernel>(0.02, State{0.0}, State{1.0}));
  ChainState chain = make_chain_state(target, {1.0 / 3.0}, Rng(2));
  for (int i = 0; i < 500; ++i) {
    const StepRecord r = aimh_step(chain, schedule.kernel_for(chain.iteration + 1), target);
    EXPECT_FALSE(r.independent);
  }
  EXPECT_TRUE(chain.history.empty());
}

TEST(Chain, HistoryFollowsAcceptRejectRule) {
  const Example1Target target;
  KernelSchedule schedule;
  schedule.add(std::make_unique<UniformRandomWalkKernel>(0.02, State{0.0}, State{1.0}), 3);
  schedule.add(std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::uniform({0.0}, {1.0})));
  ChainState chain = make_chain_state(target, {1.0 / 3.0}, Rng(9));
  std::size_t independent = 0;
  for (int i = 0; i < 3000; ++i) {
    const State before = chain.current;
    const double before_f = chain.current_log_f;
    const std::size_t size = chain.history.size();
    const StepRecord r = aimh_step(chain, schedule.kernel_for(chain.iteration + 1), target);
    schedule.adapt_all(chain.history);
    if (!r.independent) {
      ASSERT_EQ(chain.history.size(), size);
      continue;
    }
    ++independent;
    ASSERT_EQ(chain.history.size(), size + 1);
    const HistoryEntry& e = chain.history.back();
    if (r.accepted) {
      EXPECT_EQ(e.state, before);
      EXPECT_EQ(e.log_f, before_f);
      EXPECT_EQ(chain.current, r.proposal);
    } else {
      EXPECT_EQ(e.state, r.proposal);
      EXPECT_EQ(chain.current, before);
    }
  }
  EXPECT_EQ(chain.history.size(), independent);
  EXPECT_EQ(independent, 2000u);
}

TEST(Chain, StartStateNeverEntersHistory) {
  const auto target = unit_interval();
  ChainState chain = make_chain_state(target, {0.123}, Rng(4));
  auto kernel = FixedIndependenceKernel::uniform({0.0}, {1.0});
  // Uniform target and proposal: every proposal is accepted.
  const StepRecord r = aimh_step(chain, kernel, target);
  ASSERT_TRUE(r.accepted);
  ASSERT_EQ(chain.history.size(), 1u);
  EXPECT_EQ(chain.history[0].state, State{0.123});
}

TEST(Chain, RunIsDeterministicInSeed) {
  const Example1Target target;
  auto make = [] {
    KernelSchedule s;
    s.add(std::make_unique<TwoModeKernel>(0.4, 0.02, 0.5));
    return s;
  };
  const InitialDistribution init = [](Rng& rng) { return State{uniform01(rng)}; };
  KernelSchedule a = make();
  KernelSchedule b = make();
  const Trace ta = run_chain(target, a, init, 200, 42);
  const Trace tb = run_chain(target, b, init, 200, 42);
  ASSERT_EQ(ta.records.size(), tb.records.size());
  EXPECT_EQ(ta.initial, tb.initial);
  for (std::size_t i = 0; i < ta.records.size(); ++i) {
    EXPECT_EQ(ta.records[i].proposal, tb.records[i].proposal);
    EXPECT_EQ(ta.records[i].accepted, tb.records[i].accepted);
    EXPECT_EQ(ta.records[i].u, tb.records[i].u);
  }
  KernelSchedule c = make();
  const Trace tc = run_chain(target, c, init, 200, 43);
  EXPECT_NE(ta.records.back().state, tc.records.back().state);
}

TEST(Schedule, FirstDividingSlotWithFallback) {
  KernelSchedule s;
  s.add(std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::uniform({0.0}, {1.0})), 10);
  s.add(std::make_unique<UniformRandomWalkKernel>(0.1, State{0.0}, State{1.0}), 1);
  EXPECT_EQ(s.index_for(10), 0u);
  EXPECT_EQ(s.index_for(20), 0u);
  EXPECT_EQ(s.index_for(7), 1u);
  KernelSchedule copy = s;
  EXPECT_EQ(copy.size(), 2u);
  EXPECT_NE(&copy.kernel(0), &s.kernel(0));
}

TEST(Regeneration, TrivialCases) {
  const auto target = unit_interval();
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double u = uniform01(rng) + 1e-300;
    EXPECT_FALSE(detect_regeneration(u, 0.0, 0.0, target, 0.0));
    EXPECT_TRUE(detect_regeneration(u, 0.0, 0.0, target, 1.0));
  }
}

TEST(Regeneration, HalfDensityProposalRegeneratesHalfTheTime) {
  // pi uniform on (0,1), q uniform on (0,2): q/pi = 1/2 on the support, so
  // a = 1/2 and every proposal inside the support regenerates.
  const auto target = unit_interval();
  Rng rng(2024);
  const int n = 10000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const State z{2.0 * uniform01(rng)};
    if (detect_regeneration(uniform01(rng), std::log(0.5), target.log_f(z), target, 0.5)) ++hits;
  }
  const double sd = std::sqrt(0.25 / n);
  EXPECT_NEAR(static_cast<double>(hits) / n, 0.5, 3.0 * sd);
}

TEST(Regeneration, RequiresNormalizedTarget) {
  const Example4Target target(std::make_shared<BuiltinEx4Evaluator>());
  EXPECT_FALSE(target.log_norm_const().has_value());
  EXPECT_THROW(detect_regeneration(0.5, 0.0, 0.0, target, 0.1), Error);
}

TEST(Acceptance, LogFormSurvivesUnderflow) {
  EXPECT_EQ(log_acceptance_probability(-2000.0, 0.0, 0.0, 0.0), -2000.0);
  EXPECT_EQ(acceptance_probability(-2000.0, 0.0, 0.0, 0.0), 0.0);
  EXPECT_EQ(log_acceptance_probability(kNegInf, 0.0, 0.0, 0.0), kNegInf);
  EXPECT_EQ(log_acceptance_probability(1.0, 0.0, 0.0, 0.0), 0.0);
}
