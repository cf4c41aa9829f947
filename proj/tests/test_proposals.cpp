#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "aimh/core/error.hpp"
#include "aimh/proposals/basic_kernels.hpp"
#include "aimh/proposals/doeblin_wrap.hpp"
#include "aimh/proposals/mixture.hpp"
#include "aimh/proposals/mode_list.hpp"
#include "aimh/proposals/surrogate.hpp"
#include "aimh/targets/quadrature.hpp"
#include "aimh/targets/standard.hpp"
#include "support/stats.hpp"

using namespace aimh;
using aimh::testing::cell_probs;
using aimh::testing::histogram;
using aimh::testing::kGofLevel;
using aimh::testing::linspace;

namespace {

Eigen::MatrixXd scalar_cov(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

std::vector<double> draw_scalars(ProposalKernel& k, const History& h, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> xs(n);
  for (auto& x : xs) x = k.sample(State{0.5}, h, rng)[0];
  return xs;
}

// GOF of scalar draws against exp(log_q) normalized by quadrature over
// [lo, hi] split at `breaks`.
double gof_against_density(const std::vector<double>& xs, const std::function<double(double)>& q, double lo,
                           double hi, std::size_t cells, std::span<const double> breaks = {}) {
  const auto edges = linspace(lo, hi, cells);
  auto cdf = [&](double x) {
    if (x <= lo) return 0.0;
    std::vector<double> inner;
    for (double b : breaks)
      if (lo < b && b < x) inner.push_back(b);
    return integrate(q, lo, x, inner, 1e-10);
  };
  const auto counts = histogram(xs, edges);
  return chi_square_gof(counts, cell_probs(edges, cdf)).p_value;
}

History history_from(const std::vector<State>& states, const std::function<double(Point)>& log_f) {
  History h;
  std::uint64_t i = 0;
  for (const auto& s : states) h.append({s, log_f(s), kNaN, ++i});
  return h;
}

// Direct step-by-step transliteration of the mode-list insertion loop.
struct NaiveList {
  std::vector<std::pair<State, double>> items;
  std::size_t cap;
  double eps;

  static double dist(const State& a, const State& b) { return std::sqrt(squared_distance(a, b)); }

  void update(const State& y, double s) {
    bool inserted = false;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (s > items[j].second) {
        items.insert(items.begin() + static_cast<std::ptrdiff_t>(j), {y, s});
        for (std::size_t k = j + 1; k < items.size(); ++k) {
          if (dist(y, items[k].first) < eps / 2.0) {
            items.erase(items.begin() + static_cast<std::ptrdiff_t>(k));
            break;
          }
        }
        inserted = true;
        break;
      }
      if (dist(y, items[j].first) < eps) return;
    }
    if (!inserted) {
      if (items.size() >= cap) return;
      items.emplace_back(y, s);
    }
    if (items.size() > cap) items.resize(cap);
  }
};

NormalMixtureParams mixture_1d() {
  return NormalMixtureParams{Gaussian({0.0}, scalar_cov(1.0)), scalar_cov(0.25), 70, 80, 0.05, 0.5};
}

History cauchy_history(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const CauchyTarget cauchy;
  std::vector<State> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({4.0 * standard_normal(rng)});
  return history_from(pts, [&](Point x) { return cauchy.log_f(x); });
}

}  // namespace

// --- fixed kernels ---------------------------------------------------------

TEST(FixedIndependence, UniformDensityIsOneOnUnitInterval) {
  auto k = FixedIndependenceKernel::uniform({0.0}, {1.0});
  History h;
  EXPECT_EQ(k.log_density(State{0.3}, State{0.9}, h), 0.0);
  EXPECT_EQ(k.log_density(State{1.3}, State{0.9}, h), kNegInf);
  EXPECT_TRUE(k.is_independent(17));
}

TEST(FixedIndependence, StandardNormalPeak) {
  auto k = FixedIndependenceKernel::normal(Gaussian({0.0}, scalar_cov(1.0)));
  History h;
  EXPECT_NEAR(k.log_density(State{0.0}, State{2.0}, h), -0.5 * std::log(2.0 * std::numbers::pi), 1e-15);
}

TEST(FixedIndependence, UniformSamplesPassGof) {
  auto k = FixedIndependenceKernel::uniform({0.0}, {1.0});
  const auto xs = draw_scalars(k, {}, 100000, 1);
  const auto edges = linspace(0.0, 1.0, 20);
  EXPECT_GT(chi_square_gof(histogram(xs, edges), std::vector<double>(20, 0.05)).p_value, kGofLevel);
}

TEST(RandomWalk, InteriorWindow) {
  UniformRandomWalkKernel k(0.02, {0.0}, {1.0});
  History h;
  EXPECT_NEAR(std::exp(k.log_density(State{0.505}, State{0.5}, h)), 50.0, 1e-9);
  EXPECT_EQ(k.log_density(State{0.511}, State{0.5}, h), kNegInf);
  EXPECT_FALSE(k.is_independent(1));
}

TEST(RandomWalk, ClippedWindowRenormalizes) {
  UniformRandomWalkKernel k(0.02, {0.0}, {1.0});
  const auto [lo, hi] = k.window(0.005, 0);
  EXPECT_EQ(lo, 0.0);
  EXPECT_NEAR(hi, 0.015, 1e-15);
  History h;
  EXPECT_NEAR(std::exp(k.log_density(State{0.01}, State{0.005}, h)), 1.0 / 0.015, 1e-9);
  const double mass = integrate([&](double z) { return std::exp(k.log_density(State{z}, State{0.005}, h)); },
                                0.0, 0.015);
  EXPECT_NEAR(mass, 1.0, 1e-10);
  Rng rng(4);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = k.sample(State{0.005}, h, rng)[0];
  const auto edges = linspace(0.0, 0.015, 15);
  EXPECT_GT(chi_square_gof(histogram(xs, edges), std::vector<double>(15, 1.0 / 15)).p_value, kGofLevel);
}

TEST(RandomWalk, GaussianPeakAtCurrentState) {
  GaussianRandomWalkKernel k(Eigen::MatrixXd::Identity(2, 2) * 0.09);
  History h;
  const State x{0.4, -0.2};
  EXPECT_NEAR(k.log_density(x, x, h), Gaussian(x, Eigen::MatrixXd::Identity(2, 2) * 0.09).log_peak(), 1e-14);
}

// --- two-mode kernel -------------------------------------------------------

TEST(TwoMode, EmptyHistoryIsUniform) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  History h;
  k.adapt(h);
  EXPECT_TRUE(k.windows().empty());
  EXPECT_EQ(k.density(0.123), 1.0);
  EXPECT_EQ(k.density(0.9), 1.0);
}

TEST(TwoMode, WindowDensities) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  const History h = history_from({{1.0 / 3.0}, {2.0 / 3.0}, {0.1}, {0.9}}, [](Point x) {
    return std::abs(x[0] - 1.0 / 3.0) < 1e-9 || std::abs(x[0] - 2.0 / 3.0) < 1e-9 ? 0.0 : -5.0;
  });
  k.adapt(h);
  ASSERT_EQ(k.windows().size(), 2u);
  EXPECT_NEAR(k.density(1.0 / 3.0), 0.2 + 0.4 / 0.02, 1e-12);  // 20.2
  EXPECT_NEAR(k.density(2.0 / 3.0 + 0.005), 20.2, 1e-12);
  EXPECT_NEAR(k.density(0.5), 0.2, 1e-15);
  EXPECT_GE(k.floor_density(), 1.0 - 2.0 * 0.4);
  const double breaks[] = {1.0 / 3.0 - 0.01, 1.0 / 3.0 + 0.01, 2.0 / 3.0 - 0.01, 2.0 / 3.0 + 0.01};
  EXPECT_NEAR(integrate([&](double x) { return k.density(x); }, 0.0, 1.0, breaks), 1.0, 1e-10);
}

TEST(TwoMode, SingleSideReturnsMassToFloor) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  k.adapt(history_from({{0.2}}, [](Point) { return 0.0; }));
  ASSERT_EQ(k.windows().size(), 1u);
  EXPECT_NEAR(k.floor_density(), 0.6, 1e-15);
}

TEST(TwoMode, CloseWindowsMerge) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  k.adapt(history_from({{0.495}, {0.505}}, [](Point) { return 0.0; }));
  ASSERT_EQ(k.windows().size(), 1u);
  EXPECT_NEAR(k.windows()[0].mass, 0.8, 1e-15);
  EXPECT_NEAR(k.windows()[0].lo, 0.485, 1e-15);
  EXPECT_NEAR(k.windows()[0].hi, 0.515, 1e-15);
}

TEST(TwoMode, BoundaryWindowKeepsMass) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  k.adapt(history_from({{0.004}}, [](Point) { return 0.0; }));
  EXPECT_NEAR(integrate([&](double x) { return k.density(x); }, 0.0, 1.0, std::vector<double>{0.014}), 1.0, 1e-10);
}

TEST(TwoMode, TracksBestOnEachSide) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  History h;
  h.append({{0.2}, -3.0, kNaN, 1});
  h.append({{0.3}, -1.0, kNaN, 2});
  h.append({{0.8}, -2.0, kNaN, 3});
  h.append({{0.25}, -2.0, kNaN, 4});
  k.adapt(h);
  EXPECT_EQ(k.best(0), 0.3);
  EXPECT_EQ(k.best(1), 0.8);
}

TEST(TwoMode, SamplesMatchDensity) {
  TwoModeKernel k(0.4, 0.02, 0.5);
  const History h = history_from({{0.3}, {0.71}}, [](Point) { return 0.0; });
  k.adapt(h);
  const auto xs = draw_scalars(k, h, 100000, 8);
  // Cells aligned with the window edges.
  std::vector<double> edges{0.0, 0.1, 0.2, 0.29, 0.295, 0.3, 0.305, 0.31, 0.5, 0.7, 0.705, 0.71, 0.715, 0.72, 0.9, 1.0};
  std::vector<double> probs;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    probs.push_back(integrate([&](double x) { return k.density(x); }, edges[i], edges[i + 1]));
  EXPECT_GT(chi_square_gof(histogram(xs, edges), probs).p_value, kGofLevel);
}

// --- mode list -------------------------------------------------------------

TEST(ModeList, EmptyListTakesAnything) {
  ModeList l(1, 4, 0.05);
  EXPECT_TRUE(l.update(State{0.3}, -100.0, 0.0));
  EXPECT_EQ(l.size(), 1u);
}

TEST(ModeList, CloseLowerScoringPointIsIgnored) {
  ModeList l(1, 4, 0.05);
  l.update(State{0.0}, std::log(10.0), 0.0);
  EXPECT_FALSE(l.update(State{0.01}, std::log(5.0), 0.0));
  EXPECT_EQ(l.size(), 1u);
  EXPECT_EQ(l.state(0), State{0.0});
}

TEST(ModeList, HigherScoreReplacesCloseNeighbour) {
  ModeList l(1, 4, 0.05);
  l.update(State{0.0}, 1.0, 0.0);
  l.update(State{0.01}, 2.0, 0.0);
  ASSERT_EQ(l.size(), 1u);
  EXPECT_EQ(l.state(0), State{0.01});
}

TEST(ModeList, MatchesNaiveLoop) {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    ModeList fast(2, 4, 0.5);
    NaiveList naive{{}, 4, 0.5};
    const int steps = 1 + static_cast<int>(rng() % 12);
    for (int s = 0; s < steps; ++s) {
      const State y{uniform01(rng), uniform01(rng)};
      const double score = std::floor(uniform01(rng) * 6.0);  // ties on purpose
      fast.update(y, score, 0.0);
      naive.update(y, score);
      ASSERT_LE(fast.size(), 4u);
      ASSERT_EQ(fast.size(), naive.items.size()) << "trial " << trial;
      for (std::size_t i = 0; i < fast.size(); ++i) {
        ASSERT_EQ(fast.state(i), naive.items[i].first);
        ASSERT_EQ(fast.log_score(i), naive.items[i].second);
        if (i > 0) {
          ASSERT_GE(fast.log_score(i - 1), fast.log_score(i));
        }
      }
    }
  }
}

TEST(MixtureWeights, SingleModeGetsEverything) {
  const std::vector<double> f{-3.0};
  EXPECT_NEAR(mixture_weights(f, 20)[0], 1.0, 1e-15);
}

TEST(MixtureWeights, HandSolvedPair) {
  // floor 1/100 each, c = 0.98/4: (0.01 + 0.735, 0.01 + 0.245).
  const std::vector<double> f{std::log(3.0), std::log(1.0)};
  const auto tau = mixture_weights(f, 20);
  EXPECT_NEAR(tau[0], 0.745, 1e-14);
  EXPECT_NEAR(tau[1], 0.255, 1e-14);
}

TEST(MixtureWeights, EqualAndZeroValues) {
  const std::vector<double> same{2.0, 2.0, 2.0};
  for (double t : mixture_weights(same, 20)) EXPECT_NEAR(t, 1.0 / 3.0, 1e-15);
  const std::vector<double> zero{kNegInf, kNegInf};
  for (double t : mixture_weights(zero, 20)) EXPECT_EQ(t, 0.5);
}

// --- normal mixture --------------------------------------------------------

TEST(NormalMixture, EmptyListIsBase) {
  NormalMixtureKernel k(mixture_1d());
  const Gaussian base({0.0}, scalar_cov(1.0));
  for (double x : {-3.0, 0.0, 0.7}) EXPECT_EQ(k.log_density(State{x}, {}, {}), base.log_density(State{x}));
}

TEST(NormalMixture, TwoDimensionalDensityIntegratesToOne) {
  NormalMixtureParams p{Gaussian({0.0, 0.0}, Eigen::MatrixXd::Identity(2, 2)),
                        Eigen::MatrixXd::Identity(2, 2) * 0.03 * 0.03, 20, 25, 0.05, 0.5};
  NormalMixtureKernel k(p);
  const auto layout = gauss13_layout();
  const auto target = GaussMixtureTarget::isotropic(layout, 0.01);
  Rng rng(3);
  std::vector<State> pts;
  for (int i = 0; i < 400; ++i) pts.push_back(target.sample_exact(rng));
  const History h = history_from(pts, [&](Point x) { return target.log_f(x); });
  k.adapt(h);
  ASSERT_GT(k.weights().size(), 3u);
  double tau_sum = 0.0;
  for (double t : k.weights()) tau_sum += t;
  EXPECT_NEAR(tau_sum, 1.0, 1e-12);
  // Split both axes around the active mode components.
  auto breaks_for = [&](std::size_t d) {
    std::vector<double> b;
    for (std::size_t j = 0; j < k.weights().size(); ++j)
      for (double off : {-0.12, 0.0, 0.12}) b.push_back(k.modes().state(j)[d] + off);
    std::sort(b.begin(), b.end());
    return b;
  };
  const auto bx = breaks_for(0);
  const auto by = breaks_for(1);
  const double mass = integrate(
      [&](double x) {
        return integrate([&](double y) { return std::exp(k.log_density(State{x, y}, {}, h)); }, -8.0, 8.0, by,
                         1e-6);
      },
      -8.0, 8.0, bx, 1e-6);
  EXPECT_NEAR(mass, 1.0, 1e-3);
}

TEST(NormalMixture, FarTailIsBaseTerm) {
  NormalMixtureKernel k(mixture_1d());
  const History h = history_from({{0.0}}, [](Point) { return 0.0; });
  k.adapt(h);
  ASSERT_EQ(k.weights().size(), 1u);
  const State z{6.0};
  const double base_term = std::log(0.5 / 1.5) + Gaussian({0.0}, scalar_cov(1.0)).log_density(z);
  const double mode_term = std::log(1.0 / 1.5) + Gaussian({0.0}, scalar_cov(0.25)).log_density(z);
  EXPECT_NEAR(k.log_density(z, {}, h), log_add_exp(base_term, mode_term), 1e-12);
  EXPECT_NEAR(k.log_density(z, {}, h), base_term, 1e-6);
}

TEST(NormalMixture, SamplesMatchDensity) {
  NormalMixtureKernel k(mixture_1d());
  const History h = cauchy_history(300, 5);
  k.adapt(h);
  ASSERT_GT(k.weights().size(), 10u);
  const auto xs = draw_scalars(k, h, 100000, 9);
  const double p = gof_against_density(xs, [&](double x) { return std::exp(k.log_density(State{x}, {}, h)); },
                                       -12.0, 12.0, 48);
  EXPECT_GT(p, kGofLevel);
}

TEST(NormalMixture, AdaptationNeverRewritesThePast) {
  // Replay: the density seen at iteration i depends only on the history
  // prefix of length i.
  const History full = cauchy_history(200, 6);
  const std::vector<double> probes{-5.0, -1.0, 0.0, 0.3, 2.0, 9.0};
  NormalMixtureKernel live(mixture_1d());
  History grown;
  std::vector<std::vector<double>> seen;
  for (const auto& e : full) {
    grown.append(e);
    live.adapt(grown);
    live.adapt(grown);  // idempotent
    std::vector<double> row;
    for (double x : probes) row.push_back(live.log_density(State{x}, {}, grown));
    seen.push_back(row);
  }
  History replay;
  for (std::size_t i = 0; i < full.size(); i += 37) {
    NormalMixtureKernel fresh(mixture_1d());
    History prefix;
    for (std::size_t j = 0; j <= i; ++j) prefix.append(full[j]);
    fresh.adapt(prefix);
    for (std::size_t p = 0; p < probes.size(); ++p)
      EXPECT_EQ(fresh.log_density(State{probes[p]}, {}, prefix), seen[i][p]);
  }
}

// --- suppression -----------------------------------------------------------

TEST(Rho, EmptyListGivesC) {
  ModeList xi(1, 10, 0.05);
  EXPECT_EQ(rho(State{0.0}, xi, 10, 0.05, 0.1, 2.5), 2.5);
}

TEST(Rho, FloorAtDelta) {
  ModeList xi(1, 10, 0.05);
  xi.update(State{1.0}, 5.0, 0.0, std::log(0.01));
  EXPECT_EQ(rho(State{1.0}, xi, 10, 0.05, 0.1, 2.5), 0.1);
}

TEST(Rho, FirstMatchWins) {
  ModeList xi(1, 10, 0.05);
  xi.update(State{1.0}, 5.0, 0.0, std::log(0.3));
  xi.update(State{1.06}, 4.0, 0.0, std::log(0.7));
  ASSERT_EQ(xi.size(), 2u);
  EXPECT_NEAR(rho(State{1.03}, xi, 10, 0.05, 0.1, 2.5), 0.3, 1e-15);
  EXPECT_NEAR(rho(State{1.08}, xi, 10, 0.05, 0.1, 2.5), 0.7, 1e-15);
  // Only the first `retain` entries count.
  EXPECT_EQ(rho(State{1.08}, xi, 1, 0.05, 0.1, 2.5), 2.5);
}

TEST(Rho, SuppressedBallScalesBaseTerm) {
  // ratio 0.2 inside the ball, c = 2: base term scaled by 0.1.
  ModeList xi(1, 10, 0.05);
  xi.update(State{0.0}, 1.0, 0.0, std::log(0.2));
  EXPECT_NEAR(rho(State{0.01}, xi, 10, 0.05, 0.1, 2.0) / rho(State{3.0}, xi, 10, 0.05, 0.1, 2.0), 0.1, 1e-15);
}

TEST(SuppressedMixture, EmptySuppressionWithUnitCMatchesMixture) {
  NormalMixtureKernel plain(mixture_1d());
  SuppressedMixtureKernel sup(mixture_1d(), SuppressionParams{});
  ASSERT_EQ(sup.c(), 1.0);
  // Feed modes only through the shared part: a history of mode-list
  // entries would also fill the suppression list, so compare before that.
  for (double x : {-2.0, 0.0, 1.5}) {
    EXPECT_NEAR(sup.log_density(State{x}, {}, {}) - plain.log_density(State{x}, {}, {}), std::log(0.5), 1e-14);
  }
}

TEST(SuppressedMixture, DensityIsDirectFormula) {
  SuppressedMixtureKernel k(mixture_1d(), SuppressionParams{});
  const History h = cauchy_history(300, 11);
  k.adapt(h);
  ASSERT_GT(k.suppressed().size(), 0u);
  const Gaussian base({0.0}, scalar_cov(1.0));
  const Gaussian shape({0.0}, scalar_cov(0.25));
  const auto& tau = k.weights();
  for (double x : {-7.0, -1.2, 0.0, 0.4, 3.3}) {
    const State z{x};
    double q = 0.5 * k.rho_at(z) * std::exp(base.log_density(z));
    for (std::size_t j = 0; j < tau.size(); ++j)
      q += tau[j] * std::exp(shape.log_density(State{x - k.modes().state(j)[0]}));
    EXPECT_NEAR(k.log_density(z, {}, h), std::log(q), 1e-12);
  }
}

TEST(SuppressedMixture, SamplesMatchDensity) {
  SuppressedMixtureKernel k(mixture_1d(), SuppressionParams{});
  const History h = cauchy_history(300, 12);
  k.adapt(h);
  k.set_c(0.7);
  const auto xs = draw_scalars(k, h, 100000, 13);
  std::vector<double> breaks;
  for (std::size_t t = 0; t < k.suppressed().size(); ++t) {
    const double c = k.suppressed().state(t)[0];
    breaks.push_back(c - 0.05);
    breaks.push_back(c + 0.05);
  }
  std::sort(breaks.begin(), breaks.end());
  const double p = gof_against_density(xs, [&](double x) { return std::exp(k.log_density(State{x}, {}, h)); },
                                       -12.0, 12.0, 48, breaks);
  EXPECT_GT(p, kGofLevel);
}

TEST(SuppressedMixture, CNeverBelowListedRho) {
  SuppressedMixtureKernel k(mixture_1d(), SuppressionParams{});
  k.adapt(cauchy_history(300, 14));
  k.set_c(1e-6);
  EXPECT_GE(k.c(), k.max_listed_rho());
  EXPECT_GT(k.c(), 0.0);
}

// --- defensive wrap --------------------------------------------------------

TEST(DoeblinWrap, EpsilonZeroIsInner) {
  auto inner = std::make_unique<NormalMixtureKernel>(mixture_1d());
  const History h = cauchy_history(50, 15);
  inner->adapt(h);
  NormalMixtureKernel copy = *inner;
  DoeblinMixtureKernel k(std::move(inner), 0.0, HeavyTail::student_t1({0.0}, scalar_cov(1.0)));
  for (double x : {-4.0, 0.0, 2.5}) EXPECT_EQ(k.log_density(State{x}, {}, h), copy.log_density(State{x}, {}, h));
}

TEST(DoeblinWrap, EpsilonOneIsTail) {
  const HeavyTail g = HeavyTail::student_t1({0.0}, scalar_cov(4.0));
  DoeblinMixtureKernel k(std::make_unique<NormalMixtureKernel>(mixture_1d()), 1.0, g);
  for (double x : {-40.0, 0.0, 2.5}) EXPECT_EQ(k.log_density(State{x}, {}, {}), g.log_density(State{x}));
}

TEST(DoeblinWrap, UniformInsideUniformIsUnchanged) {
  DoeblinMixtureKernel k(std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::uniform({0.0}, {1.0})),
                         0.05, HeavyTail::uniform_box({0.0}, {1.0}));
  for (double x : {0.01, 0.5, 0.99}) EXPECT_NEAR(k.log_density(State{x}, {}, {}), 0.0, 1e-15);
}

TEST(DoeblinWrap, RejectsDependentOrUnnormalizedInner) {
  EXPECT_THROW(DoeblinMixtureKernel(std::make_unique<UniformRandomWalkKernel>(0.1, State{0.0}, State{1.0}), 0.1,
                                    HeavyTail::uniform_box({0.0}, {1.0})),
               Error);
  EXPECT_THROW(DoeblinMixtureKernel(std::make_unique<SurrogateKernel>(1, SurrogateParams{}), 0.1,
                                    HeavyTail::uniform_box({0.0}, {1.0})),
               Error);
}

TEST(HeavyTail, StudentT1Normalizers) {
  // One dimension: Cauchy with scale s.
  const HeavyTail g1 = HeavyTail::student_t1({1.0}, scalar_cov(4.0));
  for (double x : {-3.0, 1.0, 10.0}) {
    const double u = (x - 1.0) / 2.0;
    EXPECT_NEAR(g1.log_density(State{x}), -std::log(std::numbers::pi * 2.0 * (1.0 + u * u)), 1e-13);
  }
  // Two dimensions at the centre: Gamma(3/2) / (Gamma(1/2) pi) = 1 / (2 pi).
  const HeavyTail g2 = HeavyTail::student_t1({0.0, 0.0}, Eigen::MatrixXd::Identity(2, 2));
  EXPECT_NEAR(g2.log_density(State{0.0, 0.0}), -std::log(2.0 * std::numbers::pi), 1e-13);
}

TEST(HeavyTail, WrappedSamplesMatchDensity) {
  DoeblinMixtureKernel k(std::make_unique<FixedIndependenceKernel>(
                             FixedIndependenceKernel::normal(Gaussian({0.0}, scalar_cov(1.0)))),
                         0.2, HeavyTail::student_t1({0.0}, scalar_cov(1.0)));
  const auto xs = draw_scalars(k, {}, 100000, 16);
  const double p =
      gof_against_density(xs, [&](double x) { return std::exp(k.log_density(State{x}, {}, {})); }, -8.0, 8.0, 32);
  EXPECT_GT(p, kGofLevel);
}

// --- surrogate -------------------------------------------------------------

namespace {

History response_history(std::size_t n, std::uint64_t seed, const std::function<double(Point)>& g) {
  Rng rng(seed);
  History h;
  for (std::size_t i = 0; i < n; ++i) {
    State x(5);
    for (auto& v : x) v = uniform01(rng);
    h.append({x, 0.0, g(x), i + 1});
  }
  return h;
}

}  // namespace

TEST(SurrogateFit, RecoversExactModel) {
  const History h = response_history(20, 1, [](Point x) { return 1.0 + 2.0 * x[0] - x[0] * x[0]; });
  const SurrogateModel m = surrogate_fit(h, 0.0);
  Eigen::VectorXd expect(7);
  expect << 1.0, 2.0, 0.0, 0.0, 0.0, 0.0, -1.0;
  EXPECT_LT((m.coefficients - expect).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_EQ(m.fit_count, 20u);
}

TEST(SurrogateFit, ConstantData) {
  const History h = response_history(40, 2, [](Point) { return 3.25; });
  const SurrogateModel m = surrogate_fit(h, 1e-12);
  EXPECT_NEAR(m.coefficients[0], 3.25, 1e-6);
  for (Eigen::Index i = 1; i < 7; ++i) EXPECT_NEAR(m.coefficients[i], 0.0, 1e-6);
}

TEST(SurrogateFit, MatchesDirectLeastSquares) {
  Rng noise(3);
  const History h = response_history(60, 3, [&](Point) { return standard_normal(noise); });
  const SurrogateModel m = surrogate_fit(h, 0.0);
  Eigen::MatrixXd x(60, 7);
  Eigen::VectorXd y(60);
  for (Eigen::Index i = 0; i < 60; ++i) {
    const State& s = h[static_cast<std::size_t>(i)].state;
    x(i, 0) = 1.0;
    for (Eigen::Index d = 0; d < 5; ++d) x(i, d + 1) = s[static_cast<std::size_t>(d)];
    x(i, 6) = s[0] * s[0];
    y[i] = h[static_cast<std::size_t>(i)].response;
  }
  const Eigen::VectorXd direct = x.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
  EXPECT_LT((m.coefficients - direct).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(SurrogateFit, InsufficientData) {
  const History h = response_history(9, 4, [](Point x) { return x[0]; });
  try {
    surrogate_fit(h, 1e-8);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "insufficient data");
  }
}

TEST(SurrogateFit, SkipsEntriesWithoutResponse) {
  History h = response_history(12, 5, [](Point x) { return x[1]; });
  h.append({State(5, 0.5), 0.0, kNaN, 13});
  EXPECT_EQ(surrogate_fit(h, 1e-8).fit_count, 12u);
}

TEST(SurrogateKernel, UniformBeforeFitAndWhenModelHitsData) {
  SurrogateKernel k(5, SurrogateParams{});
  EXPECT_EQ(k.log_weight(State(5, 0.3)), 0.0);
  k.adapt(response_history(30, 6, [](Point) { return 2.5; }));
  ASSERT_TRUE(k.model().has_value());
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    State x(5);
    for (auto& v : x) v = uniform01(rng);
    EXPECT_NEAR(k.log_weight(x), 0.0, 1e-12);
  }
  EXPECT_EQ(k.log_weight(State{0.5, 0.5, 0.5, 0.5, 1.5}), kNegInf);
}

TEST(SurrogateKernel, WidenedWeight) {
  // |f_hat - d| = 0.1 with w = 5, sigma2 = 0.005: exp(-0.01 / 0.025).
  SurrogateParams p;
  p.ridge = 0.0;
  SurrogateKernel k(5, p);
  k.adapt(response_history(30, 8, [](Point) { return 2.6; }));
  EXPECT_NEAR(k.log_weight(State(5, 0.4)), -0.4, 1e-9);
}

TEST(SurrogateKernel, WideningDominatesPointwise) {
  SurrogateParams narrow;
  narrow.widening = 1.0;
  SurrogateKernel wide(5, SurrogateParams{});
  SurrogateKernel tight(5, narrow);
  const History h = response_history(50, 9, [](Point x) { return 3.0 * std::sin(std::numbers::pi * x[0]) + x[1]; });
  wide.adapt(h);
  tight.adapt(h);
  Rng rng(10);
  for (int i = 0; i < 1000; ++i) {
    State x(5);
    for (auto& v : x) v = uniform01(rng);
    EXPECT_GE(wide.log_weight(x), tight.log_weight(x));
    EXPECT_NEAR(wide.log_weight(x), tight.log_weight(x) / 5.0, 1e-9 * (1.0 + std::abs(tight.log_weight(x))));
  }
}

TEST(SurrogateKernel, SliceMarginalMatchesWeight) {
  // Response 4 x1: the x1-marginal is normal with mean 2.5/4 and
  // variance w sigma2 / (2 * 16), far from the box edges.
  SurrogateKernel k(5, SurrogateParams{});
  const History h = response_history(30, 11, [](Point x) { return 4.0 * x[0]; });
  k.adapt(h);
  Rng rng(12);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = k.sample({}, h, rng)[0];
  const double mean = 2.5 / 4.0;
  const double sd = std::sqrt(5.0 * 0.005 / 32.0);
  const auto edges = linspace(mean - 4.0 * sd, mean + 4.0 * sd, 24);
  const auto probs = cell_probs(edges, [&](double x) { return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2)); });
  EXPECT_GT(chi_square_gof(histogram(xs, edges), probs).p_value, kGofLevel);
}

TEST(SurrogateKernel, DegenerateWeightsThrow) {
  SurrogateParams p;
  p.sigma2 = 1e-6;
  SurrogateKernel k(5, p);
  const History h = response_history(20, 13, [](Point) { return 0.0; });
  k.adapt(h);
  Rng rng(14);
  try {
    k.sample({}, h, rng);
    FAIL() << "expected an error";
  } catch (const SamplingError& e) {
    EXPECT_STREQ(e.what(), "surrogate degenerate");
  }
}
