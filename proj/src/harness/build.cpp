#include "aimh/harness/build.hpp"

#include <chrono>

#include "aimh/core/error.hpp"
#include "aimh/proposals/basic_kernels.hpp"
#include "aimh/proposals/doeblin_wrap.hpp"
#include "aimh/proposals/mixture.hpp"
#include "aimh/proposals/surrogate.hpp"
#include "aimh/targets/example1.hpp"
#include "aimh/targets/example4.hpp"
#include "aimh/targets/external.hpp"
#include "aimh/targets/standard.hpp"

namespace aimh {
namespace {

State or_default(const std::vector<double>& v, std::size_t dim, double fill, const std::string& key) {
  if (v.empty()) return State(dim, fill);
  if (v.size() != dim) throw ConfigError(key, -1, "expected " + std::to_string(dim) + " values");
  return v;
}

std::pair<State, State> box_or_support(const Params& p, const TargetDensity& target, const std::string& lo_key,
                                       const std::string& hi_key) {
  const auto& lo = param_vector(p, lo_key);
  const auto& hi = param_vector(p, hi_key);
  if (lo.empty() != hi.empty()) throw ConfigError(lo_key, -1, "give both bounds or neither");
  if (lo.empty()) {
    if (target.support().kind() != Support::Kind::box)
      throw ConfigError(lo_key, -1, "bounds required for a target without a bounded box support");
    return {target.support().lower(), target.support().upper()};
  }
  if (lo.size() != target.dim() || hi.size() != target.dim())
    throw ConfigError(lo_key, -1, "bounds must match the target dimension");
  return {lo, hi};
}

Eigen::MatrixXd diag(const State& v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) d[static_cast<Eigen::Index>(i)] = v[i];
  return d.asDiagonal();
}

NormalMixtureParams mixture_params(const Params& p, std::size_t dim) {
  NormalMixtureParams m{Gaussian::diagonal(or_default(param_vector(p, "base_mean"), dim, 0.0, "kernel.base_mean"),
                                           or_default(param_vector(p, "base_var"), dim, 1.0, "kernel.base_var")),
                        diag(or_default(param_vector(p, "mode_var"), dim, 1e-2, "kernel.mode_var")),
                        param_count(p, "M0"),
                        param_count(p, "M"),
                        param_double(p, "eps1"),
                        param_double(p, "tau0")};
  return m;
}

HeavyTail build_tail(const Section& w, const TargetDensity& target) {
  if (w.kind == "uniform_box") {
    auto [lo, hi] = box_or_support(w.params, target, "lower", "upper");
    return HeavyTail::uniform_box(lo, hi);
  }
  const std::size_t d = target.dim();
  return HeavyTail::student_t1(or_default(param_vector(w.params, "location"), d, 0.0, "wrap.location"),
                               diag(or_default(param_vector(w.params, "scale"), d, 1.0, "wrap.scale")));
}

}  // namespace

bool target_per_chain(const Section& spec) {
  return spec.kind == "example4" && !param_strings(spec.params, "simulator").empty();
}

std::shared_ptr<TargetDensity> build_target(const Section& spec) {
  const Params& p = spec.params;
  if (spec.kind == "example1") return std::make_shared<Example1Target>(param_double(p, "alpha"));
  if (spec.kind == "gauss13") {
    const double sigma = param_double(p, "sigma");
    if (!(sigma > 0.0)) throw ConfigError("target.sigma", -1, "must be positive");
    return std::make_shared<GaussMixtureTarget>(GaussMixtureTarget::isotropic(
        gauss13_layout(param_double(p, "r_inner"), param_double(p, "r_outer")), sigma));
  }
  if (spec.kind == "cauchy") return std::make_shared<CauchyTarget>();
  if (spec.kind == "uniform_box")
    return std::make_shared<UniformBoxTarget>(param_vector(p, "lower"), param_vector(p, "upper"));
  if (spec.kind == "example4") {
    std::shared_ptr<ResponseEvaluator> eval;
    const auto& cmd = param_strings(p, "simulator");
    if (cmd.empty()) eval = std::make_shared<BuiltinEx4Evaluator>();
    else
      eval = std::make_shared<ExternalEvaluator>(
          cmd, std::chrono::milliseconds(static_cast<long>(param_double(p, "timeout_ms"))));
    return std::make_shared<Example4Target>(eval, param_double(p, "d"), param_double(p, "sigma2"));
  }
  throw ConfigError("target.kind", -1, "unknown kind '" + spec.kind + "'");
}

InitialDistribution build_initial(const Section& spec, const TargetDensity& target) {
  const std::size_t d = target.dim();
  if (spec.kind == "target") {
    if (!target.directly_sampleable()) throw ConfigError("initial.kind", -1, "target cannot be sampled directly");
    return [&target](Rng& rng) { return target.sample_exact(rng); };
  }
  if (spec.kind == "uniform") {
    auto [lo, hi] = box_or_support(spec.params, target, "lower", "upper");
    return [lo, hi](Rng& rng) {
      State x(lo.size());
      for (std::size_t k = 0; k < x.size(); ++k) x[k] = lo[k] + (hi[k] - lo[k]) * uniform01(rng);
      return x;
    };
  }
  if (spec.kind == "normal") {
    Gaussian g = Gaussian::diagonal(or_default(param_vector(spec.params, "mean"), d, 0.0, "initial.mean"),
                                    or_default(param_vector(spec.params, "var"), d, 1.0, "initial.var"));
    return [g](Rng& rng) { return g.sample(rng); };
  }
  if (spec.kind == "point") {
    const State x = param_vector(spec.params, "x");
    if (x.size() != d) throw ConfigError("initial.x", -1, "point must match the target dimension");
    return [x](Rng&) { return x; };
  }
  throw ConfigError("initial.kind", -1, "unknown kind '" + spec.kind + "'");
}

std::unique_ptr<ProposalKernel> build_kernel(const KernelSpec& spec, const TargetDensity& target) {
  const Params& p = spec.params;
  const std::size_t d = target.dim();
  std::unique_ptr<ProposalKernel> k;
  if (spec.kind == "uniform_independence") {
    auto [lo, hi] = box_or_support(p, target, "lower", "upper");
    k = std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::uniform(lo, hi));
  } else if (spec.kind == "normal_independence") {
    k = std::make_unique<FixedIndependenceKernel>(FixedIndependenceKernel::normal(
        Gaussian::diagonal(or_default(param_vector(p, "mean"), d, 0.0, "kernel.mean"),
                           or_default(param_vector(p, "var"), d, 1.0, "kernel.var"))));
  } else if (spec.kind == "random_walk") {
    auto [lo, hi] = box_or_support(p, target, "lower", "upper");
    k = std::make_unique<UniformRandomWalkKernel>(param_double(p, "L"), lo, hi);
  } else if (spec.kind == "gaussian_random_walk") {
    k = std::make_unique<GaussianRandomWalkKernel>(diag(or_default(param_vector(p, "var"), d, 1.0, "kernel.var")));
  } else if (spec.kind == "two_mode") {
    if (d != 1 || target.support().kind() != Support::Kind::box)
      throw ConfigError("kernel.kind", -1, "two_mode needs a one-dimensional box target");
    k = std::make_unique<TwoModeKernel>(param_double(p, "p"), param_double(p, "L"), param_double(p, "split"),
                                        target.support().lower()[0], target.support().upper()[0]);
  } else if (spec.kind == "normal_mixture") {
    k = std::make_unique<NormalMixtureKernel>(mixture_params(p, d));
  } else if (spec.kind == "suppressed_mixture") {
    SuppressionParams s;
    s.cap = param_count(p, "N");
    s.retain = param_count(p, "N0");
    s.spacing = param_double(p, "eps2");
    s.delta = param_double(p, "delta");
    s.exponent = param_double(p, "p");
    s.initial_c = param_double(p, "c0");
    s.controller_window = param_count(p, "controller_window");
    s.controller_gain = param_double(p, "controller_gain");
    s.target_base_fraction = param_double(p, "base_fraction");
    s.c_max_factor = param_double(p, "c_max_factor");
    k = std::make_unique<SuppressedMixtureKernel>(mixture_params(p, d), s);
  } else if (spec.kind == "surrogate") {
    SurrogateParams s;
    s.data = param_double(p, "d");
    s.sigma2 = param_double(p, "sigma2");
    s.widening = param_double(p, "w");
    s.ridge = param_double(p, "ridge");
    s.min_points = param_count(p, "n_min");
    if (target.support().kind() == Support::Kind::box) {
      s.lower = target.support().lower();
      s.upper = target.support().upper();
    }
    k = std::make_unique<SurrogateKernel>(d, s);
  } else {
    throw ConfigError("kernel.kind", -1, "unknown kind '" + spec.kind + "'");
  }
  if (spec.wrap) {
    try {
      k = std::make_unique<DoeblinMixtureKernel>(std::move(k), param_double(spec.wrap->params, "eps"),
                                                 build_tail(*spec.wrap, target));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError("wrap", -1, e.what());
    }
  }
  return k;
}

KernelSchedule build_schedule(const SamplerSpec& spec, const TargetDensity& target) {
  KernelSchedule schedule;
  for (const auto& k : spec.kernels) schedule.add(build_kernel(k, target), k.every);
  return schedule;
}

std::unique_ptr<BinPartition> build_partition(const Section& spec, const TargetDensity& target) {
  const Params& p = spec.params;
  if (spec.kind == "none") return nullptr;
  if (spec.kind == "ex1_quantile") {
    const auto* t = dynamic_cast<const Example1Target*>(&target);
    if (!t) throw ConfigError("diagnostics.partition", -1, "ex1_quantile needs the example1 target");
    return std::make_unique<IntervalPartition>(ex1_partition(*t, param_count(p, "bins")));
  }
  if (spec.kind == "gauss13") {
    const auto* t = dynamic_cast<const GaussMixtureTarget*>(&target);
    if (!t) throw ConfigError("diagnostics.partition", -1, "gauss13 partition needs a Gaussian mixture target");
    const double sigma = std::sqrt(t->component(0).cov()(0, 0));
    return std::make_unique<ModeShellPartition>(gauss13_partition(*t, sigma, param_count(p, "shells")));
  }
  if (spec.kind == "cauchy") {
    if (!dynamic_cast<const CauchyTarget*>(&target))
      throw ConfigError("diagnostics.partition", -1, "cauchy partition needs the cauchy target");
    return std::make_unique<IntervalPartition>(cauchy_partition(param_count(p, "bins")));
  }
  if (spec.kind == "box_grid") {
    if (!dynamic_cast<const UniformBoxTarget*>(&target))
      throw ConfigError("diagnostics.partition", -1, "box_grid partition needs a uniform_box target");
    std::vector<std::size_t> counts;
    for (double c : param_vector(p, "counts")) {
      if (!(c >= 1.0) || c != std::floor(c)) throw ConfigError("partition.counts", -1, "counts must be positive integers");
      counts.push_back(static_cast<std::size_t>(c));
    }
    if (counts.size() != target.dim()) throw ConfigError("partition.counts", -1, "one count per dimension");
    return std::make_unique<BoxGridPartition>(
        BoxGridPartition::uniform(target.support().lower(), target.support().upper(), counts));
  }
  throw ConfigError("diagnostics.partition", -1, "unknown kind '" + spec.kind + "'");
}

std::vector<State> classifier_modes(const ExperimentConfig& config, const TargetDensity& target) {
  if (!config.diagnostics.modes.empty()) return config.diagnostics.modes;
  if (const auto* g = dynamic_cast<const GaussMixtureTarget*>(&target)) return g->means();
  if (dynamic_cast<const Example1Target*>(&target)) return {{Example1Target::kModeHigh}, {Example1Target::kModeLow}};
  return {};
}

}  // namespace aimh
