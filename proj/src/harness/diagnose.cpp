#include "aimh/harness/diagnose.hpp"

#include <cmath>
#include <fstream>

#include "aimh/core/error.hpp"
#include "aimh/diagnostics/metrics.hpp"
#include "aimh/harness/build.hpp"
#include "aimh/harness/ensemble.hpp"
#include "aimh/harness/outputs.hpp"

namespace aimh {
namespace {

constexpr double kUnboundedHalfWidth = 10.0;

std::vector<State> evaluation_points(const TargetDensity& target, const std::vector<State>& extra) {
  const std::size_t d = target.dim();
  const std::size_t per_dim = d == 1 ? 20001 : d == 2 ? 401 : d <= 5 ? 11 : 3;
  State lo(d, -kUnboundedHalfWidth), hi(d, kUnboundedHalfWidth);
  if (target.support().kind() == Support::Kind::box) {
    lo = target.support().lower();
    hi = target.support().upper();
    // Stay inside the open box.
    for (std::size_t k = 0; k < d; ++k) {
      const double pad = (hi[k] - lo[k]) * 1e-9;
      lo[k] += pad;
      hi[k] -= pad;
    }
  }
  std::vector<State> pts = target.support().kind() == Support::Kind::finite ? target.support().points()
                                                                              : regular_grid(lo, hi, per_dim);
  pts.insert(pts.end(), extra.begin(), extra.end());
  return pts;
}

}  // namespace

DiagnoseReport diagnose(const ExperimentConfig& config) {
  validate_config(config);
  Section spec = config.target;
  if (target_per_chain(spec)) std::get<std::vector<std::string>>(spec.params.at("simulator")).clear();
  const auto target = build_target(spec);
  const auto modes = classifier_modes(config, *target);

  DiagnoseReport report;
  report.iterations = snapshot_grid(config.diagnostics, config.iterations);
  const bool normalized = target->log_norm_const().has_value();
  const std::vector<State> points = normalized ? evaluation_points(*target, modes) : std::vector<State>{};
  History empty;
  for (const auto& s : config.samplers) {
    KernelSchedule schedule = build_schedule(s, *target);
    const ProposalKernel& k = schedule.kernel(0);
    KernelDoeblin kd{s.name, k.name(), std::nullopt, 0, {}};
    if (normalized && k.is_independent(1) && k.normalized()) {
      const auto est = doeblin_estimate([&](Point z) { return k.log_density(z, z, empty); }, *target, points);
      kd.a = est.a;
      kd.points = est.points;
      kd.argmin = est.argmin;
    }
    const double a = s.doeblin_a ? *s.doeblin_a : kd.a.value_or(0.0);
    std::vector<double> b;
    for (auto i : report.iterations) b.push_back(2.0 * std::pow(1.0 - a, static_cast<double>(i)));
    report.bounds.push_back(std::move(b));
    report.kernels.push_back(std::move(kd));
  }
  if (auto partition = build_partition(config.diagnostics.partition, *target)) {
    report.noise_floor = target->directly_sampleable()
                             ? noise_floor(*target, *partition, config.chains, config.diagnostics.noise_replicates,
                                           split_seed(config.seed, 0x6e6f697365ULL + config.chains))
                             : noise_floor_analytic(partition->probabilities(), config.chains);
  }
  return report;
}

void emit_diagnose(const DiagnoseReport& report, const ExperimentConfig& config, const std::filesystem::path& dir) {
  prepare_output_dir(dir);
  {
    std::ofstream out(dir / "doeblin.csv", std::ios::binary);
    out << "sampler,kernel,doeblin_a,points,argmin\n";
    for (const auto& k : report.kernels) {
      std::string arg;
      for (std::size_t d = 0; d < k.argmin.size(); ++d) arg += (d ? " " : "") + format_number(k.argmin[d]);
      out << k.sampler << "," << k.kernel << "," << (k.a ? format_number(*k.a) : "nan") << "," << k.points << ","
          << arg << "\n";
    }
  }
  std::ofstream out(dir / "bounds.csv", std::ios::binary);
  out << "iteration";
  for (const auto& s : config.samplers) out << ",tv_bound_" << s.name;
  out << ",noise_floor\n";
  for (std::size_t i = 0; i < report.iterations.size(); ++i) {
    out << report.iterations[i];
    for (const auto& b : report.bounds) out << "," << format_number(b[i]);
    out << "," << (report.noise_floor ? format_number(*report.noise_floor) : "nan") << "\n";
  }
}

}  // namespace aimh
