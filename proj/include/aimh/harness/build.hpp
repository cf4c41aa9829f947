#pragma once

#include <memory>

#include "aimh/core/chain.hpp"
#include "aimh/core/kernel.hpp"
#include "aimh/core/target.hpp"
#include "aimh/diagnostics/partition.hpp"
#include "aimh/harness/config.hpp"

namespace aimh {

// True when every chain needs its own target instance (external
// simulator processes).
bool target_per_chain(const Section& spec);
std::shared_ptr<TargetDensity> build_target(const Section& spec);

InitialDistribution build_initial(const Section& spec, const TargetDensity& target);
std::unique_ptr<ProposalKernel> build_kernel(const KernelSpec& spec, const TargetDensity& target);
KernelSchedule build_schedule(const SamplerSpec& spec, const TargetDensity& target);
// nullptr for kind "none".
std::unique_ptr<BinPartition> build_partition(const Section& spec, const TargetDensity& target);
// Modes for the mode-jump classifier: the configured list, else the
// target's own modes when it has any.
std::vector<State> classifier_modes(const ExperimentConfig& config, const TargetDensity& target);

}  // namespace aimh
