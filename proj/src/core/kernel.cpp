#include "aimh/core/kernel.hpp"

#include "aimh/core/error.hpp"

namespace aimh {

KernelSchedule::KernelSchedule(std::unique_ptr<ProposalKernel> kernel) { add(std::move(kernel)); }

KernelSchedule::KernelSchedule(const KernelSchedule& other) {
  for (const auto& slot : other.slots_) slots_.push_back({slot.kernel->clone(), slot.every});
}

KernelSchedule& KernelSchedule::operator=(const KernelSchedule& other) {
  if (this != &other) {
    KernelSchedule copy(other);
    slots_ = std::move(copy.slots_);
  }
  return *this;
}

void KernelSchedule::add(std::unique_ptr<ProposalKernel> kernel, std::uint64_t every) {
  if (!kernel) throw Error("null kernel in schedule");
  if (every == 0) throw Error("kernel period must be positive");
  slots_.push_back({std::move(kernel), every});
}

std::size_t KernelSchedule::index_for(std::uint64_t iteration) const {
  if (slots_.empty()) throw Error("empty kernel schedule");
  for (std::size_t k = 0; k + 1 < slots_.size(); ++k) {
    if (iteration % slots_[k].every == 0) return k;
  }
  return slots_.size() - 1;
}

void KernelSchedule::adapt_all(const History& history) {
  for (auto& slot : slots_) slot.kernel->adapt(history);
}

}  // namespace aimh
