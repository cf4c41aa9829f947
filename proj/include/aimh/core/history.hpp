#pragma once

#include <cstdint>
#include <vector>

#include "aimh/core/state.hpp"

namespace aimh {

struct HistoryEntry {
  State state;
  double log_f = kNegInf;
  double response = kNaN;
  std::uint64_t iteration_added = 0;
};

// The ordered record of evaluated states, excluding the chain's current
// state. Grows by one entry per iteration with an independent proposal and
// never otherwise.
class History {
 public:
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const HistoryEntry& operator[](std::size_t i) const { return entries_[i]; }
  const HistoryEntry& back() const { return entries_.back(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  void append(HistoryEntry entry) { entries_.push_back(std::move(entry)); }

 private:
  std::vector<HistoryEntry> entries_;
};

}  // namespace aimh
