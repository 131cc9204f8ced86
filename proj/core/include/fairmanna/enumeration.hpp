#pragma once

#include <cstdint>
#include <vector>

#include "fairmanna/model.hpp"

namespace fairmanna {

struct EnumOptions {
  std::uint64_t cap = kDefaultEnumCap;
  int workers = 0;  // 0 = pick automatically
};

/// Walks allocations in ascending canonical index, keeping per-agent bundle
/// masks and own-bundle utilities up to date incrementally. An advance moves
/// item 0 and, on digit carries, a prefix of further items, so the amortized
/// cost per allocation is O(1) utility updates.
class AllocationCursor {
 public:
  AllocationCursor(const Instance& inst, std::uint64_t start, std::uint64_t end);

  bool done() const { return index_ >= end_; }
  void advance();

  std::uint64_t index() const { return index_; }
  const std::vector<int>& owner() const { return owner_; }
  const std::vector<Mask>& masks() const { return masks_; }
  const std::vector<Rational>& utilities() const { return utils_; }
  Allocation allocation() const { return Allocation(inst_->n(), owner_); }

 private:
  void move_item(int item, int from, int to);

  const Instance* inst_;
  std::uint64_t index_, end_;
  std::vector<int> owner_;
  std::vector<Mask> masks_;
  std::vector<Rational> utils_;
};

/// Resolved worker count for a search space of `total` points.
int plan_workers(int requested, std::uint64_t total);

}  // namespace fairmanna
