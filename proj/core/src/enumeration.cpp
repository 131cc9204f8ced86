#include "fairmanna/enumeration.hpp"

#include <algorithm>
#include <thread>

namespace fairmanna {

AllocationCursor::AllocationCursor(const Instance& inst, std::uint64_t start, std::uint64_t end)
    : inst_(&inst), index_(start), end_(end), owner_(inst.m(), 0), masks_(inst.n(), 0),
      utils_(inst.n()) {
  std::uint64_t rest = start;
  for (int t = 0; t < inst.m(); ++t) {
    owner_[t] = static_cast<int>(rest % inst.n());
    rest /= inst.n();
    masks_[owner_[t]] |= Mask{1} << t;
  }
  for (int a = 0; a < inst.n(); ++a) utils_[a] = inst.value(a, masks_[a]);
}

void AllocationCursor::move_item(int item, int from, int to) {
  const Mask bit = Mask{1} << item;
  masks_[from] &= ~bit;
  masks_[to] |= bit;
  owner_[item] = to;
  if (inst_->is_additive()) {
    utils_[from] -= inst_->item_value(from, item);
    utils_[to] += inst_->item_value(to, item);
  } else {
    utils_[from] = inst_->value(from, masks_[from]);
    utils_[to] = inst_->value(to, masks_[to]);
  }
}

void AllocationCursor::advance() {
  ++index_;
  if (done()) return;
  for (int t = 0; t < inst_->m(); ++t) {
    int next = owner_[t] + 1;
    if (next < inst_->n()) {
      move_item(t, owner_[t], next);
      return;
    }
    move_item(t, owner_[t], 0);  // carry into the next digit
  }
}

int plan_workers(int requested, std::uint64_t total) {
  if (requested > 0) return requested;
  if (total < 1u << 16) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp<unsigned>(hw, 1, 8));
}

}  // namespace fairmanna
