#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fairmanna/axioms.hpp"
#include "fairmanna/enumeration.hpp"
#include "fairmanna/model.hpp"

namespace fairmanna {

/// Comparison key of an allocation: per-agent (utility, bundle size) pairs
/// sorted ascending lexicographically. The leximin order consults only the
/// utility components; the leximin++ order compares the interleaved pairs.
struct LexKey {
  std::vector<std::pair<Rational, int>> entries;

  static LexKey of(const std::vector<Rational>& utils, const std::vector<Mask>& masks);
  friend bool operator==(const LexKey&, const LexKey&) = default;
};

/// Lexicographic comparison over utility components only: <0, 0, >0.
int compare_leximin(const LexKey& a, const LexKey& b);
/// Lexicographic comparison over flattened (utility, size) pairs.
int compare_leximin_pp(const LexKey& a, const LexKey& b);

struct SolveResult {
  Allocation allocation;
  LexKey key;
  std::uint64_t explored = 0;
  bool exhaustive = false;
};

struct SearchReport {
  std::optional<Allocation> found;
  std::uint64_t explored = 0;
  std::vector<PropertyVariant> properties;
  bool exhaustive = false;
};

/// All n^m allocations in ascending canonical index, materialized; prefer
/// iterating an AllocationCursor when the space is large.
std::vector<Allocation> enumerate_allocations(const Instance& inst,
                                              std::uint64_t cap = kDefaultEnumCap);

/// Allocation with the lexicographically maximal sorted utility vector;
/// co-optimal keys resolve to the smallest canonical index, independent of
/// the worker count.
SolveResult solve_leximin(const Instance& inst, const EnumOptions& opts = {});

/// Like solve_leximin but with bundle sizes interleaved into the key.
SolveResult solve_leximin_pp(const Instance& inst, const EnumOptions& opts = {});

/// Greedy one-pass allocation in item input order. A round's item must have
/// marginals all strictly positive (goes to an agent of minimum utility), all
/// strictly negative (goes to the agent maximizing its utility with the item),
/// or a zero marginal for someone (goes to the lowest such agent); otherwise
/// Errc::mixed_item_encountered is thrown with the round in detail_index.
/// All argmin/argmax ties break toward the lowest agent index.
SolveResult jf1zero_greedy(const Instance& inst);

/// First allocation, in ascending canonical index, satisfying every required
/// property; explored counts allocations visited.
SearchReport exists_allocation(const Instance& inst, const std::set<PropertyVariant>& required,
                               const EnumOptions& opts = {});

/// Injective item-to-agent assignment maximizing total utility (maximum-weight
/// bipartite matching); unassigned agents get the empty bundle. Ties resolve
/// to the lexicographically smallest owner vector. Requires m <= n and
/// additive utilities.
SolveResult assign_one_each(const Instance& inst);

}  // namespace fairmanna
