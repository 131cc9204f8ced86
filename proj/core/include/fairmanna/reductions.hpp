#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fairmanna/model.hpp"

namespace fairmanna::reductions {

/// Exact cover by 3-sets: a 3q-element ground set and a collection of
/// 3-subsets, stored as index triples into the ground set.
struct X3CInstance {
  int q = 0;
  std::vector<std::string> ground_set;           // 3q labels
  std::vector<std::array<int, 3>> collection;    // Q triples, each sorted

  X3CInstance(int q, std::vector<std::string> ground,
              std::vector<std::array<int, 3>> sets);

  int Q() const { return static_cast<int>(collection.size()); }
};

enum class ReductionVariant { jf1_hardness, jf1_po_binary };

/// A fair-division instance derived from an X3C instance, together with the
/// role of every item and the construction parameters.
struct ReducedInstance {
  ReductionVariant variant;
  int q = 0;
  int Q = 0;
  Rational M;
  Instance instance;
  std::vector<char> item_roles;                  // 'x', 'y' or 'z' per item
  std::vector<std::array<int, 3>> collection;    // copied from the source
};

/// A cover is a set of collection indices.
using Cover = std::vector<int>;

/// First q-subset of the collection, in lexicographic index order, whose
/// 3-sets are pairwise disjoint and cover the ground set; nullopt if none.
/// Throws Errc::too_large when C(Q, q) exceeds `cap`.
std::optional<Cover> x3c_solve_bruteforce(const X3CInstance& x3c,
                                          std::uint64_t cap = 1'000'000);

/// Q+1 agents and 3q + 3(Q-q+1) + 1 items: the x's are worth 1 inside the
/// owning 3-set and -M outside, the y's are worth 1 to everyone, and the
/// sink item z compensates agent Q+1 so that all grand totals agree.
/// M defaults to 3Q - 3q + 7; smaller overrides keep the structure and the
/// forward direction but void the instance's hardness role.
ReducedInstance reduce_x3c_jf1(const X3CInstance& x3c,
                               std::optional<Rational> M = std::nullopt);

/// The binary variant: agent Q+1, the last y-triple and z are dropped and
/// every -M becomes 0, giving Q agents and 3Q items with 0/1 utilities and
/// equal row sums.
ReducedInstance reduce_x3c_jf1po_binary(const X3CInstance& x3c);

/// Allocation realizing a cover: cover agents take their own 3-sets, the
/// remaining agents take y-triples in index order, and z (when present) goes
/// to the first cover agent. Every agent ends at utility exactly 3.
Allocation cover_to_allocation(const ReducedInstance& red, const Cover& cover);

/// Inverse direction: if every agent sits at utility exactly 3 and each
/// x-holder holds exactly its own 3-set, the x-holders' sets are an exact
/// cover; otherwise nullopt.
std::optional<Cover> allocation_to_cover(const ReducedInstance& red, const Allocation& alloc);

}  // namespace fairmanna::reductions
