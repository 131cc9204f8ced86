#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairmanna/enumeration.hpp"
#include "fairmanna/model.hpp"

namespace fairmanna {

enum class PropertyVariant { JF1, JF1_0, JFX, JFX_0, EF1, EFX, EFX_0, PO, EQUITABLE };

const char* to_string(PropertyVariant v);
PropertyVariant parse_property(const std::string& name);
bool is_jf_variant(PropertyVariant v);
bool is_ef_variant(PropertyVariant v);

/// One re-checkable inequality explaining a false verdict.
struct Violation {
  PropertyVariant property;
  int agent_a = -1;  // the jealous / envious / judging agent (-1 for PO)
  int agent_b = -1;
  std::optional<std::string> witness_item;
  std::string clause;  // which inequality family failed
  std::string detail;  // the failed inequality, with values
};

struct Verdict {
  PropertyVariant property;
  bool holds = false;
  std::vector<Violation> violations;
  std::optional<Allocation> improvement;  // PO only: minimum-index Pareto improver
};

struct PoResult {
  bool pareto_optimal = false;
  std::optional<Allocation> improvement;
  std::uint64_t explored = 0;
};

/// True iff a's utility for its own bundle is strictly below b's for b's own.
bool is_jealous(const Instance& inst, const Allocation& alloc, int a, int b);

/// Decides one of JF1, JF1_0, JFX, JFX_0 and reports every pairwise violation.
///
/// For each ordered pair (a, b), a jealousy witness is an item o that brings
/// b's utility down to at most a's: either o in A_a with u_a(A_a) >= u_b(A_b + o),
/// or o in A_b with u_a(A_a) >= u_b(A_b - o). The variants differ only in the
/// marginal-sign qualifier on o:
///   JF1    exists-witness; o strictly bad for a / strictly good for b
///   JF1_0  exists-witness; no sign restriction
///   JFX    every qualifying item must work; strict qualifiers as in JF1
///   JFX_0  every qualifying item must work; weak-sign qualifiers
Verdict check_jf(const Instance& inst, const Allocation& alloc, PropertyVariant variant);

/// Decides one of EF1, EFX, EFX_0, judged in the envious agent's own utility.
Verdict check_ef(const Instance& inst, const Allocation& alloc, PropertyVariant variant);

/// Exhaustive Pareto check. On failure the witness is the Pareto improver of
/// smallest canonical index, independent of the worker count.
PoResult is_po(const Instance& inst, const Allocation& alloc, const EnumOptions& opts = {});

/// True iff all agents derive the same utility from their own bundles.
bool is_equitable(const Instance& inst, const Allocation& alloc);

/// Uniform entry point over all nine properties.
Verdict check_property(const Instance& inst, const Allocation& alloc, PropertyVariant variant,
                       const EnumOptions& opts = {});

namespace detail {

// Allocation-free fast paths over precomputed bundle masks and utilities;
// these are what the enumerative searches call in their inner loops.
bool jf_pair_holds(const Instance& inst, const std::vector<Mask>& masks,
                   const std::vector<Rational>& utils, int a, int b, PropertyVariant variant);
bool ef_pair_holds(const Instance& inst, const std::vector<Mask>& masks,
                   const std::vector<Rational>& utils, int a, int b, PropertyVariant variant);
bool property_holds(const Instance& inst, const std::vector<Mask>& masks,
                    const std::vector<Rational>& utils, PropertyVariant variant,
                    const EnumOptions& opts);

}  // namespace detail

}  // namespace fairmanna
