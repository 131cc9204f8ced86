#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fairmanna/errors.hpp"
#include "fairmanna/rational.hpp"

namespace fairmanna {

using Mask = std::uint64_t;

inline int popcount(Mask m) { return __builtin_popcountll(m); }

/// Per-item cardinal utilities, one row per agent.
struct AdditiveModel {
  std::vector<std::vector<Rational>> matrix;  // n x m
};

/// Complete bundle-utility tables, one row of 2^m entries per agent,
/// indexed by the bundle bitmask over the instance's item order.
struct GeneralModel {
  std::vector<std::vector<Rational>> tables;  // n x 2^m
};

using UtilityModel = std::variant<AdditiveModel, GeneralModel>;

/// A fair-division problem: n >= 2 agents, m >= 1 distinctly labelled items,
/// and either additive or general utilities in exact rationals.
class Instance {
 public:
  Instance(int agents, std::vector<std::string> items, UtilityModel utilities);

  int n() const { return n_; }
  int m() const { return static_cast<int>(items_.size()); }
  const std::vector<std::string>& items() const { return items_; }
  const std::string& label(int item) const { return items_[item]; }
  std::optional<int> item_index(const std::string& label) const;

  bool is_additive() const { return std::holds_alternative<AdditiveModel>(model_); }
  const UtilityModel& model() const { return model_; }
  const AdditiveModel& additive() const { return std::get<AdditiveModel>(model_); }
  const GeneralModel& general() const { return std::get<GeneralModel>(model_); }

  /// u_a(o) for additive models.
  const Rational& item_value(int agent, int item) const { return additive().matrix[agent][item]; }

  /// Exact bundle utility u_a(M), M given as a bitmask over item order.
  Rational value(int agent, Mask bundle) const;

  Mask full_mask() const { return m() >= 64 ? ~Mask{0} : (Mask{1} << m()) - 1; }

  /// u_a([m]).
  Rational grand_total(int agent) const { return value(agent, full_mask()); }

 private:
  int n_;
  std::vector<std::string> items_;
  UtilityModel model_;
};

/// A complete allocation: every item is owned by exactly one agent.
/// The canonical index is the base-n integer whose digit at item position t
/// is the owner of item t.
struct Allocation {
  int agents = 0;
  std::vector<int> owner;  // one entry per item

  Allocation() = default;
  Allocation(int n, std::vector<int> owner_by_item);

  int m() const { return static_cast<int>(owner.size()); }
  Mask bundle_mask(int agent) const;
  std::vector<std::vector<int>> bundles() const;

  static Allocation from_bundles(int agents, int items,
                                 const std::vector<std::vector<int>>& bundles);
  static Allocation from_index(int agents, int items, std::uint64_t index);
  std::uint64_t to_index() const;  // requires n^m to fit in 64 bits

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Validates that alloc partitions exactly the items of inst.
void require_valid(const Instance& inst, const Allocation& alloc);

enum class ItemClass { Mixed, Good, PureGood, Bad, PureBad, Neutral };
enum class ProblemClass { WithMixedItems, WithoutMixedItems, PureGoodsAndBads };

const char* to_string(ItemClass c);
const char* to_string(ProblemClass c);

/// Caps n^m enumeration work; the CLI seeds it from FAIRMANNA_ENUM_CAP.
constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

/// n^m, or nullopt if it exceeds cap.
std::optional<std::uint64_t> allocation_count(const Instance& inst, std::uint64_t cap);

/// n^m after checking the cap; throws Errc::too_large otherwise.
std::uint64_t require_within_cap(const Instance& inst, std::uint64_t cap);

// -- operations ---------------------------------------------------------------

/// u_agent(bundle).
Rational bundle_utility(const Instance& inst, int agent, Mask bundle);

/// Classifies an item of an additive instance by the signs of its utility
/// column. Throws Errc::general_model for general instances.
ItemClass classify_item_additive(const Instance& inst, int item);

/// Sign of u_agent(bundle + item) - u_agent(bundle), mapped to
/// PureGood (> 0) / Neutral (= 0) / PureBad (< 0).
/// Throws Errc::item_in_bundle if the item already belongs to the bundle.
ItemClass classify_marginal(const Instance& inst, int agent, int item, Mask bundle);

/// Marginal utility of adding `item` to `bundle` for `agent`.
Rational marginal_utility(const Instance& inst, int agent, int item, Mask bundle);

/// WithMixedItems if some (allocation, item) pair has one strictly positive
/// and one strictly negative marginal across agents; PureGoodsAndBads if every
/// such pair has marginals all strictly positive or all weakly negative;
/// WithoutMixedItems otherwise. Additive instances are decided from utility
/// columns without enumeration; general ones enumerate within `cap`.
ProblemClass detect_problem_class(const Instance& inst, std::uint64_t cap = kDefaultEnumCap);

/// Scales each agent's utilities by target / u_a([m]) so every grand-bundle
/// utility equals target. Scale factors must be strictly positive, so axiom
/// verdicts that are scale-invariant per agent are preserved.
/// Throws Errc::zero_total or Errc::sign_mismatch.
Instance normalise(const Instance& inst, const Rational& target);

/// Sub-instance over the first `items` items; general tables restrict to
/// bundles drawn from that prefix.
Instance prefix_instance(const Instance& inst, int items);

}  // namespace fairmanna
