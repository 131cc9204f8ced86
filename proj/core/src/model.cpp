#include "fairmanna/model.hpp"

#include <algorithm>
#include <set>

namespace fairmanna {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::general_model: return "GeneralModel";
    case Errc::item_in_bundle: return "ItemInBundle";
    case Errc::too_large: return "TooLarge";
    case Errc::zero_total: return "ZeroTotal";
    case Errc::sign_mismatch: return "SignMismatch";
    case Errc::same_agent: return "SameAgent";
    case Errc::mixed_item_encountered: return "MixedItemEncountered";
    case Errc::too_many_items: return "TooManyItems";
    case Errc::bad_parameters: return "BadParameters";
    case Errc::invalid_cover: return "InvalidCover";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::rejection_cap_exceeded: return "RejectionCapExceeded";
    case Errc::chain_violation: return "ChainViolation";
    case Errc::parse_error: return "ParseError";
  }
  return "Error";
}

Rational Rational::parse(const std::string& text) {
  auto parse_int = [](const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational component");
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed rational: " + s);
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Instance::Instance(int agents, std::vector<std::string> items, UtilityModel utilities)
    : n_(agents), items_(std::move(items)), model_(std::move(utilities)) {
  if (n_ < 2) raise(Errc::bad_parameters, "need at least 2 agents");
  if (items_.empty()) raise(Errc::bad_parameters, "need at least 1 item");
  std::set<std::string> seen(items_.begin(), items_.end());
  if (seen.size() != items_.size()) raise(Errc::bad_parameters, "item labels must be unique");
  if (is_additive()) {
    const auto& mat = additive().matrix;
    if (static_cast<int>(mat.size()) != n_)
      raise(Errc::bad_parameters, "utility matrix must have one row per agent");
    for (const auto& row : mat)
      if (row.size() != items_.size())
        raise(Errc::bad_parameters, "utility row length must equal the item count");
  } else {
    if (items_.size() >= 26) raise(Errc::bad_parameters, "general tables limited to m < 26");
    const auto& tables = general().tables;
    if (static_cast<int>(tables.size()) != n_)
      raise(Errc::bad_parameters, "need one bundle table per agent");
    const std::size_t want = std::size_t{1} << items_.size();
    for (const auto& table : tables)
      if (table.size() != want)
        raise(Errc::bad_parameters, "general tables need exactly 2^m entries per agent");
  }
}

std::optional<int> Instance::item_index(const std::string& label) const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

Rational Instance::value(int agent, Mask bundle) const {
  if (is_additive()) {
    Rational sum;
    const auto& row = additive().matrix[agent];
    for (Mask rest = bundle; rest != 0; rest &= rest - 1)
      sum += row[__builtin_ctzll(rest)];
    return sum;
  }
  return general().tables[agent][bundle];
}

Allocation::Allocation(int n, std::vector<int> owner_by_item)
    : agents(n), owner(std::move(owner_by_item)) {
  for (int a : owner)
    if (a < 0 || a >= agents) raise(Errc::bad_parameters, "owner out of range");
}

Mask Allocation::bundle_mask(int agent) const {
  Mask mask = 0;
  for (int t = 0; t < m(); ++t)
    if (owner[t] == agent) mask |= Mask{1} << t;
  return mask;
}

std::vector<std::vector<int>> Allocation::bundles() const {
  std::vector<std::vector<int>> out(agents);
  for (int t = 0; t < m(); ++t) out[owner[t]].push_back(t);
  return out;
}

Allocation Allocation::from_bundles(int agents, int items,
                                    const std::vector<std::vector<int>>& bundles) {
  if (static_cast<int>(bundles.size()) != agents)
    raise(Errc::bad_parameters, "need one bundle per agent");
  std::vector<int> owner(items, -1);
  for (int a = 0; a < agents; ++a)
    for (int t : bundles[a]) {
      if (t < 0 || t >= items) raise(Errc::bad_parameters, "item index out of range");
      if (owner[t] != -1) raise(Errc::bad_parameters, "item allocated twice");
      owner[t] = a;
    }
  for (int t = 0; t < items; ++t)
    if (owner[t] == -1) raise(Errc::bad_parameters, "item left unallocated");
  return Allocation(agents, std::move(owner));
}

Allocation Allocation::from_index(int agents, int items, std::uint64_t index) {
  std::vector<int> owner(items);
  for (int t = 0; t < items; ++t) {
    owner[t] = static_cast<int>(index % agents);
    index /= agents;
  }
  return Allocation(agents, std::move(owner));
}

std::uint64_t Allocation::to_index() const {
  std::uint64_t index = 0;
  for (int t = m() - 1; t >= 0; --t) index = index * agents + owner[t];
  return index;
}

void require_valid(const Instance& inst, const Allocation& alloc) {
  if (alloc.agents != inst.n() || alloc.m() != inst.m())
    raise(Errc::bad_parameters, "allocation shape does not match the instance");
}

const char* to_string(ItemClass c) {
  switch (c) {
    case ItemClass::Mixed: return "Mixed";
    case ItemClass::Good: return "Good";
    case ItemClass::PureGood: return "PureGood";
    case ItemClass::Bad: return "Bad";
    case ItemClass::PureBad: return "PureBad";
    case ItemClass::Neutral: return "Neutral";
  }
  return "?";
}

const char* to_string(ProblemClass c) {
  switch (c) {
    case ProblemClass::WithMixedItems: return "WithMixedItems";
    case ProblemClass::WithoutMixedItems: return "WithoutMixedItems";
    case ProblemClass::PureGoodsAndBads: return "PureGoodsAndBads";
  }
  return "?";
}

std::optional<std::uint64_t> allocation_count(const Instance& inst, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int t = 0; t < inst.m(); ++t) {
    if (total > cap / inst.n()) return std::nullopt;
    total *= inst.n();
  }
  if (total > cap) return std::nullopt;
  return total;
}

std::uint64_t require_within_cap(const Instance& inst, std::uint64_t cap) {
  auto total = allocation_count(inst, cap);
  if (!total)
    raise(Errc::too_large, "n^m = " + std::to_string(inst.n()) + "^" + std::to_string(inst.m()) +
                               " exceeds the enumeration cap " + std::to_string(cap));
  return *total;
}

Rational bundle_utility(const Instance& inst, int agent, Mask bundle) {
  return inst.value(agent, bundle);
}

ItemClass classify_item_additive(const Instance& inst, int item) {
  if (!inst.is_additive())
    raise(Errc::general_model, "cardinal item classification needs additive utilities");
  bool pos = false, neg = false, all_pos = true, all_neg = true;
  for (int a = 0; a < inst.n(); ++a) {
    int s = inst.item_value(a, item).sign();
    pos |= s > 0;
    neg |= s < 0;
    all_pos &= s > 0;
    all_neg &= s < 0;
  }
  if (pos && neg) return ItemClass::Mixed;
  if (all_pos) return ItemClass::PureGood;
  if (pos) return ItemClass::Good;
  if (all_neg) return ItemClass::PureBad;
  if (neg) return ItemClass::Bad;
  return ItemClass::Neutral;
}

Rational marginal_utility(const Instance& inst, int agent, int item, Mask bundle) {
  const Mask bit = Mask{1} << item;
  if (bundle & bit) raise(Errc::item_in_bundle, "item already in the base bundle");
  if (inst.is_additive()) return inst.item_value(agent, item);
  return inst.value(agent, bundle | bit) - inst.value(agent, bundle);
}

ItemClass classify_marginal(const Instance& inst, int agent, int item, Mask bundle) {
  int s = marginal_utility(inst, agent, item, bundle).sign();
  return s > 0 ? ItemClass::PureGood : s < 0 ? ItemClass::PureBad : ItemClass::Neutral;
}

namespace {

ProblemClass detect_additive(const Instance& inst) {
  bool mixed = false, pure = true;
  for (int o = 0; o < inst.m(); ++o) {
    bool pos = false, neg = false, all_pos = true, all_neg_weak = true;
    for (int a = 0; a < inst.n(); ++a) {
      int s = inst.item_value(a, o).sign();
      pos |= s > 0;
      neg |= s < 0;
      all_pos &= s > 0;
      all_neg_weak &= s <= 0;
    }
    mixed |= pos && neg;
    pure &= all_pos || all_neg_weak;
  }
  if (mixed) return ProblemClass::WithMixedItems;
  return pure ? ProblemClass::PureGoodsAndBads : ProblemClass::WithoutMixedItems;
}

ProblemClass detect_general(const Instance& inst, std::uint64_t cap) {
  const std::uint64_t total = require_within_cap(inst, cap);
  bool pure = true;
  for (std::uint64_t index = 0; index < total; ++index) {
    Allocation alloc = Allocation::from_index(inst.n(), inst.m(), index);
    std::vector<Mask> masks(inst.n());
    for (int a = 0; a < inst.n(); ++a) masks[a] = alloc.bundle_mask(a);
    for (int o = 0; o < inst.m(); ++o) {
      const Mask bit = Mask{1} << o;
      bool pos = false, neg = false, all_pos = true, all_neg_weak = true;
      for (int a = 0; a < inst.n(); ++a) {
        // Marginal of o in this allocation: holders against A_a minus o,
        // everyone else against A_a itself.
        int s = marginal_utility(inst, a, o, masks[a] & ~bit).sign();
        pos |= s > 0;
        neg |= s < 0;
        all_pos &= s > 0;
        all_neg_weak &= s <= 0;
      }
      if (pos && neg) return ProblemClass::WithMixedItems;
      pure &= all_pos || all_neg_weak;
    }
  }
  return pure ? ProblemClass::PureGoodsAndBads : ProblemClass::WithoutMixedItems;
}

}  // namespace

ProblemClass detect_problem_class(const Instance& inst, std::uint64_t cap) {
  return inst.is_additive() ? detect_additive(inst) : detect_general(inst, cap);
}

Instance normalise(const Instance& inst, const Rational& target) {
  if (target.is_zero()) raise(Errc::bad_parameters, "normalisation target must be non-zero");
  std::vector<Rational> factors(inst.n());
  for (int a = 0; a < inst.n(); ++a) {
    Rational total = inst.grand_total(a);
    if (total.is_zero())
      raise(Errc::zero_total, "agent " + std::to_string(a) + " values the grand bundle at 0");
    if (total.sign() != target.sign())
      raise(Errc::sign_mismatch,
            "agent " + std::to_string(a) + " grand-bundle sign differs from the target");
    factors[a] = target / total;
  }
  auto scale_rows = [&](const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<Rational>> out(rows.size());
    for (std::size_t a = 0; a < rows.size(); ++a) {
      out[a].reserve(rows[a].size());
      for (const auto& v : rows[a]) out[a].push_back(v * factors[a]);
    }
    return out;
  };
  if (inst.is_additive())
    return Instance(inst.n(), inst.items(), AdditiveModel{scale_rows(inst.additive().matrix)});
  return Instance(inst.n(), inst.items(), GeneralModel{scale_rows(inst.general().tables)});
}

Instance prefix_instance(const Instance& inst, int items) {
  if (items < 1 || items > inst.m()) raise(Errc::bad_parameters, "prefix length out of range");
  std::vector<std::string> labels(inst.items().begin(), inst.items().begin() + items);
  if (inst.is_additive()) {
    std::vector<std::vector<Rational>> matrix(inst.n());
    for (int a = 0; a < inst.n(); ++a)
      matrix[a].assign(inst.additive().matrix[a].begin(),
                       inst.additive().matrix[a].begin() + items);
    return Instance(inst.n(), std::move(labels), AdditiveModel{std::move(matrix)});
  }
  std::vector<std::vector<Rational>> tables(inst.n());
  const std::size_t size = std::size_t{1} << items;
  for (int a = 0; a < inst.n(); ++a) {
    tables[a].resize(size);
    for (Mask mask = 0; mask < size; ++mask) tables[a][mask] = inst.general().tables[a][mask];
  }
  return Instance(inst.n(), std::move(labels), GeneralModel{std::move(tables)});
}

}  // namespace fairmanna
