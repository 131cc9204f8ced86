#include "fairmanna/solvers.hpp"

#include <algorithm>
#include <thread>

namespace fairmanna {

LexKey LexKey::of(const std::vector<Rational>& utils, const std::vector<Mask>& masks) {
  LexKey key;
  key.entries.reserve(utils.size());
  for (std::size_t a = 0; a < utils.size(); ++a)
    key.entries.emplace_back(utils[a], popcount(masks[a]));
  std::sort(key.entries.begin(), key.entries.end());
  return key;
}

int compare_leximin(const LexKey& a, const LexKey& b) {
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    auto order = a.entries[i].first <=> b.entries[i].first;
    if (order != 0) return order < 0 ? -1 : 1;
  }
  return 0;
}

int compare_leximin_pp(const LexKey& a, const LexKey& b) {
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (auto order = a.entries[i].first <=> b.entries[i].first; order != 0)
      return order < 0 ? -1 : 1;
    if (auto order = a.entries[i].second <=> b.entries[i].second; order != 0)
      return order < 0 ? -1 : 1;
  }
  return 0;
}

std::vector<Allocation> enumerate_allocations(const Instance& inst, std::uint64_t cap) {
  const std::uint64_t total = require_within_cap(inst, cap);
  std::vector<Allocation> out;
  out.reserve(total);
  for (AllocationCursor cur(inst, 0, total); !cur.done(); cur.advance())
    out.push_back(cur.allocation());
  return out;
}

namespace {

SolveResult solve_best(const Instance& inst, const EnumOptions& opts,
                       int (*compare)(const LexKey&, const LexKey&)) {
  const std::uint64_t total = require_within_cap(inst, opts.cap);
  const int workers = plan_workers(opts.workers, total);

  struct Best {
    LexKey key;
    std::uint64_t index = 0;
    bool set = false;
  };
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    Best best;
    for (AllocationCursor cur(inst, lo, hi); !cur.done(); cur.advance()) {
      LexKey key = LexKey::of(cur.utilities(), cur.masks());
      if (!best.set || compare(key, best.key) > 0) {
        best = {std::move(key), cur.index(), true};
      }
    }
    return best;
  };

  Best best;
  if (workers <= 1) {
    best = scan(0, total);
  } else {
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<Best> local(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        const std::uint64_t lo = std::min<std::uint64_t>(total, w * chunk);
        local[w] = scan(lo, std::min<std::uint64_t>(total, lo + chunk));
      });
    for (auto& t : pool) t.join();
    // Max key, then min index: chunks are index-ordered so the first strict
    // improvement wins and equal keys keep the earlier chunk's index.
    for (const Best& cand : local)
      if (cand.set && (!best.set || compare(cand.key, best.key) > 0)) best = cand;
  }

  SolveResult result;
  result.allocation = Allocation::from_index(inst.n(), inst.m(), best.index);
  result.key = std::move(best.key);
  result.explored = total;
  result.exhaustive = true;
  return result;
}

}  // namespace

SolveResult solve_leximin(const Instance& inst, const EnumOptions& opts) {
  return solve_best(inst, opts, compare_leximin);
}

SolveResult solve_leximin_pp(const Instance& inst, const EnumOptions& opts) {
  return solve_best(inst, opts, compare_leximin_pp);
}

SolveResult jf1zero_greedy(const Instance& inst) {
  std::vector<int> owner(inst.m());
  std::vector<Mask> masks(inst.n(), 0);
  std::vector<Rational> utils(inst.n());

  for (int t = 0; t < inst.m(); ++t) {
    const Mask bit = Mask{1} << t;
    std::vector<Rational> with_item(inst.n());
    bool all_pos = true, all_neg = true;
    int zero_agent = -1;
    for (int c = 0; c < inst.n(); ++c) {
      with_item[c] = inst.value(c, masks[c] | bit);
      const int s = (with_item[c] - utils[c]).sign();
      all_pos &= s > 0;
      all_neg &= s < 0;
      if (s == 0 && zero_agent < 0) zero_agent = c;
    }

    int pick;
    if (all_pos) {
      pick = 0;
      for (int c = 1; c < inst.n(); ++c)
        if (utils[c] < utils[pick]) pick = c;
    } else if (all_neg) {
      pick = 0;
      for (int c = 1; c < inst.n(); ++c)
        if (with_item[c] > with_item[pick]) pick = c;
    } else if (zero_agent >= 0) {
      pick = zero_agent;
    } else {
      Error err(Errc::mixed_item_encountered,
                "item '" + inst.label(t) + "' (round " + std::to_string(t) +
                    ") has both strictly positive and strictly negative marginals");
      err.detail_index = t;
      throw err;
    }

    owner[t] = pick;
    masks[pick] |= bit;
    utils[pick] = with_item[pick];
  }

  SolveResult result;
  result.allocation = Allocation(inst.n(), std::move(owner));
  result.key = LexKey::of(utils, masks);
  return result;
}

SearchReport exists_allocation(const Instance& inst, const std::set<PropertyVariant>& required,
                               const EnumOptions& opts) {
  const std::uint64_t total = require_within_cap(inst, opts.cap);
  SearchReport report;
  report.properties.assign(required.begin(), required.end());

  for (AllocationCursor cur(inst, 0, total); !cur.done(); cur.advance()) {
    bool ok = true;
    for (PropertyVariant v : report.properties)
      if (!detail::property_holds(inst, cur.masks(), cur.utilities(), v, opts)) {
        ok = false;
        break;
      }
    if (ok) {
      report.found = cur.allocation();
      report.explored = cur.index() + 1;
      report.exhaustive = false;
      return report;
    }
  }
  report.explored = total;
  report.exhaustive = true;
  return report;
}

namespace {

// Exact maximum-weight assignment of rows (items) to distinct columns
// (agents), rows <= columns. Kuhn-Munkres on negated weights with optional
// potentials standing in for infinity.
std::pair<Rational, std::vector<int>> max_assignment(
    const std::vector<std::vector<Rational>>& weight, int cols) {
  const int rows = static_cast<int>(weight.size());
  if (rows == 0) return {Rational(0), {}};

  std::vector<Rational> pot_row(rows + 1), pot_col(cols + 1);
  std::vector<int> match(cols + 1, 0);  // column -> row (1-based, 0 = free)
  std::vector<int> way(cols + 1, 0);

  for (int i = 1; i <= rows; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<std::optional<Rational>> minv(cols + 1);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      int j1 = 0;
      std::optional<Rational> delta;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const Rational cur = -weight[i0 - 1][j - 1] - pot_row[i0] - pot_col[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          pot_row[match[j]] += *delta;
          pot_col[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(rows, -1);
  for (int j = 1; j <= cols; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  Rational total;
  for (int i = 0; i < rows; ++i) total += weight[i][row_to_col[i]];
  return {total, std::move(row_to_col)};
}

}  // namespace

SolveResult assign_one_each(const Instance& inst) {
  if (!inst.is_additive()) raise(Errc::general_model, "one-each assignment needs additive utilities");
  if (inst.m() > inst.n())
    raise(Errc::too_many_items, "one-each assignment needs m <= n, got m = " +
                                    std::to_string(inst.m()) + ", n = " + std::to_string(inst.n()));

  std::vector<std::vector<Rational>> weight(inst.m(), std::vector<Rational>(inst.n()));
  for (int t = 0; t < inst.m(); ++t)
    for (int a = 0; a < inst.n(); ++a) weight[t][a] = inst.item_value(a, t);

  const Rational optimum = max_assignment(weight, inst.n()).first;

  // Fix items in order, each to the lowest agent that still admits an
  // optimal completion; yields the lexicographically smallest owner vector.
  std::vector<int> owner(inst.m(), -1);
  std::vector<bool> taken(inst.n(), false);
  Rational fixed_weight;
  for (int t = 0; t < inst.m(); ++t) {
    for (int a = 0; a < inst.n(); ++a) {
      if (taken[a]) continue;
      std::vector<std::vector<Rational>> sub;
      std::vector<int> free_agents;
      for (int g = 0; g < inst.n(); ++g)
        if (!taken[g] && g != a) free_agents.push_back(g);
      for (int s = t + 1; s < inst.m(); ++s) {
        std::vector<Rational> row;
        row.reserve(free_agents.size());
        for (int g : free_agents) row.push_back(weight[s][g]);
        sub.push_back(std::move(row));
      }
      const Rational completion =
          sub.empty() ? Rational(0)
                      : max_assignment(sub, static_cast<int>(free_agents.size())).first;
      if (fixed_weight + weight[t][a] + completion == optimum) {
        owner[t] = a;
        taken[a] = true;
        fixed_weight += weight[t][a];
        break;
      }
    }
  }

  SolveResult result;
  result.allocation = Allocation(inst.n(), std::move(owner));
  std::vector<Mask> masks(inst.n());
  std::vector<Rational> utils(inst.n());
  for (int a = 0; a < inst.n(); ++a) {
    masks[a] = result.allocation.bundle_mask(a);
    utils[a] = inst.value(a, masks[a]);
  }
  result.key = LexKey::of(utils, masks);
  return result;
}

}  // namespace fairmanna
