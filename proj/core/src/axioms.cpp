#include "fairmanna/axioms.hpp"

#include <atomic>
#include <thread>

namespace fairmanna {

const char* to_string(PropertyVariant v) {
  switch (v) {
    case PropertyVariant::JF1: return "JF1";
    case PropertyVariant::JF1_0: return "JF1_0";
    case PropertyVariant::JFX: return "JFX";
    case PropertyVariant::JFX_0: return "JFX_0";
    case PropertyVariant::EF1: return "EF1";
    case PropertyVariant::EFX: return "EFX";
    case PropertyVariant::EFX_0: return "EFX_0";
    case PropertyVariant::PO: return "PO";
    case PropertyVariant::EQUITABLE: return "EQUITABLE";
  }
  return "?";
}

PropertyVariant parse_property(const std::string& name) {
  for (PropertyVariant v :
       {PropertyVariant::JF1, PropertyVariant::JF1_0, PropertyVariant::JFX, PropertyVariant::JFX_0,
        PropertyVariant::EF1, PropertyVariant::EFX, PropertyVariant::EFX_0, PropertyVariant::PO,
        PropertyVariant::EQUITABLE})
    if (name == to_string(v)) return v;
  raise(Errc::parse_error, "unknown property '" + name + "'");
}

bool is_jf_variant(PropertyVariant v) {
  return v == PropertyVariant::JF1 || v == PropertyVariant::JF1_0 || v == PropertyVariant::JFX ||
         v == PropertyVariant::JFX_0;
}

bool is_ef_variant(PropertyVariant v) {
  return v == PropertyVariant::EF1 || v == PropertyVariant::EFX || v == PropertyVariant::EFX_0;
}

bool is_jealous(const Instance& inst, const Allocation& alloc, int a, int b) {
  if (a == b) raise(Errc::same_agent, "jealousy needs two distinct agents");
  require_valid(inst, alloc);
  return inst.value(a, alloc.bundle_mask(a)) < inst.value(b, alloc.bundle_mask(b));
}

namespace detail {

// Marginal of removing item o (already in `mask`) for `agent`.
inline Rational drop_delta(const Instance& inst, int agent, Mask mask, int o) {
  const Mask bit = Mask{1} << o;
  if (inst.is_additive()) return inst.item_value(agent, o);
  return inst.value(agent, mask) - inst.value(agent, mask & ~bit);
}

bool jf_pair_holds(const Instance& inst, const std::vector<Mask>& masks,
                   const std::vector<Rational>& utils, int a, int b, PropertyVariant variant) {
  const Rational& ua = utils[a];
  const Rational& ub = utils[b];
  const bool exists_style = variant == PropertyVariant::JF1 || variant == PropertyVariant::JF1_0;
  const bool weak = variant == PropertyVariant::JFX_0;

  if (exists_style) {
    if (ua >= ub) return true;
    for (Mask rest = masks[a]; rest != 0; rest &= rest - 1) {
      const int o = __builtin_ctzll(rest);
      if (variant == PropertyVariant::JF1 && drop_delta(inst, a, masks[a], o).sign() >= 0)
        continue;  // witness must be a strict bad for a
      if (ua >= inst.value(b, masks[b] | (Mask{1} << o))) return true;
    }
    for (Mask rest = masks[b]; rest != 0; rest &= rest - 1) {
      const int o = __builtin_ctzll(rest);
      if (variant == PropertyVariant::JF1 && drop_delta(inst, b, masks[b], o).sign() <= 0)
        continue;  // witness must be a strict good for b
      if (ua >= inst.value(b, masks[b] & ~(Mask{1} << o))) return true;
    }
    return false;
  }

  // JFX / JFX_0: every qualifying item must restore jealousy-freeness.
  for (Mask rest = masks[a]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = drop_delta(inst, a, masks[a], o).sign();
    const bool qualifies = weak ? s <= 0 : s < 0;
    if (qualifies && ua < inst.value(b, masks[b] | (Mask{1} << o))) return false;
  }
  for (Mask rest = masks[b]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = drop_delta(inst, b, masks[b], o).sign();
    const bool qualifies = weak ? s >= 0 : s > 0;
    if (qualifies && ua < inst.value(b, masks[b] & ~(Mask{1} << o))) return false;
  }
  return true;
}

bool ef_pair_holds(const Instance& inst, const std::vector<Mask>& masks,
                   const std::vector<Rational>& utils, int a, int b, PropertyVariant variant) {
  const Rational& own = utils[a];
  const Rational other = inst.value(a, masks[b]);

  if (variant == PropertyVariant::EF1) {
    if (own >= other) return true;
    for (Mask rest = masks[a] | masks[b]; rest != 0; rest &= rest - 1) {
      const Mask bit = Mask{1} << __builtin_ctzll(rest);
      if (inst.value(a, masks[a] & ~bit) >= inst.value(a, masks[b] & ~bit)) return true;
    }
    return false;
  }

  const bool weak = variant == PropertyVariant::EFX_0;
  for (Mask rest = masks[a]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = drop_delta(inst, a, masks[a], o).sign();
    const bool qualifies = weak ? s <= 0 : s < 0;
    if (qualifies && inst.value(a, masks[a] & ~(Mask{1} << o)) < other) return false;
  }
  for (Mask rest = masks[b]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const Mask bit = Mask{1} << o;
    // Judged in a's utility: marginal of o inside b's bundle, seen by a.
    const Rational delta = inst.value(a, masks[b]) - inst.value(a, masks[b] & ~bit);
    const bool qualifies = weak ? delta.sign() >= 0 : delta.sign() > 0;
    if (qualifies && own < inst.value(a, masks[b] & ~bit)) return false;
  }
  return true;
}

bool property_holds(const Instance& inst, const std::vector<Mask>& masks,
                    const std::vector<Rational>& utils, PropertyVariant variant,
                    const EnumOptions& opts) {
  if (variant == PropertyVariant::PO) {
    Allocation alloc(inst.n(), [&] {
      std::vector<int> owner(inst.m(), 0);
      for (int a = 0; a < inst.n(); ++a)
        for (Mask rest = masks[a]; rest != 0; rest &= rest - 1) owner[__builtin_ctzll(rest)] = a;
      return owner;
    }());
    return is_po(inst, alloc, opts).pareto_optimal;
  }
  if (variant == PropertyVariant::EQUITABLE) {
    for (int a = 1; a < inst.n(); ++a)
      if (utils[a] != utils[0]) return false;
    return true;
  }
  const bool jf = is_jf_variant(variant);
  for (int a = 0; a < inst.n(); ++a)
    for (int b = 0; b < inst.n(); ++b) {
      if (a == b) continue;
      if (jf ? !jf_pair_holds(inst, masks, utils, a, b, variant)
             : !ef_pair_holds(inst, masks, utils, a, b, variant))
        return false;
    }
  return true;
}

}  // namespace detail

namespace {

struct Bundles {
  std::vector<Mask> masks;
  std::vector<Rational> utils;
};

Bundles bundles_of(const Instance& inst, const Allocation& alloc) {
  require_valid(inst, alloc);
  Bundles b;
  b.masks.resize(inst.n());
  b.utils.resize(inst.n());
  for (int a = 0; a < inst.n(); ++a) {
    b.masks[a] = alloc.bundle_mask(a);
    b.utils[a] = inst.value(a, b.masks[a]);
  }
  return b;
}

std::string bundle_expr(const Instance& inst, int agent, char op, int item) {
  std::string s = "u" + std::to_string(agent) + "(A" + std::to_string(agent);
  s += op;
  s += "{" + inst.label(item) + "})";
  return s;
}

void add_jf_violations(const Instance& inst, const Bundles& bd, int a, int b,
                       PropertyVariant variant, std::vector<Violation>& out) {
  const Rational& ua = bd.utils[a];
  const bool exists_style = variant == PropertyVariant::JF1 || variant == PropertyVariant::JF1_0;
  if (exists_style) {
    // Failing exists-pair: the jealousy itself is the re-checkable inequality.
    out.push_back({variant, a, b, std::nullopt, "jealousy",
                   "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + ua.str() + " < " +
                       bd.utils[b].str() + "=u" + std::to_string(b) + "(A" + std::to_string(b) +
                       "); no single-item transfer restores jealousy-freeness"});
    return;
  }
  const bool weak = variant == PropertyVariant::JFX_0;
  for (Mask rest = bd.masks[a]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = detail::drop_delta(inst, a, bd.masks[a], o).sign();
    if (!(weak ? s <= 0 : s < 0)) continue;
    const Rational after = inst.value(b, bd.masks[b] | (Mask{1} << o));
    if (ua < after)
      out.push_back({variant, a, b, inst.label(o), "own-item-added",
                     "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + ua.str() + " < " +
                         after.str() + "=" + bundle_expr(inst, b, '+', o)});
  }
  for (Mask rest = bd.masks[b]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = detail::drop_delta(inst, b, bd.masks[b], o).sign();
    if (!(weak ? s >= 0 : s > 0)) continue;
    const Rational after = inst.value(b, bd.masks[b] & ~(Mask{1} << o));
    if (ua < after)
      out.push_back({variant, a, b, inst.label(o), "other-item-removed",
                     "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + ua.str() + " < " +
                         after.str() + "=" + bundle_expr(inst, b, '-', o)});
  }
}

void add_ef_violations(const Instance& inst, const Bundles& bd, int a, int b,
                       PropertyVariant variant, std::vector<Violation>& out) {
  const Rational& own = bd.utils[a];
  const Rational other = inst.value(a, bd.masks[b]);
  if (variant == PropertyVariant::EF1) {
    out.push_back({variant, a, b, std::nullopt, "envy",
                   "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + own.str() + " < " +
                       other.str() + "=u" + std::to_string(a) + "(A" + std::to_string(b) +
                       "); no single-item removal restores envy-freeness"});
    return;
  }
  const bool weak = variant == PropertyVariant::EFX_0;
  for (Mask rest = bd.masks[a]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const int s = detail::drop_delta(inst, a, bd.masks[a], o).sign();
    if (!(weak ? s <= 0 : s < 0)) continue;
    const Rational reduced = inst.value(a, bd.masks[a] & ~(Mask{1} << o));
    if (reduced < other)
      out.push_back({variant, a, b, inst.label(o), "own-item-removed",
                     bundle_expr(inst, a, '-', o) + "=" + reduced.str() + " < " + other.str() +
                         "=u" + std::to_string(a) + "(A" + std::to_string(b) + ")"});
  }
  for (Mask rest = bd.masks[b]; rest != 0; rest &= rest - 1) {
    const int o = __builtin_ctzll(rest);
    const Mask bit = Mask{1} << o;
    const Rational delta = other - inst.value(a, bd.masks[b] & ~bit);
    if (!(weak ? delta.sign() >= 0 : delta.sign() > 0)) continue;
    const Rational reduced = inst.value(a, bd.masks[b] & ~bit);
    if (own < reduced)
      out.push_back({variant, a, b, inst.label(o), "other-item-removed",
                     "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + own.str() +
                         " < " + reduced.str() + "=" +
                         ("u" + std::to_string(a) + "(A" + std::to_string(b) + "-{" +
                          inst.label(o) + "})")});
  }
}

}  // namespace

Verdict check_jf(const Instance& inst, const Allocation& alloc, PropertyVariant variant) {
  if (!is_jf_variant(variant)) raise(Errc::bad_parameters, "not a jealousy-freeness variant");
  const Bundles bd = bundles_of(inst, alloc);
  Verdict verdict{variant, true, {}, std::nullopt};
  for (int a = 0; a < inst.n(); ++a)
    for (int b = 0; b < inst.n(); ++b) {
      if (a == b) continue;
      if (!detail::jf_pair_holds(inst, bd.masks, bd.utils, a, b, variant)) {
        verdict.holds = false;
        add_jf_violations(inst, bd, a, b, variant, verdict.violations);
      }
    }
  return verdict;
}

Verdict check_ef(const Instance& inst, const Allocation& alloc, PropertyVariant variant) {
  if (!is_ef_variant(variant)) raise(Errc::bad_parameters, "not an envy-freeness variant");
  const Bundles bd = bundles_of(inst, alloc);
  Verdict verdict{variant, true, {}, std::nullopt};
  for (int a = 0; a < inst.n(); ++a)
    for (int b = 0; b < inst.n(); ++b) {
      if (a == b) continue;
      if (!detail::ef_pair_holds(inst, bd.masks, bd.utils, a, b, variant)) {
        verdict.holds = false;
        add_ef_violations(inst, bd, a, b, variant, verdict.violations);
      }
    }
  return verdict;
}

PoResult is_po(const Instance& inst, const Allocation& alloc, const EnumOptions& opts) {
  const Bundles bd = bundles_of(inst, alloc);
  const std::uint64_t total = require_within_cap(inst, opts.cap);
  const int workers = plan_workers(opts.workers, total);

  auto scan = [&](std::uint64_t lo, std::uint64_t hi) -> std::uint64_t {
    for (AllocationCursor cur(inst, lo, hi); !cur.done(); cur.advance()) {
      bool weakly_better = true, strictly = false;
      for (int a = 0; a < inst.n() && weakly_better; ++a) {
        auto order = cur.utilities()[a] <=> bd.utils[a];
        weakly_better = order >= 0;
        strictly |= order > 0;
      }
      if (weakly_better && strictly) return cur.index();
    }
    return total;
  };

  std::uint64_t best = total;
  if (workers <= 1) {
    best = scan(0, total);
  } else {
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::uint64_t> found(workers, total);
    std::atomic<std::uint64_t> bound{total};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        const std::uint64_t lo = std::min<std::uint64_t>(total, w * chunk);
        const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        if (lo >= bound.load(std::memory_order_relaxed)) return;
        found[w] = scan(lo, hi);
        std::uint64_t prev = bound.load(std::memory_order_relaxed);
        while (found[w] < prev && !bound.compare_exchange_weak(prev, found[w])) {
        }
      });
    for (auto& t : pool) t.join();
    for (std::uint64_t f : found) best = std::min(best, f);
  }

  PoResult result;
  result.explored = total;
  result.pareto_optimal = best == total;
  if (!result.pareto_optimal)
    result.improvement = Allocation::from_index(inst.n(), inst.m(), best);
  return result;
}

bool is_equitable(const Instance& inst, const Allocation& alloc) {
  const Bundles bd = bundles_of(inst, alloc);
  for (int a = 1; a < inst.n(); ++a)
    if (bd.utils[a] != bd.utils[0]) return false;
  return true;
}

Verdict check_property(const Instance& inst, const Allocation& alloc, PropertyVariant variant,
                       const EnumOptions& opts) {
  if (is_jf_variant(variant)) return check_jf(inst, alloc, variant);
  if (is_ef_variant(variant)) return check_ef(inst, alloc, variant);
  if (variant == PropertyVariant::PO) {
    PoResult po = is_po(inst, alloc, opts);
    Verdict verdict{variant, po.pareto_optimal, {}, po.improvement};
    if (!po.pareto_optimal) {
      std::string detail = "Pareto-improved by allocation of index " +
                           std::to_string(po.improvement->to_index());
      verdict.violations.push_back({variant, -1, -1, std::nullopt, "pareto-improvement", detail});
    }
    return verdict;
  }
  // EQUITABLE
  const Bundles bd = bundles_of(inst, alloc);
  Verdict verdict{variant, true, {}, std::nullopt};
  for (int a = 0; a < inst.n(); ++a)
    for (int b = a + 1; b < inst.n(); ++b)
      if (bd.utils[a] != bd.utils[b]) {
        verdict.holds = false;
        verdict.violations.push_back(
            {variant, a, b, std::nullopt, "unequal-utility",
             "u" + std::to_string(a) + "(A" + std::to_string(a) + ")=" + bd.utils[a].str() +
                 " != " + bd.utils[b].str() + "=u" + std::to_string(b) + "(A" + std::to_string(b) +
                 ")"});
      }
  return verdict;
}

}  // namespace fairmanna
