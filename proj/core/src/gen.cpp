#include <algorithm>
#include <map>

#include "fairmanna/paperlab.hpp"
#include "fairmanna/solvers.hpp"

namespace fairmanna::paperlab {

namespace {

// Deterministic cross-platform generator; distribution quality is irrelevant
// here, reproducibility under a seed is what matters.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  int int_in(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }
};

std::vector<std::string> default_labels(int m) {
  std::vector<std::string> labels;
  for (int t = 0; t < m; ++t) labels.push_back("o" + std::to_string(t + 1));
  return labels;
}

std::vector<std::vector<Rational>> sample_matrix(SplitMix64& rng, const GenConfig& cfg) {
  const int n = cfg.n, m = cfg.m, R = cfg.value_range;
  std::vector<std::vector<Rational>> matrix(n, std::vector<Rational>(m));
  switch (cfg.klass) {
    case UtilityClass::goods:
      for (int t = 0; t < m; ++t) {
        bool has_pos = false;
        for (int a = 0; a < n; ++a) {
          int v = rng.int_in(0, R);
          matrix[a][t] = v;
          has_pos |= v > 0;
        }
        if (!has_pos) matrix[rng.below(n)][t] = rng.int_in(1, R);
      }
      break;
    case UtilityClass::bads:
      for (int t = 0; t < m; ++t) {
        bool has_neg = false;
        for (int a = 0; a < n; ++a) {
          int v = rng.int_in(-R, 0);
          matrix[a][t] = v;
          has_neg |= v < 0;
        }
        if (!has_neg) matrix[rng.below(n)][t] = rng.int_in(-R, -1);
      }
      break;
    case UtilityClass::mixed: {
      for (int a = 0; a < n; ++a)
        for (int t = 0; t < m; ++t) matrix[a][t] = rng.int_in(-R, R);
      // Pin one two-sided column so the class never needs resampling.
      const int lover = static_cast<int>(rng.below(n));
      int hater = static_cast<int>(rng.below(n - 1));
      if (hater >= lover) ++hater;
      matrix[lover][0] = rng.int_in(1, R);
      matrix[hater][0] = rng.int_in(-R, -1);
      break;
    }
    case UtilityClass::pure_goods_and_bads:
      for (int t = 0; t < m; ++t) {
        const bool good = rng.below(2) == 0;
        for (int a = 0; a < n; ++a)
          matrix[a][t] = good ? rng.int_in(1, R) : rng.int_in(-R, 0);
      }
      break;
    case UtilityClass::goods_and_bads:
      for (int t = 0; t < m; ++t) {
        const bool good = rng.below(2) == 0;
        for (int a = 0; a < n; ++a)
          matrix[a][t] = good ? rng.int_in(0, R) : rng.int_in(-R, 0);
      }
      break;
  }
  return matrix;
}

// General tables whose marginals keep the sign of the base item value at
// every bundle: each item is everywhere-strictly-good, everywhere-strictly-
// bad, or has an identically zero marginal for the agent, so the problem
// class of the additive base carries over while bundle utilities stop being
// additive. Two constructions alternate:
//  - a strictly increasing integer transform of the base subset sums
//    (non-additive magnitudes, additive bundle ranking), and
//  - scaled base sums plus a bounded per-bundle interaction term confined to
//    the agent's non-zero items (breaks the additive ranking outright).
std::vector<std::vector<Rational>> transform_tables(SplitMix64& rng, const GenConfig& cfg,
                                                    const std::vector<std::vector<Rational>>& base) {
  const std::size_t size = std::size_t{1} << cfg.m;
  std::vector<std::vector<Rational>> tables(cfg.n);
  const bool monotone_transform = rng.below(2) == 0;
  for (int a = 0; a < cfg.n; ++a) {
    std::vector<Rational> sums(size);
    for (Mask mask = 0; mask < size; ++mask) {
      Rational s;
      for (Mask rest = mask; rest != 0; rest &= rest - 1) s += base[a][__builtin_ctzll(rest)];
      sums[mask] = s;
    }
    tables[a].resize(size);
    if (monotone_transform) {
      std::vector<Rational> levels = sums;
      std::sort(levels.begin(), levels.end());
      levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      const auto zero_at = std::lower_bound(levels.begin(), levels.end(), Rational(0)) -
                           levels.begin();
      std::vector<Rational> f(levels.size());
      f[zero_at] = 0;
      for (std::size_t i = zero_at + 1; i < levels.size(); ++i)
        f[i] = f[i - 1] + rng.int_in(1, cfg.value_range);
      for (std::size_t i = zero_at; i-- > 0;) f[i] = f[i + 1] - rng.int_in(1, cfg.value_range);
      for (Mask mask = 0; mask < size; ++mask) {
        const auto at = std::lower_bound(levels.begin(), levels.end(), sums[mask]) -
                        levels.begin();
        tables[a][mask] = f[at];
      }
    } else {
      // u(S) = 4 * sum(S) + interaction(S restricted to non-zero items);
      // |interaction| <= 1 never outweighs a 4-scaled non-zero marginal, and
      // zero-valued items stay outside it, keeping their marginals at zero.
      Mask nonzero = 0;
      for (int t = 0; t < cfg.m; ++t)
        if (!base[a][t].is_zero()) nonzero |= Mask{1} << t;
      std::vector<Rational> interaction(size, Rational(0));
      for (Mask sub = 1; sub < size; ++sub)
        if ((sub & nonzero) == sub && popcount(sub) >= 2)
          interaction[sub] = rng.int_in(-1, 1);
      for (Mask mask = 0; mask < size; ++mask)
        tables[a][mask] = Rational(4) * sums[mask] + interaction[mask & nonzero];
    }
  }
  return tables;
}

std::vector<Rational> random_flat_table(SplitMix64& rng, const GenConfig& cfg) {
  const std::size_t size = std::size_t{1} << cfg.m;
  std::vector<Rational> table(size);
  for (Mask mask = 1; mask < size; ++mask)
    table[mask] = rng.int_in(-cfg.value_range, cfg.value_range);
  return table;
}

bool class_matches(UtilityClass klass, ProblemClass detected) {
  switch (klass) {
    case UtilityClass::mixed: return detected == ProblemClass::WithMixedItems;
    case UtilityClass::pure_goods_and_bads: return detected == ProblemClass::PureGoodsAndBads;
    default: return detected != ProblemClass::WithMixedItems;
  }
}

}  // namespace

Instance gen_random_instance(const GenConfig& cfg) {
  if (cfg.n < 2 || cfg.m < 1 || cfg.value_range < 1)
    raise(Errc::bad_parameters, "generator needs n >= 2, m >= 1, value_range >= 1");
  if (cfg.model == ModelKind::general && cfg.m > 16)
    raise(Errc::bad_parameters, "general tables limited to m <= 16 in the generator");

  SplitMix64 rng(cfg.seed);
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    UtilityModel model;
    if (cfg.model == ModelKind::additive) {
      model = AdditiveModel{sample_matrix(rng, cfg)};
    } else if (cfg.klass == UtilityClass::mixed) {
      GeneralModel gm;
      for (int a = 0; a < cfg.n; ++a) gm.tables.push_back(random_flat_table(rng, cfg));
      model = std::move(gm);
    } else {
      model = GeneralModel{transform_tables(rng, cfg, sample_matrix(rng, cfg))};
    }
    Instance candidate(cfg.n, default_labels(cfg.m), std::move(model));
    if (!class_matches(cfg.klass, detect_problem_class(candidate))) continue;

    if (!cfg.normalise) return candidate;

    int sign = 0;
    bool usable = true;
    for (int a = 0; a < cfg.n && usable; ++a) {
      const int s = candidate.grand_total(a).sign();
      usable = s != 0 && (sign == 0 || s == sign);
      sign = s;
    }
    if (!usable) continue;
    return normalise(candidate, Rational(sign));
  }
  raise(Errc::rejection_cap_exceeded,
        "no class-conformant instance after " + std::to_string(cfg.max_attempts) + " attempts");
}

namespace {

struct SuiteRun {
  SuiteResult result;

  explicit SuiteRun(std::string name) { result.name = std::move(name); }

  void record(bool ok, const std::string& context) {
    ++result.instances;
    if (!ok) {
      ++result.failures;
      if (result.failure_details.size() < 5) result.failure_details.push_back(context);
    }
  }
};

constexpr UtilityClass kAllClasses[] = {UtilityClass::goods, UtilityClass::bads,
                                        UtilityClass::mixed, UtilityClass::pure_goods_and_bads,
                                        UtilityClass::goods_and_bads};
constexpr UtilityClass kNoMixedClasses[] = {UtilityClass::goods, UtilityClass::bads,
                                            UtilityClass::pure_goods_and_bads,
                                            UtilityClass::goods_and_bads};

GenConfig suite_cfg(SplitMix64& rng, std::uint64_t seed, UtilityClass klass, ModelKind model,
                    bool normalise, bool two_agents) {
  GenConfig cfg;
  cfg.model = model;
  cfg.n = (two_agents || model == ModelKind::general) ? 2 : rng.int_in(2, 3);
  cfg.m = model == ModelKind::general ? rng.int_in(2, 4) : rng.int_in(2, 7);
  cfg.klass = klass;
  cfg.value_range = rng.int_in(2, 6);
  cfg.normalise = normalise;
  cfg.seed = seed;
  return cfg;
}

std::string describe(const GenConfig& cfg) {
  return std::string(to_string(cfg.klass)) + "/" +
         (cfg.model == ModelKind::additive ? "additive" : "general") +
         "/n=" + std::to_string(cfg.n) + "/m=" + std::to_string(cfg.m) +
         "/seed=" + std::to_string(cfg.seed);
}

}  // namespace

std::vector<SuiteResult> run_theorem_suites(int per_suite, int chain_pairs,
                                            std::uint64_t seed_base) {
  std::vector<SuiteResult> results;
  const EnumOptions opts;

  {  // leximin solutions are Pareto-optimal, any manna, any utility model
    SuiteRun suite("leximin_is_po");
    SplitMix64 meta(seed_base);
    for (int i = 0; i < per_suite; ++i) {
      const auto klass = kAllClasses[i % 5];
      const auto model = i % 4 == 3 ? ModelKind::general : ModelKind::additive;
      GenConfig cfg = suite_cfg(meta, seed_base + i, klass, model, false, false);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      suite.record(is_po(inst, lex.allocation, opts).pareto_optimal, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // leximin++ is JFX when no item is mixed
    SuiteRun suite("leximinpp_is_jfx_without_mixed_items");
    SplitMix64 meta(seed_base + 1);
    for (int i = 0; i < per_suite; ++i) {
      const auto klass = kNoMixedClasses[i % 4];
      const auto model = i % 4 == 1 ? ModelKind::general : ModelKind::additive;
      GenConfig cfg = suite_cfg(meta, seed_base + 1000 + i, klass, model, false, false);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin_pp(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      suite.record(check_jf(inst, lex.allocation, PropertyVariant::JFX).holds, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // the greedy pass is JF1_0 on every prefix when no item is mixed
    SuiteRun suite("greedy_is_jf1zero_with_prefixes");
    SplitMix64 meta(seed_base + 2);
    for (int i = 0; i < per_suite; ++i) {
      const auto klass = kNoMixedClasses[i % 4];
      const auto model = i % 4 == 2 ? ModelKind::general : ModelKind::additive;
      GenConfig cfg = suite_cfg(meta, seed_base + 2000 + i, klass, model, false, false);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult greedy = jf1zero_greedy(inst);
      implication_audit(inst, greedy.allocation, opts, /*run_po=*/false);
      bool ok = true;
      for (int t = 1; t <= inst.m() && ok; ++t) {
        const Instance prefix = prefix_instance(inst, t);
        const Allocation partial(inst.n(), std::vector<int>(greedy.allocation.owner.begin(),
                                                            greedy.allocation.owner.begin() + t));
        ok = check_jf(prefix, partial, PropertyVariant::JF1_0).holds;
      }
      suite.record(ok, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // two agents, normalised additive, any manna: leximin is EFX and PO
    SuiteRun suite("leximin_is_efx_po_two_agents_normalised");
    SplitMix64 meta(seed_base + 3);
    for (int i = 0; i < per_suite; ++i) {
      GenConfig cfg =
          suite_cfg(meta, seed_base + 3000 + i, kAllClasses[i % 5], ModelKind::additive, true, true);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      const bool ok = check_ef(inst, lex.allocation, PropertyVariant::EFX).holds &&
                      is_po(inst, lex.allocation, opts).pareto_optimal;
      suite.record(ok, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // two agents, normalised additive, no mixed items: leximin++ is JFX and EFX
    SuiteRun suite("leximinpp_is_jfx_efx_two_agents_normalised");
    SplitMix64 meta(seed_base + 4);
    for (int i = 0; i < per_suite; ++i) {
      GenConfig cfg = suite_cfg(meta, seed_base + 4000 + i, kNoMixedClasses[i % 4],
                                ModelKind::additive, true, true);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin_pp(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      const bool ok = check_jf(inst, lex.allocation, PropertyVariant::JFX).holds &&
                      check_ef(inst, lex.allocation, PropertyVariant::EFX).holds;
      suite.record(ok, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // pure goods and bads: leximin is JFX and PO
    SuiteRun suite("leximin_is_jfx_po_pure_goods_and_bads");
    SplitMix64 meta(seed_base + 5);
    for (int i = 0; i < per_suite; ++i) {
      const auto model = i % 3 == 1 ? ModelKind::general : ModelKind::additive;
      GenConfig cfg = suite_cfg(meta, seed_base + 5000 + i, UtilityClass::pure_goods_and_bads,
                                model, false, false);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      const bool ok = check_jf(inst, lex.allocation, PropertyVariant::JFX).holds &&
                      is_po(inst, lex.allocation, opts).pareto_optimal;
      suite.record(ok, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // two agents, normalised additive, pure goods and bads: JFX, EFX and PO
    SuiteRun suite("leximin_is_jfx_efx_po_two_agents_pure");
    SplitMix64 meta(seed_base + 6);
    for (int i = 0; i < per_suite; ++i) {
      GenConfig cfg = suite_cfg(meta, seed_base + 6000 + i, UtilityClass::pure_goods_and_bads,
                                ModelKind::additive, true, true);
      const Instance inst = gen_random_instance(cfg);
      const SolveResult lex = solve_leximin(inst, opts);
      implication_audit(inst, lex.allocation, opts, /*run_po=*/false);
      const bool ok = check_jf(inst, lex.allocation, PropertyVariant::JFX).holds &&
                      check_ef(inst, lex.allocation, PropertyVariant::EFX).holds &&
                      is_po(inst, lex.allocation, opts).pareto_optimal;
      suite.record(ok, describe(cfg));
    }
    results.push_back(suite.result);
  }

  {  // implication chains over random (instance, allocation) pairs
    SuiteRun suite("implication_chains");
    SplitMix64 meta(seed_base + 7);
    for (int i = 0; i < chain_pairs; ++i) {
      const auto klass = kAllClasses[i % 5];
      const auto model = i % 7 == 3 ? ModelKind::general : ModelKind::additive;
      GenConfig cfg = suite_cfg(meta, seed_base + 10'000 + i, klass, model, false, false);
      const Instance inst = gen_random_instance(cfg);
      const std::uint64_t total = require_within_cap(inst, opts.cap);
      const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), meta.below(total));
      bool ok = true;
      std::string detail = describe(cfg);
      try {
        implication_audit(inst, alloc, opts, /*run_po=*/i % 20 == 0);
      } catch (const Error& err) {
        ok = false;
        detail += std::string(": ") + err.what();
      }
      suite.record(ok, detail);
    }
    results.push_back(suite.result);
  }

  return results;
}

}  // namespace fairmanna::paperlab
