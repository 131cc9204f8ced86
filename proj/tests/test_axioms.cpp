#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fairmanna/io.hpp"
#include "fairmanna/solvers.hpp"
#include "helpers.hpp"

using namespace fairmanna;
using namespace testutil;
namespace pl = fairmanna::paperlab;

TEST_CASE("pairwise jealousy") {
  const Instance e2 = pl::fixture("example2").instance;
  const Allocation a = named_alloc(e2, {{"a", "c"}, {"b"}});
  CHECK(is_jealous(e2, a, 0, 1));   // -4 < -2
  CHECK(!is_jealous(e2, a, 1, 0));  // never both directions
  CHECK_THROWS_AS(is_jealous(e2, a, 1, 1), Error);

  const Instance p3 = pl::fixture("prop3").instance;
  const Allocation lex = named_alloc(p3, {{"a", "b", "d"}, {"c"}});
  CHECK(is_jealous(p3, lex, 1, 0));  // 0 < 2
}

TEST_CASE("jealousy-freeness variants on the identical-bads fixture") {
  const Instance e2 = pl::fixture("example2").instance;
  const Allocation a = named_alloc(e2, {{"a", "c"}, {"b"}});
  CHECK(check_jf(e2, a, PropertyVariant::JF1).holds);
  CHECK(check_jf(e2, a, PropertyVariant::JF1_0).holds);
  CHECK(!check_jf(e2, a, PropertyVariant::JFX).holds);
  CHECK(!check_jf(e2, a, PropertyVariant::JFX_0).holds);

  // the JFX failure is exactly the dump of item a onto agent 1: -4 < -3
  const Verdict jfx = check_jf(e2, a, PropertyVariant::JFX);
  REQUIRE(jfx.violations.size() == 1);
  CHECK(jfx.violations[0].agent_a == 0);
  CHECK(jfx.violations[0].agent_b == 1);
  CHECK(jfx.violations[0].witness_item == "a");
  CHECK(jfx.violations[0].clause == "own-item-added");
}

TEST_CASE("equal symmetric split satisfies all four variants") {
  const Instance inst = make_additive({"a", "b"}, {{3, 3}, {3, 3}});
  const Allocation a = named_alloc(inst, {{"a"}, {"b"}});
  for (auto v : {PropertyVariant::JF1, PropertyVariant::JF1_0, PropertyVariant::JFX,
                 PropertyVariant::JFX_0})
    CHECK(check_jf(inst, a, v).holds);
}

TEST_CASE("all bads to the low-total agent is JF1") {
  const Instance p5 = pl::fixture("prop5").instance;
  const Allocation a = named_alloc(p5, {{"a", "b"}, {}});
  CHECK(check_jf(p5, a, PropertyVariant::JF1).holds);  // -2 >= u_1({o}) = -3
}

TEST_CASE("weak qualifiers catch zero-marginal items") {
  const Instance p2 = pl::fixture("prop2").instance;

  const Allocation a = named_alloc(p2, {{"a", "b"}, {"c"}});
  const Verdict jfx0_a = check_jf(p2, a, PropertyVariant::JFX_0);
  CHECK(!jfx0_a.holds);
  REQUIRE(jfx0_a.violations.size() == 1);  // u1(A1)=-1 < 1=u0(A0+{c})
  CHECK(jfx0_a.violations[0].agent_a == 1);
  CHECK(jfx0_a.violations[0].agent_b == 0);
  CHECK(jfx0_a.violations[0].witness_item == "c");
  CHECK(jfx0_a.violations[0].clause == "own-item-added");
  CHECK(jfx0_a.violations[0].detail.find("-1 < 1") != std::string::npos);

  const Allocation b = named_alloc(p2, {{"a", "c"}, {"b"}});
  const Verdict jfx0_b = check_jf(p2, b, PropertyVariant::JFX_0);
  CHECK(!jfx0_b.holds);
  // both documented failures: dropping c from agent 0 (0 < 2) and dumping b
  // onto agent 0 (0 < 1); JFX sees neither since both marginals are zero
  REQUIRE(jfx0_b.violations.size() == 2);
  CHECK(check_jf(p2, b, PropertyVariant::JFX).holds);
}

TEST_CASE("envy-freeness variants") {
  const Instance p2 = pl::fixture("prop2").instance;

  const Allocation a = named_alloc(p2, {{"a", "b"}, {"c"}});
  const Verdict efx0 = check_ef(p2, a, PropertyVariant::EFX_0);
  CHECK(!efx0.holds);
  bool documented = false;  // u1(A1-{c})=0 < 2=u1(A0)
  for (const auto& v : efx0.violations)
    documented |= v.agent_a == 1 && v.witness_item == "c" && v.clause == "own-item-removed";
  CHECK(documented);

  // everything to agent 0: EFX holds but the zero-marginal removal of b
  // breaks EFX_0 (0 < 1 = u1(A0 - {b}))
  const Allocation d = named_alloc(p2, {{"a", "b", "c"}, {}});
  CHECK(check_ef(p2, d, PropertyVariant::EFX).holds);
  const Verdict efx0_d = check_ef(p2, d, PropertyVariant::EFX_0);
  CHECK(!efx0_d.holds);
  REQUIRE(efx0_d.violations.size() == 1);
  CHECK(efx0_d.violations[0].witness_item == "b");
  CHECK(efx0_d.violations[0].clause == "other-item-removed");
}

namespace {

// Straight-from-the-definition EFX evaluation, kept independent of check_ef:
// plain loops over explicit item vectors, no masks, no shared helpers.
bool efx_oracle(const Instance& inst, const std::vector<std::vector<int>>& bundles) {
  for (int a = 0; a < inst.n(); ++a)
    for (int b = 0; b < inst.n(); ++b) {
      if (a == b) continue;
      auto util = [&](int agent, std::vector<int> items) {
        Rational sum;
        for (int o : items) sum += inst.item_value(agent, o);
        return sum;
      };
      auto minus = [](std::vector<int> items, int o) {
        items.erase(std::remove(items.begin(), items.end(), o), items.end());
        return items;
      };
      const Rational own = util(a, bundles[a]);
      const Rational other = util(a, bundles[b]);
      for (int o : bundles[a])
        if (own < util(a, minus(bundles[a], o)) && util(a, minus(bundles[a], o)) < other)
          return false;
      for (int o : bundles[b])
        if (other > util(a, minus(bundles[b], o)) && own < util(a, minus(bundles[b], o)))
          return false;
    }
  return true;
}

}  // namespace

TEST_CASE("equal-utility split of identical bads is EFX") {
  const Instance e2 = pl::fixture("example2").instance;
  // independent oracle first: ({a,b},{c}) leaves both agents at -3 for both bundles
  CHECK(efx_oracle(e2, {{0, 1}, {2}}));
  const Allocation b = named_alloc(e2, {{"a", "b"}, {"c"}});
  CHECK(check_ef(e2, b, PropertyVariant::EFX).holds);
}

TEST_CASE("no envy implies every envy variant") {
  const Instance inst = make_additive({"a", "b"}, {{5, 1}, {1, 5}});
  const Allocation a = named_alloc(inst, {{"a"}, {"b"}});
  for (auto v : {PropertyVariant::EF1, PropertyVariant::EFX, PropertyVariant::EFX_0})
    CHECK(check_ef(inst, a, v).holds);
}

namespace {

// Brute-force Pareto oracle: try every allocation by digits.
std::optional<std::uint64_t> po_oracle_improver(const Instance& inst, const Allocation& alloc) {
  std::vector<Rational> base(inst.n());
  for (int a = 0; a < inst.n(); ++a) base[a] = inst.value(a, alloc.bundle_mask(a));
  std::uint64_t total = 1;
  for (int t = 0; t < inst.m(); ++t) total *= inst.n();
  for (std::uint64_t index = 0; index < total; ++index) {
    const Allocation cand = Allocation::from_index(inst.n(), inst.m(), index);
    bool weak = true, strict = false;
    for (int a = 0; a < inst.n(); ++a) {
      const Rational u = inst.value(a, cand.bundle_mask(a));
      if (u < base[a]) weak = false;
      if (u > base[a]) strict = true;
    }
    if (weak && strict) return index;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("pareto-optimality with minimum-index witness") {
  const Instance p3 = pl::fixture("prop3").instance;
  const Allocation best = named_alloc(p3, {{"a", "b", "d"}, {"c"}});
  CHECK(!po_oracle_improver(p3, best).has_value());
  CHECK(is_po(p3, best).pareto_optimal);

  const Allocation hog = named_alloc(p3, {{"a", "b", "c", "d"}, {}});
  const auto oracle = po_oracle_improver(p3, hog);
  REQUIRE(oracle.has_value());
  CHECK(*oracle == 4);  // ({a,b,d},{c}) is the first improver in index order
  const PoResult po = is_po(p3, hog);
  CHECK(!po.pareto_optimal);
  REQUIRE(po.improvement.has_value());
  CHECK(*po.improvement == best);
  CHECK(po.improvement->to_index() == 4);

  const Instance single = make_additive({"o"}, {{1}, {0}});
  CHECK(is_po(single, named_alloc(single, {{"o"}, {}})).pareto_optimal);
}

TEST_CASE("pareto witness is worker-count independent") {
  const Instance p3 = pl::fixture("prop3").instance;
  const Allocation hog = named_alloc(p3, {{"a", "b", "c", "d"}, {}});
  EnumOptions one, many;
  one.workers = 1;
  many.workers = 5;
  CHECK(is_po(p3, hog, one).improvement == is_po(p3, hog, many).improvement);

  pl::GenConfig cfg;
  cfg.n = 3;
  cfg.m = 5;
  cfg.klass = pl::UtilityClass::mixed;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = seed;
    const Instance inst = pl::gen_random_instance(cfg);
    const Allocation alloc = Allocation::from_index(3, 5, seed * 41 % 243);
    const PoResult a = is_po(inst, alloc, one);
    const PoResult b = is_po(inst, alloc, many);
    CHECK(a.pareto_optimal == b.pareto_optimal);
    CHECK(a.improvement == b.improvement);
  }
}

TEST_CASE("equitability") {
  const Instance e2 = pl::fixture("example2").instance;
  CHECK(is_equitable(e2, named_alloc(e2, {{"a", "b"}, {"c"}})));    // -3 = -3
  CHECK(!is_equitable(e2, named_alloc(e2, {{"a", "c"}, {"b"}})));   // -4 != -2
  const Instance zeros = make_additive({"a", "b"}, {{0, 0}, {0, 0}});
  CHECK(is_equitable(zeros, named_alloc(zeros, {{"a", "b"}, {}})));
}

TEST_CASE("exists-witness qualifiers make JF1 stronger than JF1_0") {
  // On the two-mixed-items fixture, ({a,b},{c}) lets agent 1 dump its
  // zero-valued item c onto agent 0 (u0 drops 2 -> -2), which JF1_0 accepts;
  // JF1 demands a strictly-bad witness and fails. The exists-style "up to
  // any item" variant is therefore the weaker property.
  const Instance p1 = pl::fixture("prop1").instance;
  const Allocation a = named_alloc(p1, {{"a", "b"}, {"c"}});
  CHECK(check_jf(p1, a, PropertyVariant::JF1_0).holds);
  CHECK(!check_jf(p1, a, PropertyVariant::JF1).holds);
}

TEST_CASE("equitable allocations and the universal variants") {
  // JF1 / JF1_0 follow from equitability outright. JFX does not once a mixed
  // item sits in a bundle, and JFX_0 needs pure structure on top.
  const Instance mixed = make_additive({"a", "b"}, {{1, -1}, {1, 1}});
  const Allocation all0 = named_alloc(mixed, {{"a", "b"}, {}});
  REQUIRE(is_equitable(mixed, all0));  // 0 = 0
  CHECK(check_jf(mixed, all0, PropertyVariant::JF1).holds);
  CHECK(check_jf(mixed, all0, PropertyVariant::JF1_0).holds);
  CHECK(!check_jf(mixed, all0, PropertyVariant::JFX).holds);

  const Instance lop = make_additive({"o"}, {{0}, {1}});
  const Allocation own = named_alloc(lop, {{"o"}, {}});
  REQUIRE(is_equitable(lop, own));
  CHECK(check_jf(lop, own, PropertyVariant::JFX).holds);
  CHECK(!check_jf(lop, own, PropertyVariant::JFX_0).holds);

  // property form over random instances
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    pl::GenConfig cfg;
    cfg.n = 2 + seed % 2;
    cfg.m = 2 + seed % 4;
    cfg.klass = static_cast<pl::UtilityClass>(seed % 5);
    cfg.seed = 9000 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    const ProblemClass klass = detect_problem_class(inst);
    std::uint64_t total = 1;
    for (int t = 0; t < inst.m(); ++t) total *= inst.n();
    for (std::uint64_t index = seed % 7; index < total; index += 7) {
      const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), index);
      if (!is_equitable(inst, alloc)) continue;
      CHECK(check_jf(inst, alloc, PropertyVariant::JF1).holds);
      CHECK(check_jf(inst, alloc, PropertyVariant::JF1_0).holds);
      if (klass != ProblemClass::WithMixedItems)
        CHECK(check_jf(inst, alloc, PropertyVariant::JFX).holds);
      if (klass == ProblemClass::PureGoodsAndBads)
        CHECK(check_jf(inst, alloc, PropertyVariant::JFX_0).holds);
    }
  }
}

namespace {

Rational util_of(const Instance& inst, int agent, Mask mask) { return inst.value(agent, mask); }

// Re-evaluates a reported violation from its structured fields.
bool violation_reevaluates(const Instance& inst, const Allocation& alloc, const Violation& v) {
  const Mask bit = v.witness_item ? Mask{1} << *inst.item_index(*v.witness_item) : 0;
  const Mask own = v.agent_a >= 0 ? alloc.bundle_mask(v.agent_a) : 0;
  const Mask other = v.agent_b >= 0 ? alloc.bundle_mask(v.agent_b) : 0;
  if (v.clause == "jealousy")
    return util_of(inst, v.agent_a, own) < util_of(inst, v.agent_b, other);
  if (v.clause == "envy")
    return util_of(inst, v.agent_a, own) < util_of(inst, v.agent_a, other);
  if (v.clause == "own-item-added")
    return util_of(inst, v.agent_a, own) < util_of(inst, v.agent_b, other | bit);
  if (v.clause == "other-item-removed" && is_jf_variant(v.property))
    return util_of(inst, v.agent_a, own) < util_of(inst, v.agent_b, other & ~bit);
  if (v.clause == "own-item-removed")
    return util_of(inst, v.agent_a, own & ~bit) < util_of(inst, v.agent_a, other);
  if (v.clause == "other-item-removed")
    return util_of(inst, v.agent_a, own) < util_of(inst, v.agent_a, other & ~bit);
  if (v.clause == "unequal-utility")
    return util_of(inst, v.agent_a, own) != util_of(inst, v.agent_b, other);
  return false;
}

}  // namespace

TEST_CASE("every violation re-evaluates to a genuine strict inequality") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    pl::GenConfig cfg;
    cfg.n = 2 + seed % 2;
    cfg.m = 2 + seed % 4;
    cfg.klass = static_cast<pl::UtilityClass>(seed % 5);
    cfg.model = seed % 3 == 0 ? pl::ModelKind::general : pl::ModelKind::additive;
    if (cfg.model == pl::ModelKind::general) cfg.n = 2, cfg.m = 3;
    cfg.seed = 31000 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    std::uint64_t total = 1;
    for (int t = 0; t < inst.m(); ++t) total *= inst.n();
    const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), (seed * 131) % total);
    for (auto v : {PropertyVariant::JF1, PropertyVariant::JF1_0, PropertyVariant::JFX,
                   PropertyVariant::JFX_0, PropertyVariant::EF1, PropertyVariant::EFX,
                   PropertyVariant::EFX_0, PropertyVariant::EQUITABLE}) {
      const Verdict verdict = check_property(inst, alloc, v);
      if (verdict.holds) {
        CHECK(verdict.violations.empty());
        continue;
      }
      REQUIRE(!verdict.violations.empty());
      for (const Violation& violation : verdict.violations) {
        CHECK(violation_reevaluates(inst, alloc, violation));
        ++checked;
      }
    }
  }
  CHECK(checked > 200);
}

namespace {

struct Permuted {
  Instance instance;
  Allocation allocation;
};

Permuted permute(const Instance& inst, const Allocation& alloc,
                 const std::vector<int>& item_perm, const std::vector<int>& agent_perm) {
  // item_perm[t] = new position of old item t; agent_perm[a] = new agent id.
  std::vector<std::string> labels(inst.m());
  for (int t = 0; t < inst.m(); ++t) labels[item_perm[t]] = inst.label(t);
  std::vector<int> owner(inst.m());
  for (int t = 0; t < inst.m(); ++t) owner[item_perm[t]] = agent_perm[alloc.owner[t]];

  UtilityModel model;
  if (inst.is_additive()) {
    std::vector<std::vector<Rational>> matrix(inst.n(), std::vector<Rational>(inst.m()));
    for (int a = 0; a < inst.n(); ++a)
      for (int t = 0; t < inst.m(); ++t)
        matrix[agent_perm[a]][item_perm[t]] = inst.item_value(a, t);
    model = AdditiveModel{matrix};
  } else {
    const std::size_t size = std::size_t{1} << inst.m();
    std::vector<std::vector<Rational>> tables(inst.n(), std::vector<Rational>(size));
    for (int a = 0; a < inst.n(); ++a)
      for (Mask mask = 0; mask < size; ++mask) {
        Mask mapped = 0;
        for (Mask rest = mask; rest != 0; rest &= rest - 1)
          mapped |= Mask{1} << item_perm[__builtin_ctzll(rest)];
        tables[agent_perm[a]][mapped] = inst.general().tables[a][mask];
      }
    model = GeneralModel{tables};
  }
  return {Instance(inst.n(), labels, std::move(model)), Allocation(inst.n(), owner)};
}

}  // namespace

TEST_CASE("verdicts are invariant under item and agent permutations") {
  const std::vector<std::vector<int>> item_perms = {{2, 0, 1, 3}, {3, 2, 1, 0}, {1, 3, 0, 2}};
  const std::vector<std::vector<int>> agent_perms = {{1, 0}, {0, 1}};
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    pl::GenConfig cfg;
    cfg.n = 2;
    cfg.m = 4;
    cfg.klass = static_cast<pl::UtilityClass>(seed % 5);
    cfg.model = seed % 3 == 2 ? pl::ModelKind::general : pl::ModelKind::additive;
    cfg.seed = 5100 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    const Allocation alloc = Allocation::from_index(2, 4, (seed * 7) % 16);
    const auto& ip = item_perms[seed % item_perms.size()];
    const auto& ap = agent_perms[seed % agent_perms.size()];
    const Permuted p = permute(inst, alloc, ip, ap);
    for (auto v : {PropertyVariant::JF1, PropertyVariant::JF1_0, PropertyVariant::JFX,
                   PropertyVariant::JFX_0, PropertyVariant::EF1, PropertyVariant::EFX,
                   PropertyVariant::EFX_0, PropertyVariant::PO, PropertyVariant::EQUITABLE})
      CHECK(check_property(inst, alloc, v).holds ==
            check_property(p.instance, p.allocation, v).holds);
  }
}

TEST_CASE("envy verdicts are scale-invariant per agent") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    pl::GenConfig cfg;
    cfg.n = 2 + seed % 2;
    cfg.m = 3 + seed % 3;
    cfg.klass = static_cast<pl::UtilityClass>(seed % 5);
    cfg.seed = 8800 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    auto matrix = inst.additive().matrix;
    const int scaled_agent = seed % inst.n();
    for (auto& v : matrix[scaled_agent]) v *= Rational(3, 2);
    const Instance scaled = Instance(inst.n(), inst.items(), AdditiveModel{matrix});
    std::uint64_t total = 1;
    for (int t = 0; t < inst.m(); ++t) total *= inst.n();
    const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), (seed * 101) % total);
    for (auto v : {PropertyVariant::EF1, PropertyVariant::EFX, PropertyVariant::EFX_0})
      CHECK(check_ef(inst, alloc, v).holds == check_ef(scaled, alloc, v).holds);
  }
}

TEST_CASE("property name round-trip") {
  for (auto v : {PropertyVariant::JF1, PropertyVariant::JF1_0, PropertyVariant::JFX,
                 PropertyVariant::JFX_0, PropertyVariant::EF1, PropertyVariant::EFX,
                 PropertyVariant::EFX_0, PropertyVariant::PO, PropertyVariant::EQUITABLE})
    CHECK(parse_property(to_string(v)) == v);
  CHECK_THROWS_AS(parse_property("JF2"), Error);
}
