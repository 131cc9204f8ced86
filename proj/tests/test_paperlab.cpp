#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fairmanna/solvers.hpp"
#include "helpers.hpp"

using namespace fairmanna;
using namespace testutil;
namespace pl = fairmanna::paperlab;

TEST_CASE("fixture tables are pinned digit for digit") {
  const Instance p7 = pl::fixture("prop7").instance;
  CHECK(p7.additive().matrix[2] == std::vector<Rational>{-16, -7, -7});
  CHECK(p7.grand_total(0) + p7.grand_total(1) + p7.grand_total(2) == Rational(-90));

  const Instance p2 = pl::fixture("prop2").instance;
  CHECK(p2.additive().matrix[0] == std::vector<Rational>{2, -1, 0});

  const Instance p6 = pl::fixture("prop6_eps").instance;
  CHECK(p6.value(1, 0b0111) == Rational(3, 5));      // epsilon|S| = 3/5, so eps = 1/5
  CHECK(Rational(1, 5) > Rational(0));
  CHECK(Rational(1, 5) < Rational(1, 4));            // inside (0, 1/m)
  CHECK(p6.value(1, 0b1111) == Rational(4));
  CHECK(p6.value(0, 0b1011) == Rational(3));

  const Instance e1 = pl::fixture("example1").instance;
  CHECK(e1.value(0, named_mask(e1, {"a", "b"})) == Rational(2));
  CHECK(e1.value(1, named_mask(e1, {"a", "b", "d"})) == Rational(3, 2));
  CHECK(e1.value(0, named_mask(e1, {"d"})) == Rational(0));  // fixture-local completion

  CHECK(pl::fixture_ids().size() == 10);
  CHECK_THROWS_AS(pl::fixture("prop4"), Error);
}

TEST_CASE("claim verification reports zero mismatches") {
  const auto reports = pl::verify_paper_claims();
  CHECK(reports.size() == 14);
  for (const auto& r : reports) {
    INFO(r.claim, ": expected ", r.expected, ", computed ", r.computed);
    CHECK(r.ok());
  }
  // claims arrive ordered by id
  for (std::size_t i = 1; i < reports.size(); ++i) CHECK(reports[i - 1].claim < reports[i].claim);
}

TEST_CASE("generator is deterministic and class-conformant") {
  pl::GenConfig cfg;
  cfg.klass = pl::UtilityClass::goods;
  cfg.n = 2;
  cfg.m = 4;
  cfg.seed = 7;
  const Instance once = pl::gen_random_instance(cfg);
  const Instance twice = pl::gen_random_instance(cfg);
  CHECK(once.additive().matrix == twice.additive().matrix);

  // all entries weakly positive, every column strictly positive somewhere
  for (int t = 0; t < once.m(); ++t) {
    bool has_pos = false;
    for (int a = 0; a < once.n(); ++a) {
      CHECK(once.item_value(a, t).sign() >= 0);
      has_pos |= once.item_value(a, t).sign() > 0;
    }
    CHECK(has_pos);
  }

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    cfg.seed = seed;
    cfg.klass = pl::UtilityClass::pure_goods_and_bads;
    CHECK(detect_problem_class(pl::gen_random_instance(cfg)) ==
          ProblemClass::PureGoodsAndBads);
    cfg.klass = pl::UtilityClass::mixed;
    CHECK(detect_problem_class(pl::gen_random_instance(cfg)) == ProblemClass::WithMixedItems);
    cfg.klass = pl::UtilityClass::goods_and_bads;
    CHECK(detect_problem_class(pl::gen_random_instance(cfg)) != ProblemClass::WithMixedItems);
  }
}

TEST_CASE("generator covers general models and normalisation") {
  pl::GenConfig cfg;
  cfg.model = pl::ModelKind::general;
  cfg.n = 2;
  cfg.m = 3;
  cfg.klass = pl::UtilityClass::goods_and_bads;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = 400 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    CHECK(!inst.is_additive());
    CHECK(inst.value(0, 0) == Rational(0));  // empty bundle anchored at zero
    CHECK(detect_problem_class(inst) != ProblemClass::WithMixedItems);
  }

  cfg.model = pl::ModelKind::additive;
  cfg.normalise = true;
  cfg.klass = pl::UtilityClass::mixed;
  cfg.m = 5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    cfg.seed = 90 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    const Rational target = inst.grand_total(0);
    CHECK((target == Rational(1) || target == Rational(-1)));
    for (int a = 0; a < inst.n(); ++a) CHECK(inst.grand_total(a) == target);
  }
}

TEST_CASE("audit table on the identical-bads allocation") {
  const Instance e2 = pl::fixture("example2").instance;
  const Allocation a = named_alloc(e2, {{"a", "c"}, {"b"}});
  const pl::AuditTable table = pl::implication_audit(e2, a);
  auto verdict = [&](PropertyVariant v) {
    for (const auto& [prop, holds] : table.verdicts)
      if (prop == v) return holds;
    FAIL("missing verdict");
    return false;
  };
  CHECK(verdict(PropertyVariant::JF1));
  CHECK(verdict(PropertyVariant::JF1_0));  // dump c: u1(A1+{c}) = -5 <= -4
  CHECK(!verdict(PropertyVariant::JFX));
  CHECK(!verdict(PropertyVariant::JFX_0));
  CHECK(!verdict(PropertyVariant::EQUITABLE));
  CHECK(table.verdicts.size() == 9);

  const pl::AuditTable no_po = pl::implication_audit(e2, a, {}, false);
  CHECK(no_po.verdicts.size() == 8);
}

TEST_CASE("audit arrows hold across random pairs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    pl::GenConfig cfg;
    cfg.n = 2 + seed % 2;
    cfg.m = 2 + seed % 4;
    cfg.klass = static_cast<pl::UtilityClass>(seed % 5);
    cfg.seed = 52000 + seed;
    const Instance inst = pl::gen_random_instance(cfg);
    std::uint64_t total = 1;
    for (int t = 0; t < inst.m(); ++t) total *= inst.n();
    const Allocation alloc = Allocation::from_index(inst.n(), inst.m(), (seed * 37) % total);
    CHECK_NOTHROW(pl::implication_audit(inst, alloc, {}, false));
  }
}

TEST_CASE("theorem suites pass end to end (reduced volume)") {
  // the full volume runs in the acceptance gate; this is a quick regression
  const auto results = pl::run_theorem_suites(25, 400);
  CHECK(results.size() == 8);
  for (const auto& suite : results) {
    INFO(suite.name, " failures: ",
         suite.failure_details.empty() ? "" : suite.failure_details.front());
    CHECK(suite.failures == 0);
    CHECK(suite.instances >= 25);
  }
}
