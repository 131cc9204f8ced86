#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairmanna/axioms.hpp"
#include "fairmanna/model.hpp"
#include "fairmanna/reductions.hpp"

namespace fairmanna::paperlab {

/// A named, exactly pinned problem instance from the bundled catalogue of
/// counterexamples and worked examples.
struct Fixture {
  std::string id;
  Instance instance;
  std::string notes;
};

/// Known ids: example1, example2, example3, example4, prop1, prop2, prop3,
/// prop5, prop6_eps, prop7. Throws Errc::unknown_fixture otherwise.
Fixture fixture(const std::string& id);
std::vector<std::string> fixture_ids();

/// The bundled X3C instance with q = 2, seven 3-sets and a known cover.
reductions::X3CInstance x3c_fixture();

/// One re-verified claim: the suite passes iff expected == computed.
struct ClaimReport {
  std::string claim;
  std::string expected;
  std::string computed;
  std::uint64_t explored = 0;
  double millis = 0.0;

  bool ok() const { return expected == computed; }
};

/// Re-checks every catalogued existence / impossibility / classification
/// claim by exhaustive search and returns one report per claim, ordered by
/// claim id. Mismatches land in the reports; nothing throws.
std::vector<ClaimReport> verify_paper_claims(const EnumOptions& opts = {});

enum class UtilityClass { goods, bads, mixed, pure_goods_and_bads, goods_and_bads };
enum class ModelKind { additive, general };

const char* to_string(UtilityClass c);
UtilityClass parse_utility_class(const std::string& name);

struct GenConfig {
  int n = 2;
  int m = 4;
  UtilityClass klass = UtilityClass::goods;
  int value_range = 5;  // integer utilities in [-range, range] before normalisation
  bool normalise = false;
  ModelKind model = ModelKind::additive;
  std::uint64_t seed = 0;
  int max_attempts = 10'000;
};

/// Deterministic under seed; the result's detected problem class conforms to
/// the requested utility class (rejection sampling, Errc::rejection_cap_exceeded
/// when the cap is hit). General models are built as strictly increasing
/// transforms of additive bases, which pins every marginal's sign.
Instance gen_random_instance(const GenConfig& cfg);

/// Verdicts for all axioms on one (instance, allocation) pair, with the
/// implication structure between them re-asserted.
struct AuditTable {
  std::vector<std::pair<PropertyVariant, bool>> verdicts;
};

/// Evaluates every fairness axiom (and PO when run_po is set) and checks the
/// implications that hold by the quantifier structure of the definitions:
///   JFX_0 => JFX and EFX_0 => EFX   (weakening a universal qualifier)
///   JF1   => JF1_0                  (dropping an existential qualifier)
/// plus, for additive instances, the cross-family arrows JFX => JF1 and
/// EFX => EF1 (a jealous or envious agent then always holds a qualifying
/// witness). A violation of any of these is a checker bug and throws
/// Errc::chain_violation.
AuditTable implication_audit(const Instance& inst, const Allocation& alloc,
                             const EnumOptions& opts = {}, bool run_po = true);

struct SuiteResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::vector<std::string> failure_details;
};

/// Seeded randomized suites for the solver guarantees: leximin is PO;
/// leximin++ is JFX without mixed items; the greedy pass is JF1_0 on every
/// prefix; the two-agent normalised-additive guarantees (leximin EFX+PO,
/// leximin++ JFX+EFX, and their pure-goods-and-bads strengthenings); and the
/// implication-chain audit over random pairs.
std::vector<SuiteResult> run_theorem_suites(int per_suite = 200, int chain_pairs = 10'000,
                                            std::uint64_t seed_base = 20'240'001);

}  // namespace fairmanna::paperlab
