#include "fairmanna/paperlab.hpp"

#include <chrono>
#include <sstream>

#include "fairmanna/solvers.hpp"

namespace fairmanna::paperlab {

namespace {

Instance additive(int n, std::vector<std::string> items,
                  std::vector<std::vector<Rational>> matrix) {
  return Instance(n, std::move(items), AdditiveModel{std::move(matrix)});
}

Instance example1_instance() {
  // Two agents sharing one general bundle table over items a, b, c, d.
  // Bundles not listed below are fixture-local completions valued 0.
  std::vector<Rational> table(16, Rational(0));
  auto at = [&](std::initializer_list<int> items) -> Rational& {
    Mask mask = 0;
    for (int i : items) mask |= Mask{1} << i;
    return table[mask];
  };
  at({1}) = 1;             // {b}
  at({0, 1}) = 2;          // {a,b}
  at({1, 3}) = 2;          // {b,d}
  at({0, 1, 3}) = {3, 2};  // {a,b,d}
  at({2}) = 3;             // {c}
  at({0, 2}) = 2;          // {a,c}
  at({2, 3}) = 2;          // {c,d}
  at({0, 2, 3}) = 4;       // {a,c,d}
  return Instance(2, {"a", "b", "c", "d"}, GeneralModel{{table, table}});
}

Instance prop6_instance() {
  // u1(S) = |S|; u2(S) = |S|/5 on proper subsets and 4 on the grand bundle.
  const Rational eps(1, 5);
  std::vector<Rational> u1(16), u2(16);
  for (Mask mask = 0; mask < 16; ++mask) {
    u1[mask] = popcount(mask);
    u2[mask] = eps * popcount(mask);
  }
  u2[15] = 4;
  return Instance(2, {"a", "b", "c", "d"}, GeneralModel{{u1, u2}});
}

}  // namespace

Fixture fixture(const std::string& id) {
  if (id == "example1")
    return {id, example1_instance(),
            "two agents with a shared general bundle table; item a is a pure good in one "
            "allocation and a pure bad in another"};
  if (id == "example2")
    return {id, additive(2, {"a", "b", "c"}, {{-1, -2, -3}, {-1, -2, -3}}),
            "three pure bads, identical rows; ({a,c},{b}) restores jealousy-freeness for some "
            "item but not for every item"};
  if (id == "example3")
    return {id, additive(2, {"a", "b", "c", "d"}, {{1, 1, 1, 1}, {1, 0, 0, 0}}),
            "four goods whose jealousy verdicts flip under normalisation"};
  if (id == "example4")
    return {id, additive(2, {"a", "b", "c", "d"}, {{1, 1, 1, 1}, {0, 0, 0, 0}}),
            "agent 2 values nothing; giving everything to agent 1 is envy-free up to one item "
            "and Pareto-optimal yet not jealousy-free up to one item"};
  if (id == "prop1")
    return {id, additive(2, {"a", "b", "c"}, {{1, 1, -4}, {-1, -1, 0}}),
            "two mixed items and one bad; no allocation is jealousy-free up to one "
            "non-zero-valued item"};
  if (id == "prop2")
    return {id, additive(2, {"a", "b", "c"}, {{2, -1, 0}, {2, 0, -1}}),
            "one pure good and two bads; no allocation survives the any-item variants"};
  if (id == "prop3")
    return {id, additive(2, {"a", "b", "c", "d"}, {{1, 1, -5, 0}, {0, 0, 0, -3}}),
            "two goods and two bads with a unique Pareto optimum that is not jealousy-free "
            "up to one item"};
  if (id == "prop5")
    return {id, additive(2, {"a", "b"}, {{-1, -1}, {-3, -3}}),
            "two pure bads, non-normalised totals -2 and -6"};
  if (id == "prop6_eps")
    return {id, prop6_instance(),
            "four pure goods under normalised general utilities, epsilon = 1/5 in (0, 1/4)"};
  if (id == "prop7")
    return {id, additive(3, {"a", "b", "c"}, {{-28, -1, -1}, {-24, -3, -3}, {-16, -7, -7}}),
            "three agents, three pure bads, every row summing to -30"};
  raise(Errc::unknown_fixture, "no fixture named '" + id + "'");
}

std::vector<std::string> fixture_ids() {
  return {"example1", "example2", "example3", "example4", "prop1",
          "prop2",    "prop3",    "prop5",    "prop6_eps", "prop7"};
}

reductions::X3CInstance x3c_fixture() {
  return reductions::X3CInstance(
      2, {"1", "2", "3", "4", "5", "6"},
      {{0, 1, 2}, {3, 4, 5}, {0, 3, 4}, {1, 2, 5}, {0, 1, 3}, {2, 4, 5}, {1, 3, 5}});
}

const char* to_string(UtilityClass c) {
  switch (c) {
    case UtilityClass::goods: return "goods";
    case UtilityClass::bads: return "bads";
    case UtilityClass::mixed: return "mixed";
    case UtilityClass::pure_goods_and_bads: return "pure-goods-and-bads";
    case UtilityClass::goods_and_bads: return "goods-and-bads";
  }
  return "?";
}

UtilityClass parse_utility_class(const std::string& name) {
  for (UtilityClass c : {UtilityClass::goods, UtilityClass::bads, UtilityClass::mixed,
                         UtilityClass::pure_goods_and_bads, UtilityClass::goods_and_bads})
    if (name == to_string(c)) return c;
  raise(Errc::parse_error, "unknown utility class '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Allocation named_allocation(const Instance& inst,
                            const std::vector<std::vector<std::string>>& bundles) {
  std::vector<std::vector<int>> indexed(bundles.size());
  for (std::size_t a = 0; a < bundles.size(); ++a)
    for (const auto& label : bundles[a]) indexed[a].push_back(*inst.item_index(label));
  return Allocation::from_bundles(inst.n(), inst.m(), indexed);
}

std::string absent_or_found(const SearchReport& report) {
  return report.found ? "found" : "absent";
}

ClaimReport existence_claim(const std::string& id, const Instance& inst,
                            const std::set<PropertyVariant>& props, const EnumOptions& opts) {
  const auto start = Clock::now();
  SearchReport report = exists_allocation(inst, props, opts);
  return {id, "absent", absent_or_found(report), report.explored, ms_since(start)};
}

}  // namespace

std::vector<ClaimReport> verify_paper_claims(const EnumOptions& opts) {
  std::vector<ClaimReport> reports;

  {  // example1: item a flips between pure good and pure bad across allocations
    const auto start = Clock::now();
    const Instance inst = fixture("example1").instance;
    const int a = *inst.item_index("a");
    auto cls = [&](int agent, std::initializer_list<const char*> base) {
      Mask mask = 0;
      for (const char* label : base) mask |= Mask{1} << *inst.item_index(label);
      return classify_marginal(inst, agent, a, mask);
    };
    std::ostringstream got;
    got << "A:" << to_string(cls(0, {"b"})) << "/" << to_string(cls(1, {"c", "d"}))
        << ";B:" << to_string(cls(0, {"c"})) << "/" << to_string(cls(1, {"b", "d"}));
    reports.push_back({"example1_item_a_flip", "A:PureGood/PureGood;B:PureBad/PureBad",
                       got.str(), 0, ms_since(start)});
  }

  {  // example2: ({a,c},{b}) passes the some-item variant, fails the any-item one
    const auto start = Clock::now();
    const Instance inst = fixture("example2").instance;
    const Allocation alloc = named_allocation(inst, {{"a", "c"}, {"b"}});
    std::ostringstream got;
    got << "JF1=" << (check_jf(inst, alloc, PropertyVariant::JF1).holds ? "true" : "false")
        << ";JFX=" << (check_jf(inst, alloc, PropertyVariant::JFX).holds ? "true" : "false");
    reports.push_back({"example2_jf1_not_jfx", "JF1=true;JFX=false", got.str(), 0,
                       ms_since(start)});
  }

  {  // example3: normalisation flips the JF1 verdict of ({b,c,d},{a})
    const auto start = Clock::now();
    const Instance raw = fixture("example3").instance;
    const Instance scaled = normalise(raw, Rational(1));
    const Allocation alloc = named_allocation(raw, {{"b", "c", "d"}, {"a"}});
    std::ostringstream got;
    got << "raw=" << (check_jf(raw, alloc, PropertyVariant::JF1).holds ? "true" : "false")
        << ";normalised="
        << (check_jf(scaled, alloc, PropertyVariant::JF1).holds ? "true" : "false");
    reports.push_back({"example3_jf1_flips_under_normalisation", "raw=false;normalised=true",
                       got.str(), 0, ms_since(start)});
  }

  {  // example4: everything to agent 1 is EF1 and PO but not JF1
    const auto start = Clock::now();
    const Instance inst = fixture("example4").instance;
    const Allocation alloc = named_allocation(inst, {{"a", "b", "c", "d"}, {}});
    PoResult po = is_po(inst, alloc, opts);
    std::ostringstream got;
    got << "EF1=" << (check_ef(inst, alloc, PropertyVariant::EF1).holds ? "true" : "false")
        << ";PO=" << (po.pareto_optimal ? "true" : "false")
        << ";JF1=" << (check_jf(inst, alloc, PropertyVariant::JF1).holds ? "true" : "false");
    reports.push_back({"example4_all_to_agent1", "EF1=true;PO=true;JF1=false", got.str(),
                       po.explored, ms_since(start)});
  }

  reports.push_back(existence_claim("prop1_no_jf1", fixture("prop1").instance,
                                    {PropertyVariant::JF1}, opts));
  reports.push_back(existence_claim("prop2_no_efx0", fixture("prop2").instance,
                                    {PropertyVariant::EFX_0}, opts));
  reports.push_back(existence_claim("prop2_no_jfx0", fixture("prop2").instance,
                                    {PropertyVariant::JFX_0}, opts));

  reports.push_back(existence_claim("prop3_no_jf1_po", fixture("prop3").instance,
                                    {PropertyVariant::JF1, PropertyVariant::PO}, opts));
  {  // prop3: exactly one Pareto optimum, ({a,b,d},{c}) at utilities (2, 0), not JF1
    const auto start = Clock::now();
    const Instance inst = fixture("prop3").instance;
    const Allocation expect = named_allocation(inst, {{"a", "b", "d"}, {"c"}});
    std::uint64_t po_count = 0;
    bool expected_is_po = false;
    std::uint64_t explored = 0;
    for (const Allocation& alloc : enumerate_allocations(inst, opts.cap)) {
      ++explored;
      if (is_po(inst, alloc, opts).pareto_optimal) {
        ++po_count;
        expected_is_po |= alloc == expect;
      }
    }
    std::ostringstream got;
    got << "po_count=" << po_count << ";expected_is_po=" << (expected_is_po ? "true" : "false")
        << ";utilities=(" << inst.value(0, expect.bundle_mask(0)).str() << ","
        << inst.value(1, expect.bundle_mask(1)).str() << ")"
        << ";JF1=" << (check_jf(inst, expect, PropertyVariant::JF1).holds ? "true" : "false");
    reports.push_back({"prop3_unique_po",
                       "po_count=1;expected_is_po=true;utilities=(2,0);JF1=false", got.str(),
                       explored, ms_since(start)});
  }
  reports.push_back(existence_claim("prop5_no_jf1_ef1", fixture("prop5").instance,
                                    {PropertyVariant::JF1, PropertyVariant::EF1}, opts));
  reports.push_back(existence_claim("prop6_no_jf1_ef1", fixture("prop6_eps").instance,
                                    {PropertyVariant::JF1, PropertyVariant::EF1}, opts));
  reports.push_back(existence_claim("prop7_no_jf1_ef1", fixture("prop7").instance,
                                    {PropertyVariant::JF1, PropertyVariant::EF1}, opts));

  {  // forward direction of the jealousy-freeness hardness construction
    const auto start = Clock::now();
    const auto x3c = x3c_fixture();
    const auto cover = x3c_solve_bruteforce(x3c);
    const auto red = reductions::reduce_x3c_jf1(x3c);
    std::ostringstream got;
    if (!cover) {
      got << "cover=absent";
    } else {
      const Allocation alloc = reductions::cover_to_allocation(red, *cover);
      bool all_three = true;
      for (int a = 0; a < red.instance.n(); ++a)
        all_three &= red.instance.value(a, alloc.bundle_mask(a)) == Rational(3);
      const auto back = reductions::allocation_to_cover(red, alloc);
      got << "agents=" << red.instance.n() << ";items=" << red.instance.m()
          << ";utilities3=" << (all_three ? "true" : "false") << ";JF1="
          << (check_jf(red.instance, alloc, PropertyVariant::JF1).holds ? "true" : "false")
          << ";roundtrip=" << (back && *back == *cover ? "true" : "false");
    }
    reports.push_back({"x3c_jf1_forward",
                       "agents=8;items=25;utilities3=true;JF1=true;roundtrip=true", got.str(), 0,
                       ms_since(start)});
  }

  {  // forward direction of the binary variant
    const auto start = Clock::now();
    const auto x3c = x3c_fixture();
    const auto cover = x3c_solve_bruteforce(x3c);
    const auto red = reductions::reduce_x3c_jf1po_binary(x3c);
    std::ostringstream got;
    if (!cover) {
      got << "cover=absent";
    } else {
      const Allocation alloc = reductions::cover_to_allocation(red, *cover);
      bool binary = true, all_three = true;
      Rational row_sum = red.instance.grand_total(0);
      bool sums_equal = true;
      for (int a = 0; a < red.instance.n(); ++a) {
        sums_equal &= red.instance.grand_total(a) == row_sum;
        all_three &= red.instance.value(a, alloc.bundle_mask(a)) == Rational(3);
        for (int t = 0; t < red.instance.m(); ++t) {
          const Rational& v = red.instance.item_value(a, t);
          binary &= v == Rational(0) || v == Rational(1);
        }
      }
      const auto back = reductions::allocation_to_cover(red, alloc);
      got << "agents=" << red.instance.n() << ";items=" << red.instance.m()
          << ";binary=" << (binary ? "true" : "false")
          << ";row_sums_equal=" << (sums_equal ? "true" : "false")
          << ";utilities3=" << (all_three ? "true" : "false") << ";JF1="
          << (check_jf(red.instance, alloc, PropertyVariant::JF1).holds ? "true" : "false")
          << ";roundtrip=" << (back && *back == *cover ? "true" : "false");
    }
    reports.push_back(
        {"x3c_jf1po_forward",
         "agents=7;items=21;binary=true;row_sums_equal=true;utilities3=true;JF1=true;"
         "roundtrip=true",
         got.str(), 0, ms_since(start)});
  }

  return reports;
}

AuditTable implication_audit(const Instance& inst, const Allocation& alloc,
                             const EnumOptions& opts, bool run_po) {
  AuditTable table;
  auto holds = [&](PropertyVariant v) {
    bool h = check_property(inst, alloc, v, opts).holds;
    table.verdicts.emplace_back(v, h);
    return h;
  };

  const bool jfx0 = holds(PropertyVariant::JFX_0);
  const bool jfx = holds(PropertyVariant::JFX);
  const bool jf1_0 = holds(PropertyVariant::JF1_0);
  const bool jf1 = holds(PropertyVariant::JF1);
  const bool efx0 = holds(PropertyVariant::EFX_0);
  const bool efx = holds(PropertyVariant::EFX);
  const bool ef1 = holds(PropertyVariant::EF1);
  holds(PropertyVariant::EQUITABLE);
  if (run_po) holds(PropertyVariant::PO);

  auto arrow = [&](bool from, bool to, const char* name) {
    if (from && !to)
      raise(Errc::chain_violation, std::string("implication ") + name +
                                       " failed; one of the two checkers is wrong");
  };
  arrow(jfx0, jfx, "JFX_0 => JFX");
  arrow(efx0, efx, "EFX_0 => EFX");
  arrow(jf1, jf1_0, "JF1 => JF1_0");
  if (inst.is_additive()) {
    arrow(jfx, jf1, "JFX => JF1 (additive)");
    arrow(efx, ef1, "EFX => EF1 (additive)");
  }
  return table;
}

}  // namespace fairmanna::paperlab
