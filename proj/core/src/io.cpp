#include "fairmanna/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace fairmanna::io {

using Json = nlohmann::ordered_json;

namespace {

Json rational_to_json(const Rational& r) {
  if (r.is_integer()) return r.numerator();
  return r.str();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      raise(Errc::parse_error, e.what());
    }
  }
  if (j.is_number_float())
    raise(Errc::parse_error,
          "utilities must be exact: write \"" + j.dump() + "\" as a \"p/q\" string");
  raise(Errc::parse_error, "expected an integer or a \"p/q\" string, got " + j.dump());
}

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::parse_error, "malformed JSON");
  return j;
}

const Json& field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) raise(Errc::parse_error, std::string("missing field '") + key + "'");
  return *it;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json bundles_json(const Instance& inst, const Allocation& alloc) {
  Json bundles = Json::array();
  for (const auto& bundle : alloc.bundles()) {
    Json labels = Json::array();
    for (int t : bundle) labels.push_back(inst.label(t));
    bundles.push_back(std::move(labels));
  }
  return bundles;
}

Json violation_json(const Violation& v) {
  Json j;
  j["property"] = to_string(v.property);
  if (v.agent_a >= 0) j["agent_a"] = v.agent_a;
  if (v.agent_b >= 0) j["agent_b"] = v.agent_b;
  if (v.witness_item) j["witness_item"] = *v.witness_item;
  j["clause"] = v.clause;
  j["detail"] = v.detail;
  return j;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  Json j;
  j["agents"] = inst.n();
  j["items"] = inst.items();
  Json utilities;
  if (inst.is_additive()) {
    utilities["type"] = "additive";
    Json matrix = Json::array();
    for (const auto& row : inst.additive().matrix) {
      Json r = Json::array();
      for (const auto& v : row) r.push_back(rational_to_json(v));
      matrix.push_back(std::move(r));
    }
    utilities["matrix"] = std::move(matrix);
  } else {
    utilities["type"] = "general";
    Json tables = Json::array();
    for (const auto& table : inst.general().tables) {
      Json t = Json::array();
      for (const auto& v : table) t.push_back(rational_to_json(v));
      tables.push_back(std::move(t));
    }
    utilities["tables"] = std::move(tables);
  }
  j["utilities"] = std::move(utilities);
  return dump(j);
}

namespace {

Instance instance_from_parsed(const Json& j) {
  const int agents = field(j, "agents").get<int>();
  std::vector<std::string> items = field(j, "items").get<std::vector<std::string>>();
  const Json& utilities = field(j, "utilities");
  const std::string type = field(utilities, "type").get<std::string>();
  auto rows_from = [&](const Json& rows_json) {
    std::vector<std::vector<Rational>> rows;
    for (const Json& row_json : rows_json) {
      std::vector<Rational> row;
      for (const Json& cell : row_json) row.push_back(rational_from_json(cell));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  if (type == "additive")
    return Instance(agents, std::move(items), AdditiveModel{rows_from(field(utilities, "matrix"))});
  if (type == "general")
    return Instance(agents, std::move(items), GeneralModel{rows_from(field(utilities, "tables"))});
  raise(Errc::parse_error, "utilities.type must be 'additive' or 'general'");
}

}  // namespace

Instance instance_from_json(const std::string& text) {
  return instance_from_parsed(parse_json(text));
}

Instance instance_from_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) {
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
    }
    rows.push_back(std::move(cells));
  }
  if (rows.size() < 3) raise(Errc::parse_error, "CSV needs a header row and at least two agents");
  std::vector<std::vector<Rational>> matrix;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != rows[0].size())
      raise(Errc::parse_error, "CSV row " + std::to_string(r) + " length mismatch");
    std::vector<Rational> row;
    for (const auto& cell : rows[r]) {
      try {
        row.push_back(Rational::parse(cell));
      } catch (const std::exception& e) {
        raise(Errc::parse_error, std::string("bad CSV value '") + cell + "': " + e.what());
      }
    }
    matrix.push_back(std::move(row));
  }
  return Instance(static_cast<int>(rows.size() - 1), rows[0], AdditiveModel{std::move(matrix)});
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return instance_from_csv(text);
  return instance_from_json(text);
}

std::string allocation_to_json(const Instance& inst, const Allocation& alloc) {
  Json j;
  j["bundles"] = bundles_json(inst, alloc);
  return dump(j);
}

Allocation allocation_from_json(const Instance& inst, const std::string& text) {
  const Json j = parse_json(text);
  const Json& bundles = field(j, "bundles");
  std::vector<std::vector<int>> indexed;
  for (const Json& bundle : bundles) {
    std::vector<int> items;
    for (const Json& label : bundle) {
      auto idx = inst.item_index(label.get<std::string>());
      if (!idx) raise(Errc::parse_error, "unknown item label " + label.dump());
      items.push_back(*idx);
    }
    indexed.push_back(std::move(items));
  }
  if (static_cast<int>(indexed.size()) != inst.n())
    raise(Errc::parse_error, "allocation needs exactly one bundle per agent");
  try {
    return Allocation::from_bundles(inst.n(), inst.m(), indexed);
  } catch (const Error& e) {
    raise(Errc::parse_error, e.what());
  }
}

std::string verdict_to_json(const Instance& inst, const Verdict& verdict) {
  Json j;
  j["property"] = to_string(verdict.property);
  j["holds"] = verdict.holds;
  Json violations = Json::array();
  for (const Violation& v : verdict.violations) violations.push_back(violation_json(v));
  j["violations"] = std::move(violations);
  if (verdict.improvement) {
    Json improvement;
    improvement["bundles"] = bundles_json(inst, *verdict.improvement);
    j["improvement"] = std::move(improvement);
  }
  return dump(j);
}

std::string search_report_to_json(const Instance& inst, const SearchReport& report) {
  Json j;
  Json props = Json::array();
  for (PropertyVariant v : report.properties) props.push_back(to_string(v));
  j["properties"] = std::move(props);
  j["found"] = report.found.has_value();
  if (report.found) j["bundles"] = bundles_json(inst, *report.found);
  j["explored"] = report.explored;
  j["exhaustive"] = report.exhaustive;
  return dump(j);
}

std::string solve_result_to_json(const Instance& inst, const std::string& method,
                                 const SolveResult& result) {
  Json j;
  j["method"] = method;
  j["bundles"] = bundles_json(inst, result.allocation);
  Json utilities = Json::array();
  for (int a = 0; a < inst.n(); ++a)
    utilities.push_back(rational_to_json(inst.value(a, result.allocation.bundle_mask(a))));
  j["utilities"] = std::move(utilities);
  j["explored"] = result.explored;
  j["exhaustive"] = result.exhaustive;
  Json key = Json::array();
  for (const auto& [utility, size] : result.key.entries)
    key.push_back(Json::array({rational_to_json(utility), size}));
  j["key"] = std::move(key);
  return dump(j);
}

std::string x3c_to_json(const reductions::X3CInstance& x3c) {
  Json j;
  j["q"] = x3c.q;
  j["ground_set"] = x3c.ground_set;
  Json collection = Json::array();
  for (const auto& triple : x3c.collection) {
    Json set = Json::array();
    for (int e : triple) set.push_back(x3c.ground_set[e]);
    collection.push_back(std::move(set));
  }
  j["collection"] = std::move(collection);
  return dump(j);
}

reductions::X3CInstance x3c_from_json(const std::string& text) {
  const Json j = parse_json(text);
  const int q = field(j, "q").get<int>();
  auto ground = field(j, "ground_set").get<std::vector<std::string>>();
  std::vector<std::array<int, 3>> collection;
  for (const Json& set : field(j, "collection")) {
    if (set.size() != 3) raise(Errc::parse_error, "collection members must have 3 elements");
    std::array<int, 3> triple{};
    for (int i = 0; i < 3; ++i) {
      const std::string label = set[i].get<std::string>();
      auto at = std::find(ground.begin(), ground.end(), label);
      if (at == ground.end())
        raise(Errc::parse_error, "collection element '" + label + "' not in the ground set");
      triple[i] = static_cast<int>(at - ground.begin());
    }
    collection.push_back(triple);
  }
  try {
    return reductions::X3CInstance(q, std::move(ground), std::move(collection));
  } catch (const Error& e) {
    raise(Errc::parse_error, e.what());
  }
}

std::string reduced_to_json(const reductions::ReducedInstance& red) {
  Json j;
  j["variant"] = red.variant == reductions::ReductionVariant::jf1_hardness ? "jf1" : "jf1po";
  j["q"] = red.q;
  j["Q"] = red.Q;
  j["M"] = rational_to_json(red.M);
  j["instance"] = parse_json(instance_to_json(red.instance));
  Json roles;
  for (int t = 0; t < red.instance.m(); ++t)
    roles[red.instance.label(t)] = std::string(1, red.item_roles[t]);
  j["item_roles"] = std::move(roles);
  return dump(j);
}

std::string claims_to_json(const std::vector<paperlab::ClaimReport>& reports) {
  Json j = Json::array();
  for (const auto& r : reports) {
    Json entry;
    entry["claim"] = r.claim;
    entry["expected"] = r.expected;
    entry["computed"] = r.computed;
    entry["ok"] = r.ok();
    entry["explored"] = r.explored;
    entry["millis"] = r.millis;
    j.push_back(std::move(entry));
  }
  return dump(j);
}

std::string claims_to_csv(const std::vector<paperlab::ClaimReport>& reports) {
  std::ostringstream out;
  out << "claim_id,expected,computed,explored,millis\n";
  auto quote = [](const std::string& s) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  };
  for (const auto& r : reports)
    out << r.claim << ',' << quote(r.expected) << ',' << quote(r.computed) << ',' << r.explored
        << ',' << std::fixed << std::setprecision(3) << r.millis << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(Errc::parse_error, "cannot write '" + path + "'");
  out << content;
}

}  // namespace fairmanna::io
