#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>

#include "fairmanna/io.hpp"

namespace fm = fairmanna;

namespace {

// 0 = positive verdict, 1 = checked and negative, 2 = could not check.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

fm::EnumOptions options_from_env() {
  fm::EnumOptions opts;
  if (const char* cap = std::getenv("FAIRMANNA_ENUM_CAP")) {
    try {
      opts.cap = std::stoull(cap);
    } catch (const std::exception&) {
      fm::raise(fm::Errc::parse_error, "FAIRMANNA_ENUM_CAP must be an integer");
    }
  }
  return opts;
}

std::string allocation_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;  // inline JSON
  return fm::io::read_file(arg);
}

int run(int argc, char** argv) {
  CLI::App app{"exact fairness checkers, exhaustive solvers and instance tooling "
               "for indivisible mixed manna"};
  app.require_subcommand(1);
  const fm::EnumOptions opts = options_from_env();

  std::string instance_path, allocation_arg, property, method, properties_csv;
  std::string target_text = "auto", variant = "jf1", x3c_path, M_text, klass = "goods";
  std::string model = "additive";
  bool csv = false, do_normalise = false;
  int n = 2, m = 4, range = 5;
  std::uint64_t seed = 0;

  auto* classify = app.add_subcommand("classify", "item and problem classes of an instance");
  classify->add_option("--instance", instance_path)->required();

  auto* check = app.add_subcommand("check", "decide one fairness property of an allocation");
  check->add_option("--property", property)->required();
  check->add_option("--instance", instance_path)->required();
  check->add_option("--allocation", allocation_arg, "allocation JSON file or inline literal")
      ->required();

  auto* solve = app.add_subcommand("solve", "compute an allocation");
  solve->add_option("--method", method)
      ->required()
      ->check(CLI::IsMember({"leximin", "leximinpp", "jf1zero", "one-each"}));
  solve->add_option("--instance", instance_path)->required();

  auto* exists = app.add_subcommand("exists", "search for an allocation with all the "
                                              "required properties");
  exists->add_option("--properties", properties_csv, "comma-separated property list")->required();
  exists->add_option("--instance", instance_path)->required();

  auto* norm = app.add_subcommand("normalise", "rescale so all grand-bundle utilities agree");
  norm->add_option("--instance", instance_path)->required();
  norm->add_option("--target", target_text, "rational target, or 'auto' for +1/-1 by sign");

  auto* reduce = app.add_subcommand("reduce-x3c", "derive a fair-division instance from an "
                                                  "exact-cover-by-3-sets instance");
  reduce->add_option("--variant", variant)->check(CLI::IsMember({"jf1", "jf1po"}));
  reduce->add_option("--in", x3c_path)->required();
  reduce->add_option("--M", M_text, "penalty override (jf1 variant only)");

  auto* verify = app.add_subcommand("verify-paper", "re-verify the bundled fixture claims "
                                                    "by exhaustive search");
  verify->add_flag("--csv", csv, "emit CSV instead of JSON");

  auto* gen = app.add_subcommand("gen", "seeded random instance");
  gen->add_option("--n", n);
  gen->add_option("--m", m);
  gen->add_option("--class", klass)
      ->check(CLI::IsMember({"goods", "bads", "mixed", "pure-goods-and-bads", "goods-and-bads"}));
  gen->add_option("--range", range);
  gen->add_option("--model", model)->check(CLI::IsMember({"additive", "general"}));
  gen->add_option("--seed", seed);
  gen->add_flag("--normalise", do_normalise);

  CLI11_PARSE(app, argc, argv);

  if (classify->parsed()) {
    const fm::Instance inst = fm::io::load_instance(instance_path);
    std::string out = "{\n  \"problem_class\": \"";
    out += fm::to_string(fm::detect_problem_class(inst, opts.cap));
    out += "\"";
    if (inst.is_additive()) {
      out += ",\n  \"item_classes\": {";
      for (int t = 0; t < inst.m(); ++t) {
        out += t ? ", " : "";
        out += "\"" + inst.label(t) + "\": \"" +
               fm::to_string(fm::classify_item_additive(inst, t)) + "\"";
      }
      out += "}";
    }
    out += "\n}\n";
    std::cout << out;
    return kExitTrue;
  }

  if (check->parsed()) {
    const fm::Instance inst = fm::io::load_instance(instance_path);
    const fm::Allocation alloc =
        fm::io::allocation_from_json(inst, allocation_text(allocation_arg));
    const fm::Verdict verdict =
        fm::check_property(inst, alloc, fm::parse_property(property), opts);
    std::cout << fm::io::verdict_to_json(inst, verdict);
    return verdict.holds ? kExitTrue : kExitFalse;
  }

  if (solve->parsed()) {
    const fm::Instance inst = fm::io::load_instance(instance_path);
    fm::SolveResult result;
    if (method == "leximin") result = fm::solve_leximin(inst, opts);
    else if (method == "leximinpp") result = fm::solve_leximin_pp(inst, opts);
    else if (method == "jf1zero") result = fm::jf1zero_greedy(inst);
    else result = fm::assign_one_each(inst);
    std::cout << fm::io::solve_result_to_json(inst, method, result);
    return kExitTrue;
  }

  if (exists->parsed()) {
    const fm::Instance inst = fm::io::load_instance(instance_path);
    std::set<fm::PropertyVariant> required;
    std::size_t start = 0;
    while (start <= properties_csv.size()) {
      const auto comma = properties_csv.find(',', start);
      const auto token = properties_csv.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!token.empty()) required.insert(fm::parse_property(token));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    const fm::SearchReport report = fm::exists_allocation(inst, required, opts);
    std::cout << fm::io::search_report_to_json(inst, report);
    return report.found ? kExitTrue : kExitFalse;
  }

  if (norm->parsed()) {
    const fm::Instance inst = fm::io::load_instance(instance_path);
    fm::Rational target;
    if (target_text == "auto") {
      target = fm::Rational(inst.grand_total(0).sign() >= 0 ? 1 : -1);
    } else {
      target = fm::Rational::parse(target_text);
    }
    std::cout << fm::io::instance_to_json(fm::normalise(inst, target));
    return kExitTrue;
  }

  if (reduce->parsed()) {
    const auto x3c = fm::io::x3c_from_json(fm::io::read_file(x3c_path));
    fm::reductions::ReducedInstance red =
        variant == "jf1"
            ? fm::reductions::reduce_x3c_jf1(
                  x3c, M_text.empty() ? std::nullopt
                                      : std::optional(fm::Rational::parse(M_text)))
            : fm::reductions::reduce_x3c_jf1po_binary(x3c);
    std::cout << fm::io::reduced_to_json(red);
    return kExitTrue;
  }

  if (verify->parsed()) {
    const auto reports = fm::paperlab::verify_paper_claims(opts);
    std::cout << (csv ? fm::io::claims_to_csv(reports) : fm::io::claims_to_json(reports));
    for (const auto& r : reports)
      if (!r.ok()) return kExitFalse;
    return kExitTrue;
  }

  // gen
  fm::paperlab::GenConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.klass = fm::paperlab::parse_utility_class(klass);
  cfg.value_range = range;
  cfg.normalise = do_normalise;
  cfg.model = model == "additive" ? fm::paperlab::ModelKind::additive
                                  : fm::paperlab::ModelKind::general;
  cfg.seed = seed;
  std::cout << fm::io::instance_to_json(fm::paperlab::gen_random_instance(cfg));
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const fm::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
