// Golden-file and exit-code tests for the command-line tool.
// Usage: test_cli <path-to-cli> <golden-dir>

#include <iostream>
#include <string>

#include "fairmanna/io.hpp"
#include "process.hpp"

using namespace fairmanna;
using testutil::run_command;
using testutil::shell_quote;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

void expect_eq(const std::string& got, const std::string& want, const std::string& what) {
  if (got != want) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n--- got ---\n" << got << "--- want ---\n" << want
              << "-----------\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: test_cli <cli> <golden-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string golden = argv[2];
  const std::string dir = testutil::make_temp_dir();

  for (const char* id : {"example2", "prop3", "prop1"})
    io::write_file(dir + "/" + id + ".json",
                   io::instance_to_json(paperlab::fixture(id).instance));

  {  // golden 1: a JFX check that comes back false exits 1
    const auto r = run_command(cli + " check --property JFX --instance " + dir +
                               "/example2.json --allocation " +
                               shell_quote(R"({"bundles":[["a","c"],["b"]]})") + " 2>/dev/null");
    expect_eq(r.out, io::read_file(golden + "/check_jfx_example2.json"), "check golden bytes");
    expect(r.exit_code == 1, "check exit code 1 for a false verdict");
  }

  {  // golden 2: leximin solve
    const auto r =
        run_command(cli + " solve --method leximin --instance " + dir + "/prop3.json 2>/dev/null");
    expect_eq(r.out, io::read_file(golden + "/solve_leximin_prop3.json"), "solve golden bytes");
    expect(r.exit_code == 0, "solve exit code 0");
  }

  {  // golden 3: fruitless existence search exits 1
    const auto r = run_command(cli + " exists --properties JF1 --instance " + dir +
                               "/prop1.json 2>/dev/null");
    expect_eq(r.out, io::read_file(golden + "/exists_jf1_prop1.json"), "exists golden bytes");
    expect(r.exit_code == 1, "exists exit code 1 when nothing is found");
  }

  {  // byte stability: the same invocation twice
    const std::string cmd =
        cli + " solve --method leximinpp --instance " + dir + "/example2.json 2>/dev/null";
    expect_eq(run_command(cmd).out, run_command(cmd).out, "repeated invocations agree");
  }

  {  // positive verdict exits 0
    const auto r = run_command(cli + " check --property JF1 --instance " + dir +
                               "/example2.json --allocation " +
                               shell_quote(R"({"bundles":[["a","c"],["b"]]})") + " 2>/dev/null");
    expect(r.exit_code == 0, "check exit code 0 for a true verdict");
  }

  {  // malformed input exits 2 with a one-line diagnostic
    io::write_file(dir + "/broken.json", "{ not json");
    const auto r = run_command(cli + " classify --instance " + dir + "/broken.json 2>&1");
    expect(r.exit_code == 2, "malformed instance exits 2");
    expect(r.out.find("ParseError") != std::string::npos, "diagnostic names the parse error");
  }

  {  // the enumeration cap surfaces as exit 2 and states the cap
    const auto r = run_command("FAIRMANNA_ENUM_CAP=4 " + cli + " solve --method leximin --instance " +
                               dir + "/prop3.json 2>&1");
    expect(r.exit_code == 2, "cap overflow exits 2");
    expect(r.out.find("cap 4") != std::string::npos, "diagnostic states the cap");
  }

  {  // classify, normalise, gen, verify-paper, reduce-x3c smoke runs
    expect(run_command(cli + " classify --instance " + dir + "/prop1.json 2>/dev/null")
               .out.find("WithMixedItems") != std::string::npos,
           "classify reports the problem class");

    const auto norm = run_command(cli + " normalise --instance " + dir +
                                  "/example2.json --target -1 2>/dev/null");
    expect(norm.exit_code == 0, "normalise runs");
    expect(norm.out.find("\"-1/6\"") != std::string::npos, "normalise scales utilities");

    const std::string gen_cmd =
        cli + " gen --n 2 --m 4 --class goods --seed 7 --model additive 2>/dev/null";
    expect_eq(run_command(gen_cmd).out, run_command(gen_cmd).out, "gen is deterministic");

    const auto verify = run_command(cli + " verify-paper --csv 2>/dev/null");
    expect(verify.exit_code == 0, "verify-paper exits 0 when all claims match");
    expect(verify.out.rfind("claim_id,", 0) == 0, "verify-paper CSV header");

    io::write_file(dir + "/x3c.json", io::x3c_to_json(paperlab::x3c_fixture()));
    const auto red = run_command(cli + " reduce-x3c --variant jf1po --in " + dir +
                                 "/x3c.json 2>/dev/null");
    expect(red.exit_code == 0, "reduce-x3c runs");
    expect(red.out.find("\"item_roles\"") != std::string::npos, "reduce-x3c emits roles");

    const auto one = run_command(cli + " solve --method jf1zero --instance " + dir +
                                 "/example2.json 2>/dev/null");
    expect(one.exit_code == 0, "jf1zero solve runs");

    // the CSV loader feeds every subcommand through --instance
    io::write_file(dir + "/prop1.csv", "a,b,c\n1,1,-4\n-1,-1,0\n");
    const auto csv_run = run_command(cli + " exists --properties JF1 --instance " + dir +
                                     "/prop1.csv 2>/dev/null");
    expect(csv_run.exit_code == 1, "CSV instance loads and searches");
    expect(csv_run.out.find("\"explored\": 8") != std::string::npos, "CSV search explores 8");

    // a failed PO check reports the minimum-index improving reallocation
    const auto po = run_command(cli + " check --property PO --instance " + dir +
                                "/prop3.json --allocation " +
                                shell_quote(R"({"bundles":[["a","b","c","d"],[]]})") +
                                " 2>/dev/null");
    expect(po.exit_code == 1, "non-optimal allocation exits 1");
    expect(po.out.find("\"improvement\"") != std::string::npos, "PO verdict carries a witness");

    const auto one_each = run_command(cli + " solve --method one-each --instance " + dir +
                                      "/prop1.csv 2>/dev/null");
    expect(one_each.exit_code == 2, "one-each on 2 agents, 3 items exits 2");

    const auto red16 = run_command(cli + " reduce-x3c --variant jf1 --in " + dir +
                                   "/x3c.json --M 16 2>/dev/null");
    expect(red16.out.find("\"M\": 16") != std::string::npos, "penalty override lands in output");

    const auto gen_general = run_command(
        cli + " gen --n 2 --m 3 --class goods-and-bads --model general --seed 3 2>/dev/null");
    expect(gen_general.out.find("\"tables\"") != std::string::npos, "general gen emits tables");
  }

  {  // unknown property exits 2
    const auto r = run_command(cli + " exists --properties JF9 --instance " + dir +
                               "/prop1.json 2>&1");
    expect(r.exit_code == 2, "unknown property exits 2");
  }

  run_command("rm -rf " + shell_quote(dir));
  if (failures == 0) std::cout << "test_cli: all checks passed\n";
  return failures == 0 ? 0 : 1;
}
