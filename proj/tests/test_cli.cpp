#include "adicomp/cli.hpp"
#include "adicomp/error.hpp"

#include <doctest.h>

#include <optional>
#include <string>

using namespace adicomp;

namespace {

const char *kTorsion = R"({
  "ring": {"kind": "integers"},
  "modules": {"M": {"rank": 1, "relations": [["12"]]}},
  "ideals": {"a": ["2"]},
  "tasks": [{"command": "check_theorem4", "arguments": {"module": "M", "ideal": "a"}}]
})";

// Free summand over F5[x,y] with ideal (x): no certificate within the default depth.
const char *kUndecided = R"({
  "ring": {"kind": "polynomial", "base": {"kind": "prime_field", "modulus": 5},
           "vars": ["x", "y"], "order": "grlex"},
  "modules": {"M": {"rank": 2, "relations": [["0", "3*y"], ["0", "3*y + 2"]]}},
  "ideals": {"a": ["x"]},
  "tasks": [{"command": "check_theorem4", "arguments": {"module": "M", "ideal": "a"}}]
})";

std::optional<ErrorCode> code_of(const std::string &text) {
  try {
    parse_instance(text);
  } catch (const Error &e) {
    return e.code();
  }
  return std::nullopt;
}

Report run_one(const std::string &text, const RunOptions &opts = {}) {
  return run_files({{"inst.json", parse_instance(text)}}, opts);
}

} // namespace

TEST_CASE("instance files round-trip for every profile") {
  for (const auto &profile : known_profiles()) {
    auto files = generate_instances(3, 6, profile);
    REQUIRE(files.size() == 6);
    for (const auto &f : files) {
      std::string text = serialize_instance(f);
      InstanceFile back = parse_instance(text);
      CHECK(back == f);
      CHECK(serialize_instance(back) == text);
    }
  }
}

TEST_CASE("strict parsing") {
  CHECK(!code_of(kTorsion));
  std::string extra = kTorsion;
  extra.insert(extra.rfind('}'), ", \"colour\": 1");
  CHECK(code_of(extra) == ErrorCode::ParseError);

  std::string dangling = kTorsion;
  dangling.replace(dangling.find("\"ideal\": \"a\""), 12, "\"ideal\": \"b\"");
  CHECK(code_of(dangling) == ErrorCode::ParseError);

  std::string unknown_cmd = kTorsion;
  unknown_cmd.replace(unknown_cmd.find("check_theorem4"), 14, "check_theorem9");
  CHECK(code_of(unknown_cmd) == ErrorCode::ParseError);

  CHECK(code_of("{ not json") == ErrorCode::ParseError);
  CHECK(code_of(R"({"ring": {"kind": "integers"}, "tasks": [], "modules": {"M": {"rank": 2,
        "relations": [["1"]]}}})") == ErrorCode::ParseError);
  try {
    parse_instance(extra);
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("colour") != std::string::npos);
  }
}

TEST_CASE("torsion module over Z gives Fails/Fails") {
  Report rep = run_one(kTorsion);
  REQUIRE(rep.files.size() == 1);
  REQUIRE(rep.files[0].tasks.size() == 1);
  const TaskResult &t = rep.files[0].tasks[0];
  CHECK(t.left.fails());
  CHECK(t.right->fails());
  CHECK(t.consistency == Consistency::Consistent);
  CHECK(exit_code(rep) == 0);

  Json j = report_to_json(rep);
  CHECK(j["summary"]["exit_code"] == 0);
  CHECK(j["files"][0]["tasks"][0]["consistency"] == "Consistent");
  CHECK(!j["files"][0]["tasks"][0].contains("seconds"));
  CHECK(report_to_json(rep, true)["files"][0]["tasks"][0].contains("seconds"));
}

TEST_CASE("witnesses are reported under witness") {
  const char *sep = R"({
    "ring": {"kind": "integers"},
    "modules": {"M": {"rank": 1, "relations": [["12"]]}},
    "ideals": {"a": ["2"]},
    "tasks": [{"command": "is_separated", "arguments": {"module": "M", "ideal": "a"}}]
  })";
  Json j = report_to_json(run_one(sep));
  const Json &left = j["files"][0]["tasks"][0]["left"];
  CHECK(left["status"] == "Fails");
  REQUIRE(left.contains("witness"));
  CHECK(left["witness"].is_array());
}

TEST_CASE("example demo instance") {
  const char *demo = R"({
    "ring": {"kind": "rationals"},
    "tasks": [{"command": "build_example1", "arguments": {"support": 8, "precision": 8}},
              {"command": "check_theorem2",
               "arguments": {"example1": {"support": 8, "precision": 8}}}]
  })";
  Report rep = run_one(demo);
  CHECK(exit_code(rep) == 0);
  const TaskResult &suite = rep.files[0].tasks[0];
  CHECK(suite.kind == "suite");
  CHECK(suite.left.holds());
  CHECK(suite.sub_reports.size() >= 5);
  const TaskResult &t2 = rep.files[0].tasks[1];
  CHECK(t2.left.fails());
  CHECK(t2.right->fails());
}

TEST_CASE("empty task list prints only the header") {
  Report rep = run_one(R"({"ring": {"kind": "integers"}, "tasks": []})");
  CHECK(exit_code(rep) == 0);
  std::string text = emit_report(rep, ReportFormat::Text);
  CHECK(text.find("task") != std::string::npos);
  CHECK(text.find("Holds") == std::string::npos);
  CHECK(text.find("Fails") == std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(exit_code(run_one(kTorsion)) == 0);
  CHECK(exit_code(run_one(kUndecided)) == 2);

  Report bad = run_one(kTorsion);
  bad.files[0].tasks[0].left = Verdict::holds({});
  bad.files[0].tasks[0].consistency = Consistency::Inconsistent;
  CHECK(exit_code(bad) == 3);
  CHECK(report_to_json(bad)["summary"]["inconsistent"] == 1);

  // A task that cannot run becomes a TaskError.
  const char *ill = R"({
    "ring": {"kind": "rationals"},
    "tasks": [{"command": "build_example1", "arguments": {"support": 1, "precision": 4}}]
  })";
  try {
    run_one(ill);
    FAIL("expected TaskError");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::TaskError);
  }
}

TEST_CASE("budget overrides") {
  RunOptions o;
  o.depth = 12;
  o.stages = 5;
  BudgetOverrides none;
  DerivedBudget b = effective_budget(o, none);
  CHECK(b.depth == 12);
  CHECK(b.stages == 5);
  BudgetOverrides t;
  t.stages = 3;
  CHECK(effective_budget(o, t).stages == 3);
}

TEST_CASE("generator determinism") {
  for (const auto &profile : known_profiles()) {
    auto a = generate_instances(42, 5, profile);
    auto b = generate_instances(42, 5, profile);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(serialize_instance(a[i]) == serialize_instance(b[i]));
    auto c = generate_instances(43, 5, profile);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= !(a[i] == c[i]);
    CHECK(differs);
  }
  auto pid = generate_instances(1, 1, "pid");
  REQUIRE(pid.size() == 1);
  CHECK(pid[0].ring.kind == RingKind::Integers);
  CHECK(pid[0].seed.has_value());
  CHECK(generate_instances(1, 0, "mixed").empty());
  try {
    generate_instances(1, 1, "nope");
    FAIL("expected UnknownProfile");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::UnknownProfile);
  }
}

TEST_CASE("reports do not depend on the job count") {
  std::vector<std::pair<std::string, InstanceFile>> files;
  auto gen = generate_instances(9, 12, "mixed");
  for (std::size_t i = 0; i < gen.size(); ++i)
    files.emplace_back("f" + std::to_string(100 - i) + ".json", gen[i]);
  RunOptions one, many;
  many.jobs = 8;
  std::string a = emit_report(run_files(files, one), ReportFormat::Machine);
  std::string b = emit_report(run_files(files, many), ReportFormat::Machine);
  CHECK(a == b);
  Json j = Json::parse(a);
  // Ordered by path regardless of input order.
  CHECK(j["files"][0]["path"] < j["files"][1]["path"]);
}
