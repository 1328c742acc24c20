#pragma once

// Instance files, batch execution, reports and the random corpus.

#include "adicomp/theorems.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adicomp {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";

struct ModuleSpec {
  std::size_t rank = 0;
  std::vector<std::vector<std::string>> relations; // each of length rank

  friend bool operator==(const ModuleSpec &, const ModuleSpec &) = default;
};

struct ComplexSpec {
  int lo = 0;
  std::vector<ModuleSpec> entries;
  /// differentials[k] : entries[k] -> entries[k+1], as rows.
  std::vector<std::vector<std::vector<std::string>>> differentials;

  friend bool operator==(const ComplexSpec &, const ComplexSpec &) = default;
};

/// Z[source...] -> the file's ring.
struct MapSpec {
  std::vector<std::string> source;
  std::vector<std::string> images;

  friend bool operator==(const MapSpec &, const MapSpec &) = default;
};

struct BudgetOverrides {
  std::optional<int> depth, window, stages, stable;

  friend bool operator==(const BudgetOverrides &, const BudgetOverrides &) = default;
};

struct TaskSpec {
  std::string command;
  Json arguments = Json::object();
  BudgetOverrides budget;

  friend bool operator==(const TaskSpec &a, const TaskSpec &b) {
    return a.command == b.command && a.arguments == b.arguments && a.budget == b.budget;
  }
};

struct InstanceFile {
  RingDescription ring;
  std::map<std::string, ModuleSpec> modules;
  std::map<std::string, ComplexSpec> complexes;
  std::map<std::string, std::vector<std::string>> ideals;
  std::map<std::string, MapSpec> maps;
  std::vector<TaskSpec> tasks;
  std::optional<std::uint64_t> seed;
};

bool operator==(const RingDescription &a, const RingDescription &b);
bool operator==(const InstanceFile &a, const InstanceFile &b);

Json ring_to_json(const RingDescription &d);
RingDescription ring_from_json(const Json &j);

Json to_json(const InstanceFile &f);
/// Strict: unknown fields, wrong types and dangling names throw ParseError.
InstanceFile instance_from_json(const Json &j);
InstanceFile parse_instance(std::string_view text);
std::string serialize_instance(const InstanceFile &f);

/// Commands understood in task lists.
const std::vector<std::string> &known_commands();

struct TaskResult {
  std::size_t index = 0;
  std::string command;
  /// "equivalence" (left/right), "verdict" (left only) or "suite".
  std::string kind;
  Verdict left;
  std::optional<Verdict> right;
  std::optional<Consistency> consistency;
  std::vector<NamedVerdict> sub_reports;
  std::string digest;
  Budget budget;
  double seconds = 0;
};

struct FileReport {
  std::string path;
  std::string digest; // of the canonical file text
  std::optional<std::uint64_t> seed;
  std::vector<TaskResult> tasks;
};

struct Report {
  std::vector<FileReport> files;
};

struct RunOptions {
  int depth = 16;
  int stages = 8;
  int window = 2; // consecutive stages for stage-wise criteria
  int jobs = 1;
  bool timings = false;
};

DerivedBudget effective_budget(const RunOptions &opts, const BudgetOverrides &o);

/// Runs every task of one file in order. Task failures throw TaskError.
FileReport run_instance(const InstanceFile &f, const std::string &path, const RunOptions &opts);
FileReport run_instance(const std::string &path, const RunOptions &opts);

/// Files run concurrently up to opts.jobs; output ordered by path.
Report run_files(std::vector<std::pair<std::string, InstanceFile>> files, const RunOptions &opts);

/// 0 all decisive and consistent, 2 something undecided, 3 any inconsistency.
int exit_code(const Report &r);

enum class ReportFormat { Text, Machine };

Json verdict_to_json(const Verdict &v);
Json report_to_json(const Report &r, bool timings = false);
std::string emit_report(const Report &r, ReportFormat format, bool timings = false);

/// Profiles: pid, mixed, theorem2, theorem3, lemma5.
std::vector<InstanceFile> generate_instances(std::uint64_t seed, int count,
                                             std::string_view profile);
const std::vector<std::string> &known_profiles();

} // namespace adicomp
