#include "adicomp/cli.hpp"
#include "adicomp/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace adicomp;

namespace {

constexpr int kUsageError = 4;

int run(const std::vector<std::string> &paths, const RunOptions &opts, ReportFormat format,
        const std::string &output) {
  std::vector<std::pair<std::string, InstanceFile>> files;
  for (const auto &p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, p + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      files.emplace_back(p, parse_instance(ss.str()));
    } catch (const Error &e) {
      throw Error(ErrorCode::ParseError, p + ": " + e.what());
    }
  }
  Report rep = run_files(std::move(files), opts);
  std::string doc = emit_report(rep, format, opts.timings);
  if (output.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(output, std::ios::binary);
    out << doc;
  }
  return exit_code(rep);
}

int generate(std::uint64_t seed, int count, const std::string &profile, const std::string &dir) {
  auto files = generate_instances(seed, count, profile);
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < files.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s-%04zu.json", profile.c_str(), i);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    out << serialize_instance(files[i]);
  }
  std::cout << "wrote " << files.size() << " instances to " << dir << "\n";
  return 0;
}

int example1(int I, int N, ReportFormat format) {
  InstanceFile f;
  f.ring.kind = RingKind::Rationals;
  TaskSpec t;
  t.command = "build_example1";
  t.arguments = Json{{"support", I}, {"precision", N}};
  f.tasks.push_back(std::move(t));
  Report rep = run_files({{"example1", f}}, RunOptions{});
  std::cout << emit_report(rep, format);
  return exit_code(rep);
}

ReportFormat parse_format(const std::string &s) {
  return s == "machine" ? ReportFormat::Machine : ReportFormat::Text;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Adic completeness workbench"};
  app.require_subcommand(1);

  RunOptions opts;
  std::string format = "text", output;
  std::vector<std::string> paths;
  auto *run_cmd = app.add_subcommand("run", "Run instance files and report");
  run_cmd->add_option("files", paths, "Instance files")->required();
  run_cmd->add_option("--precision", opts.depth, "Tower depth")->capture_default_str()->check(CLI::Range(1, 64));
  run_cmd->add_option("--stages", opts.stages, "Telescope stage")->capture_default_str()->check(CLI::Range(1, 32));
  run_cmd->add_option("--window", opts.window, "Stabilization window")->capture_default_str()->check(CLI::Range(1, 16));
  run_cmd->add_option("--format", format, "text or machine")->capture_default_str()->check(CLI::IsMember({"text", "machine"}));
  run_cmd->add_option("--jobs", opts.jobs, "Files run concurrently")->capture_default_str()->check(CLI::Range(1, 256));
  run_cmd->add_flag("--timings", opts.timings, "Include wall-clock per task");
  run_cmd->add_option("--output", output, "Write the report here instead of stdout");

  std::uint64_t seed = 1;
  int count = 1;
  std::string profile = "mixed", dir = "instances";
  auto *gen_cmd = app.add_subcommand("generate", "Write a random instance corpus");
  gen_cmd->add_option("--seed", seed, "Corpus seed")->capture_default_str();
  gen_cmd->add_option("--count", count, "Number of instances")->capture_default_str()->check(CLI::Range(0, 100000));
  gen_cmd->add_option("--profile", profile, "pid, mixed, theorem2, theorem3 or lemma5")->capture_default_str();
  gen_cmd->add_option("--out", dir, "Output directory")->capture_default_str();

  int I = 8, N = 8;
  auto *ex_cmd = app.add_subcommand("example1", "Build the non-separated example and print its verdicts");
  ex_cmd->add_option("--support", I, "Support bound I")->capture_default_str();
  ex_cmd->add_option("--precision", N, "Precision N")->capture_default_str();
  ex_cmd->add_option("--format", format, "text or machine")->capture_default_str()->check(CLI::IsMember({"text", "machine"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*run_cmd) return run(paths, opts, parse_format(format), output);
    if (*gen_cmd) return generate(seed, count, profile, dir);
    if (*ex_cmd) return example1(I, N, parse_format(format));
  } catch (const Error &e) {
    std::cerr << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
