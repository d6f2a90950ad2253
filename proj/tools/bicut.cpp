// SPDX-FileCopyrightText: Copyright (c) 2026, The bicut Authors
// SPDX-License-Identifier: Apache-2.0

#include "CLI11.hpp"
#include "bicut/bench.hpp"
#include "bicut/drivers.hpp"
#include "bicut/generator.hpp"
#include "bicut/instance_io.hpp"
#include "bicut/verify.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using namespace bicut;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTimeLimit = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 4;
constexpr int kExitVerify = 5;

const std::vector<std::string> kSettings{"I-O", "IF-O", "I-G", "IF-G", "CP-O", "CP-G"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int status_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return kExitOk;
    case SolveStatus::time_limit: return kExitTimeLimit;
    case SolveStatus::infeasible: return kExitInfeasible;
  }
  return kExitUsage;
}

Instance load(const std::string& path) {
  try {
    return read_instance(path);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

SolveReport run(const Instance& inst, const std::string& setting, double time_limit, double eps) {
  SolverSettings s = parse_setting(setting);
  s.time_limit = time_limit;
  s.eps = eps;
  if (s.method == Method::cutting_plane && !inst.is_binary()) {
    throw UsageError(setting + " needs an all-binary instance");
  }
  return solve(inst, s);
}

struct GenArgs {
  int n = 20;
  int m1 = 0;
  std::uint64_t seed = 0;
  int count = 1;
  std::string out_dir = ".";
};

int cmd_gen(const GenArgs& a) {
  if (a.count < 1) throw UsageError("--count must be positive");
  std::vector<Instance> batch;
  for (int k = 0; k < a.count; ++k) {
    try {
      batch.push_back(generate({a.n, a.m1, a.seed + static_cast<std::uint64_t>(k)}));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  fs::create_directories(a.out_dir);
  for (int k = 0; k < a.count; ++k) {
    const auto seed = a.seed + static_cast<std::uint64_t>(k);
    const fs::path path = fs::path(a.out_dir) / ("n" + std::to_string(a.n) + "_m" +
                                                 std::to_string(a.m1) + "_s" +
                                                 std::to_string(seed) + ".json");
    write_instance(batch[static_cast<std::size_t>(k)], path);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

struct SolveArgs {
  std::string instance;
  std::string setting = "I-G";
  double time_limit = 600.0;
  double eps = kDefaultCutViolation;
};

int cmd_solve(const SolveArgs& a) {
  const Instance inst = load(a.instance);
  const SolveReport report = run(inst, a.setting, a.time_limit, a.eps);
  std::cout << to_json(report) << "\n";
  return status_code(report.status);
}

int cmd_verify(const SolveArgs& a) {
  const Instance inst = load(a.instance);
  const SolveReport report = run(inst, a.setting, a.time_limit, a.eps);
  const VerifyOutcome outcome = verify_report(inst, report);
  std::cout << "setting " << report.setting << ": status " << to_string(report.status)
            << ", z* " << report.z_star << ", " << report.cuts.size() << " cuts\n";
  if (outcome.oracle) {
    std::cout << "oracle: " << to_string(outcome.oracle->status);
    if (outcome.oracle->status == OracleStatus::optimal) std::cout << ", value " << outcome.oracle->value;
    std::cout << ", " << outcome.oracle->bilevel_feasible.size() << " bilevel-feasible points\n";
  }
  if (!outcome.notice.empty()) std::cout << "notice: " << outcome.notice << "\n";
  for (const auto& f : outcome.failures) std::cout << "FAIL " << f << "\n";
  if (!outcome.passed()) return kExitVerify;
  std::cout << "PASS\n";
  return report.status == SolveStatus::time_limit ? kExitTimeLimit : kExitOk;
}

struct BenchArgs {
  std::string dir;
  std::vector<std::string> settings{"I-O", "I-G"};
  int jobs = 1;
  double time_limit = 600.0;
  double eps = kDefaultCutViolation;
  std::string csv;
};

int cmd_bench(const BenchArgs& a) {
  if (!fs::is_directory(a.dir)) throw UsageError(a.dir + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (files.empty()) throw UsageError(a.dir + ": no instance files");
  std::sort(files.begin(), files.end());
  std::vector<Instance> instances;
  for (const auto& f : files) instances.push_back(load(f.string()));

  struct Task {
    std::size_t instance;
    std::string setting;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (const auto& s : a.settings) tasks.push_back({i, s});
  }
  std::vector<BenchRecord> records(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      try {
        records[k] = {instances[task.instance].n(), task.setting,
                      run(instances[task.instance], task.setting, a.time_limit, a.eps)};
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
      std::lock_guard<std::mutex> lock(log);
      std::cerr << files[task.instance].filename().string() << " " << task.setting << ": "
                << (errors[k].empty() ? std::string(to_string(records[k].report.status)) : errors[k])
                << "\n";
    }
  };
  const int jobs = std::max(1, a.jobs);
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    if (!errors[k].empty()) throw UsageError(files[tasks[k].instance].string() + ": " + errors[k]);
  }

  const auto rows = aggregate(records);
  std::cout << render_table(rows);
  if (a.csv.empty()) {
    std::cout << "\n" << render_csv(rows);
  } else {
    std::ofstream out(a.csv);
    if (!out) throw std::runtime_error("cannot write " + a.csv);
    out << render_csv(rows);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer bilevel programs with a convex quadratic follower"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write seeded random instances");
  g->add_option("--n", gen.n, "Total number of integer variables (even)")->capture_default_str();
  g->add_option("--m1", gen.m1, "Number of leader rows")->capture_default_str();
  g->add_option("--seed", gen.seed, "First seed; instance k uses seed + k")->capture_default_str();
  g->add_option("--count", gen.count, "Number of instances")->capture_default_str();
  g->add_option("--out-dir", gen.out_dir, "Output directory")->capture_default_str();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve an instance and print the report as JSON");
  SolveArgs ver;
  auto* v = app.add_subcommand("verify", "Solve an instance and check it against the oracle");
  for (auto [cmd, args] : {std::pair{s, &sol}, std::pair{v, &ver}}) {
    cmd->add_option("--instance", args->instance, "Instance JSON file")->required();
    cmd->add_option("--setting", args->setting, "Solver setting")
        ->check(CLI::IsMember(kSettings))
        ->capture_default_str();
    cmd->add_option("--time-limit", args->time_limit, "Time limit in seconds")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd->add_option("--eps", args->eps, "Minimum cut violation")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Solve every instance of a directory and aggregate");
  b->add_option("--dir", bench.dir, "Directory of instance JSON files")->required();
  b->add_option("--settings", bench.settings, "Solver settings")
      ->check(CLI::IsMember(kSettings))
      ->delimiter(',')
      ->capture_default_str();
  b->add_option("--jobs", bench.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--time-limit", bench.time_limit, "Time limit per solve in seconds")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  b->add_option("--eps", bench.eps, "Minimum cut violation")->check(CLI::PositiveNumber)->capture_default_str();
  b->add_option("--csv", bench.csv, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(sol);
    if (*v) return cmd_verify(ver);
    if (*b) return cmd_bench(bench);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
