#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace timewise::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct InferOptions {
  std::string network;
  std::string evidence;
  std::string query;
  std::string strategy = "exact";
  std::uint64_t budget = 1000;
  std::uint64_t seed = 0;
  std::vector<double> ladder{0.5, 0.0};
  std::string table;
  std::string context;
};

struct ScenarioOptions {
  std::string builtin;
  std::string config;
  std::string output;
};

struct ProfileOptions {
  std::string strategy;
  std::string id;
  std::size_t nodes = 6;
  std::size_t max_parents = 2;
  std::size_t cardinality = 2;
  std::size_t evidence = 1;
  bool polytree = false;
  std::size_t trials = 10;
  std::vector<std::uint64_t> checkpoints{1, 10, 100, 1000};
  std::uint64_t seed = 0;
  double quantile = 0.95;
  std::optional<double> steps_per_second;
  std::vector<double> ladder{0.5, 0.0};
  std::string table;
  std::string context;
  std::string out_dir = ".";
};

int run_validate(const std::string& path, std::ostream& out, std::ostream& err);
int run_infer(const InferOptions& opts, std::ostream& out, std::ostream& err);
int run_scenario(const ScenarioOptions& opts, std::ostream& out, std::ostream& err);
int run_profile(const ProfileOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace timewise::cli
