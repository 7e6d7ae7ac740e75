#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "timewise/control.hpp"
#include "timewise/network.hpp"
#include "timewise/profile.hpp"
#include "timewise/value.hpp"

namespace timewise {

/// Everything needed to run the selector once and print its curves.
struct Scenario {
  std::string name;
  std::vector<PrecisionProfile> catalog;
  ValueContext context;
  double horizon = 1.0;
  std::size_t grid_n = kDefaultGridPoints;
  /// Optional problem instance; used only to measure complete resources.
  std::optional<Network> network;
  Evidence evidence;
  Query query;
};

/// Names accepted by builtin_scenario: "icu-mild", "icu-sharp", "icu-extreme".
std::vector<std::string> builtin_scenario_names();

/// Throws ContractViolation for an unknown name.
Scenario builtin_scenario(std::string_view name);

/// Diagnosis decision network: disease D, observed symptoms T_r, assumed
/// diagnosis D_x and testing decision T, value V over (D_x, D).
Network icu_network();
std::string_view icu_network_text();

/// Analytic catalogue: E-1 with 1 - e^{-0.5 t}, E-2 with 0.8 (1 - e^{-2 t}),
/// E-3 a compiled default at precision 0.15 from t = 0.01.
std::vector<PrecisionProfile> icu_catalog();

/// {network?, evidence?, query?, value_context, catalog?, horizon, grid_n?, output?}
/// Relative paths resolve against the config file's directory; a missing
/// catalog falls back to the TIMEWISE_CATALOG environment variable.
struct ScenarioConfig {
  std::optional<std::filesystem::path> network;
  std::string evidence;
  std::string query;
  std::filesystem::path value_context;
  std::optional<std::filesystem::path> catalog;
  double horizon = 1.0;
  std::size_t grid_n = kDefaultGridPoints;
  std::optional<std::filesystem::path> output;
};

ScenarioConfig parse_scenario_config(std::string_view text, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);
Scenario load_scenario(const ScenarioConfig& config);

/// Header `strategy,t,precision,v_o,discount,v_c`, one row per grid point per
/// strategy in catalogue order. Model time only, so output is reproducible.
std::string scenario_csv(const MetaDecision& decision);

/// `SELECTED <id> t_max=<t> v_c_max=<v>`
std::string selection_summary(const MetaDecision& decision);

}  // namespace timewise
