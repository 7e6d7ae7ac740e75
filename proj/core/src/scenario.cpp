#include "timewise/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json_util.hpp"
#include "timewise/errors.hpp"
#include "timewise/network_io.hpp"

namespace timewise {

namespace {

constexpr std::string_view kIcuNetwork = R"({
  "variables": [
    {"id": "D", "states": ["present", "absent"]},
    {"id": "T_r", "states": ["abnormal", "normal"]}
  ],
  "chance": [
    {"id": "D", "parents": [], "cpt": [0.20000000000000001, 0.80000000000000004]},
    {"id": "T_r", "parents": ["D"], "cpt": [0.84999999999999998, 0.15000000000000002, 0.10000000000000001, 0.90000000000000002], "arc_importance": [1]}
  ],
  "decisions": [
    {"id": "T", "options": ["test", "no_test"]},
    {"id": "D_x", "options": ["assume_present", "assume_absent"]}
  ],
  "values": [
    {"id": "V", "parents": ["D_x", "D"]}
  ]
}
)";

// Knots of an analytic profile, dense enough that interpolation error is far
// below the selector's grid resolution on every builtin horizon.
constexpr double kKnotSpan = 20.0;
constexpr std::size_t kKnots = 4001;
constexpr double kNominalStepsPerSecond = 1000.0;

template <typename F>
PrecisionProfile analytic_profile(std::string id, F precision) {
  PrecisionProfile p;
  p.strategy_id = std::move(id);
  p.problem_class = "icu-respiratory";
  p.steps_per_second = kNominalStepsPerSecond;
  p.source = AnalyticSource{};
  for (std::size_t i = 0; i < kKnots; ++i) {
    const double t = kKnotSpan * static_cast<double>(i) / static_cast<double>(kKnots - 1);
    p.points.emplace_back(t, precision(t));
  }
  return p;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string_view icu_network_text() { return kIcuNetwork; }

Network icu_network() { return parse_network(kIcuNetwork); }

std::vector<PrecisionProfile> icu_catalog() {
  std::vector<PrecisionProfile> catalog;
  catalog.push_back(analytic_profile("E-1", [](double t) { return 1.0 - std::exp(-0.5 * t); }));
  catalog.push_back(analytic_profile("E-2", [](double t) { return 0.8 * (1.0 - std::exp(-2.0 * t)); }));

  PrecisionProfile fallback;
  fallback.strategy_id = "E-3";
  fallback.problem_class = "icu-respiratory";
  fallback.steps_per_second = kNominalStepsPerSecond;
  fallback.source = AnalyticSource{};
  fallback.points = {{0.0, 0.0}, {0.01, 0.15}, {kKnotSpan, 0.15}};
  catalog.push_back(std::move(fallback));
  return catalog;
}

std::vector<std::string> builtin_scenario_names() { return {"icu-mild", "icu-sharp", "icu-extreme"}; }

Scenario builtin_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  s.catalog = icu_catalog();
  s.context.utilities = {1.0, 0.0, 0.0, 1.0};
  s.context.object_model = ObjectValueModel::kLinearPrecision;
  s.network = icu_network();
  s.evidence.assignments = {{"T_r", "abnormal"}};
  s.query = {"D", "present"};
  if (name == "icu-mild") {
    s.context.discount = ExponentialDiscount{0.02};
    s.context.phi_note = "unresolved respiratory symptoms, stable patient";
    s.horizon = 20.0;
  } else if (name == "icu-sharp") {
    s.context.discount = ExponentialDiscount{1.5};
    s.context.phi_note = "deteriorating oxygenation, contracted decision horizon";
    s.horizon = 5.0;
  } else if (name == "icu-extreme") {
    s.context.discount = StepDiscount{0.05, 0.0};
    s.context.phi_note = "respiratory arrest imminent, action needed within 50 ms";
    s.horizon = 0.5;
  } else {
    throw ContractViolation("unknown builtin scenario '" + std::string(name) + "'");
  }
  return s;
}

ScenarioConfig parse_scenario_config(std::string_view text, const std::filesystem::path& base_dir) {
  const auto root = detail::parse_json(text);
  if (!root.is_object()) throw ParseError("scenario config must be a JSON object");
  auto path_at = [&](const char* key) -> std::optional<std::filesystem::path> {
    auto it = root.find(key);
    if (it == root.end()) return std::nullopt;
    if (!it->is_string()) throw ParseError(std::string("scenario config: '") + key + "' must be a string path");
    std::filesystem::path p = it->get<std::string>();
    return p.is_absolute() ? p : base_dir / p;
  };
  auto string_at = [&](const char* key) -> std::string {
    auto it = root.find(key);
    if (it == root.end()) return {};
    if (!it->is_string()) throw ParseError(std::string("scenario config: '") + key + "' must be a string");
    return it->get<std::string>();
  };

  ScenarioConfig cfg;
  cfg.network = path_at("network");
  cfg.evidence = string_at("evidence");
  cfg.query = string_at("query");
  auto ctx = path_at("value_context");
  if (!ctx) throw ParseError("scenario config: missing value_context");
  cfg.value_context = *ctx;
  cfg.catalog = path_at("catalog");
  cfg.horizon = detail::number_at(root, "horizon", "scenario config");
  if (!(cfg.horizon > 0.0)) throw ParseError("scenario config: horizon must be positive");
  if (auto it = root.find("grid_n"); it != root.end()) {
    if (!it->is_number_unsigned() || it->get<std::size_t>() < 2) throw ParseError("scenario config: grid_n must be >= 2");
    cfg.grid_n = it->get<std::size_t>();
  }
  cfg.output = path_at("output");
  if (cfg.network && cfg.query.empty()) throw ParseError("scenario config: a network needs a query");
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  return parse_scenario_config(read_text_file(path), path.parent_path());
}

Scenario load_scenario(const ScenarioConfig& config) {
  Scenario s;
  s.name = "config";
  s.context = load_value_context(config.value_context);
  s.horizon = config.horizon;
  s.grid_n = config.grid_n;

  std::filesystem::path catalog_dir;
  if (config.catalog) {
    catalog_dir = *config.catalog;
  } else if (const char* env = std::getenv(kCatalogEnvVar); env != nullptr && *env != '\0') {
    catalog_dir = env;
  } else {
    throw ParseError(std::string("scenario config: no catalog given and ") + kCatalogEnvVar + " is unset");
  }
  s.catalog = load_catalog(catalog_dir);
  if (s.catalog.empty()) throw ParseError("catalog '" + catalog_dir.string() + "' holds no profiles");

  if (config.network) {
    s.network = load_network(*config.network);
    s.evidence = parse_evidence(config.evidence);
    s.query = parse_query(config.query);
  }
  return s;
}

std::string scenario_csv(const MetaDecision& decision) {
  std::ostringstream out;
  out << "strategy,t,precision,v_o,discount,v_c\n";
  for (const auto& curve : decision.curves) {
    for (const auto& pt : curve.grid) {
      out << curve.strategy_id << ',' << fmt("%.10g", pt.t) << ',' << fmt("%.10g", pt.precision) << ','
          << fmt("%.10g", pt.object_value) << ',' << fmt("%.10g", pt.discount) << ','
          << fmt("%.10g", pt.comprehensive_value) << '\n';
    }
  }
  return out.str();
}

std::string selection_summary(const MetaDecision& decision) {
  return "SELECTED " + decision.selected + " t_max=" + fmt("%.6g", decision.t_max) +
         " v_c_max=" + fmt("%.6g", decision.v_c_max);
}

}  // namespace timewise
