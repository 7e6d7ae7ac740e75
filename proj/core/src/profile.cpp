#include "timewise/profile.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include "json_util.hpp"
#include "timewise/errors.hpp"
#include "timewise/exact.hpp"
#include "timewise/network_io.hpp"
#include "timewise/random.hpp"
#include "timewise/value.hpp"

namespace timewise {

void PrecisionProfile::check() const {
  if (points.empty()) throw ContractViolation("profile '" + strategy_id + "' has no points");
  if (!(points.front().first >= 0.0)) throw ContractViolation("profile '" + strategy_id + "' starts before t = 0");
  if (!(steps_per_second > 0.0)) throw ContractViolation("profile '" + strategy_id + "' needs steps_per_second > 0");
  for (const auto& [t, p] : points) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("profile '" + strategy_id + "' precision outside [0,1]");
  }
  if (points.size() >= 2) {
    const auto report = validate_tradeoff(points);
    if (!report.valid) throw ContractViolation("profile '" + strategy_id + "' precision decreases with time");
  }
}

double eval_profile(const PrecisionProfile& profile, double t) {
  const auto& pts = profile.points;
  if (pts.empty()) throw ContractViolation("eval_profile: empty profile");
  if (!(t >= 0.0)) throw ContractViolation("eval_profile: negative time");
  if (t <= pts.front().first) return pts.front().second;
  if (t >= pts.back().first) return pts.back().second;
  const auto hi = std::upper_bound(pts.begin(), pts.end(), t, [](double x, const auto& pt) { return x < pt.first; });
  const auto lo = std::prev(hi);
  if (t == lo->first) return lo->second;
  const double frac = (t - lo->first) / (hi->first - lo->first);
  return lo->second + frac * (hi->second - lo->second);
}

namespace {

// Nearest-rank quantile of an ascending-sorted sample.
double nearest_rank(const std::vector<double>& sorted, double q) {
  const auto n = static_cast<double>(sorted.size());
  const auto rank = static_cast<std::size_t>(std::ceil(q * n));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

PrecisionProfile profile_strategy(const EngineFactory& factory, const ProblemSampler& sampler,
                                  const ProfileRequest& request) {
  if (request.trials < 10) throw ContractViolation("profiling needs at least 10 trials");
  if (request.checkpoints.empty()) throw ContractViolation("profiling needs at least one checkpoint");
  for (std::size_t k = 1; k < request.checkpoints.size(); ++k) {
    if (!(request.checkpoints[k] > request.checkpoints[k - 1])) {
      throw ContractViolation("profile checkpoints must be strictly ascending");
    }
  }
  if (!(request.quantile > 0.0 && request.quantile < 1.0)) throw ContractViolation("quantile must lie in (0,1)");
  if (request.steps_per_second && !(*request.steps_per_second > 0.0)) {
    throw ContractViolation("steps_per_second must be positive");
  }

  const std::size_t n_checks = request.checkpoints.size();
  std::vector<std::vector<double>> errors(n_checks);
  std::vector<std::vector<double>> declared(n_checks);
  bool declares = false;
  double stepped_seconds = 0.0;
  std::uint64_t stepped = 0;

  for (std::size_t trial = 0; trial < request.trials; ++trial) {
    const std::uint64_t trial_seed = request.seed + trial;
    std::optional<Problem> problem;
    double exact = 0.0;
    for (std::size_t attempt = 0; attempt <= request.max_resamples && !problem; ++attempt) {
      const std::uint64_t problem_seed = attempt == 0 ? trial_seed : Rng::splitmix64(trial_seed * 1000003ULL + attempt);
      try {
        Problem candidate = sampler(problem_seed);
        exact = variable_elimination(candidate.net, candidate.evidence, candidate.query).probability;
        problem = std::move(candidate);
      } catch (const InconsistentEvidence&) {
      } catch (const OracleCapExceeded&) {
      }
    }
    if (!problem) throw Error("profiling: oracle rejected every resampled problem for trial " + std::to_string(trial));

    AnytimeState state = factory(*problem, trial_seed);
    declares = state.declares_precision();
    for (std::size_t k = 0; k < n_checks; ++k) {
      const std::uint64_t target = request.checkpoints[k];
      const std::uint64_t before = state.steps_taken();
      const auto start = std::chrono::steady_clock::now();
      if (target > before) state.advance(target - before);
      stepped_seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      stepped += state.steps_taken() - before;
      const Estimate est = state.estimate();
      errors[k].push_back(std::abs(est.mean - exact));
      declared[k].push_back(est.precision());
    }
  }

  PrecisionProfile profile;
  profile.strategy_id = request.strategy_id;
  profile.problem_class = request.problem_class;
  profile.source = EmpiricalSource{request.trials, request.quantile};
  if (request.steps_per_second) {
    profile.steps_per_second = *request.steps_per_second;
  } else {
    profile.steps_per_second = stepped > 0 ? static_cast<double>(stepped) / std::max(stepped_seconds, 1e-9) : 1.0;
  }

  double running = 0.0;
  for (std::size_t k = 0; k < n_checks; ++k) {
    std::sort(errors[k].begin(), errors[k].end());
    std::sort(declared[k].begin(), declared[k].end());
    double precision = declares ? nearest_rank(declared[k], 1.0 - request.quantile)
                                : 1.0 - 2.0 * nearest_rank(errors[k], request.quantile);
    precision = std::clamp(precision, 0.0, 1.0);
    running = std::max(running, precision);
    const double t = static_cast<double>(request.checkpoints[k]) / profile.steps_per_second;
    profile.points.emplace_back(t, running);
  }
  profile.check();
  return profile;
}

namespace {

using ordered = nlohmann::ordered_json;

}  // namespace

PrecisionProfile parse_profile(std::string_view text) {
  const auto root = detail::parse_json(text);
  if (!root.is_object()) throw ParseError("profile must be a JSON object");
  PrecisionProfile profile;
  auto str = [&root](const char* key) {
    auto it = root.find(key);
    if (it == root.end() || !it->is_string()) throw ParseError(std::string("profile: field '") + key + "' must be a string");
    return it->get<std::string>();
  };
  profile.strategy_id = str("strategy_id");
  profile.problem_class = str("problem_class");
  profile.steps_per_second = detail::number_at(root, "steps_per_second", "profile");

  auto source = root.find("source");
  if (source == root.end()) throw ParseError("profile: missing source");
  if (source->is_string() && source->get<std::string>() == "analytic") {
    profile.source = AnalyticSource{};
  } else if (source->is_object() && source->value("kind", "") == "empirical") {
    auto trials = source->find("trials");
    if (trials == source->end() || !trials->is_number_unsigned()) throw ParseError("profile: empirical source needs trials");
    profile.source = EmpiricalSource{trials->get<std::size_t>(), detail::number_at(*source, "quantile", "profile source")};
  } else {
    throw ParseError("profile: source must be \"analytic\" or {\"kind\": \"empirical\", ...}");
  }

  auto points = root.find("points");
  if (points == root.end() || !points->is_array()) throw ParseError("profile: points must be an array");
  for (const auto& pt : *points) {
    if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
      throw ParseError("profile: each point must be [t, precision]");
    }
    profile.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
  }
  try {
    profile.check();
  } catch (const ContractViolation& e) {
    throw ParseError(e.what());
  }
  return profile;
}

std::string serialize_profile(const PrecisionProfile& profile) {
  ordered root;
  root["strategy_id"] = profile.strategy_id;
  root["problem_class"] = profile.problem_class;
  if (const auto* emp = std::get_if<EmpiricalSource>(&profile.source)) {
    root["source"] = ordered{{"kind", "empirical"}, {"trials", emp->trials}, {"quantile", emp->quantile}};
  } else {
    root["source"] = "analytic";
  }
  root["steps_per_second"] = profile.steps_per_second;
  root["points"] = ordered::array();
  for (const auto& [t, p] : profile.points) root["points"].push_back(ordered::array({t, p}));
  return root.dump(2) + "\n";
}

PrecisionProfile load_profile(const std::filesystem::path& path) { return parse_profile(read_text_file(path)); }

void save_profile(const PrecisionProfile& profile, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write profile to '" + path.string() + "'");
  out << serialize_profile(profile);
}

std::vector<PrecisionProfile> load_catalog(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("catalog '" + dir.string() + "' is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<PrecisionProfile> catalog;
  for (const auto& f : files) catalog.push_back(load_profile(f));
  return catalog;
}

}  // namespace timewise
