#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>

#include "timewise/control.hpp"
#include "timewise/engines.hpp"
#include "timewise/exact.hpp"
#include "timewise/network_io.hpp"
#include "timewise/problems.hpp"
#include "timewise/profile.hpp"
#include "timewise/scenario.hpp"

namespace timewise::cli {

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what();
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string seconds(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

struct EngineChoice {
  std::string strategy;
  std::vector<double> ladder;
  std::string table;
  std::string context;
};

AnytimeState make_engine(const EngineChoice& choice, std::shared_ptr<const Network> net, const Evidence& ev,
                         const Query& q, std::uint64_t seed) {
  if (choice.strategy == "sample") return make_logic_sampler(std::move(net), ev, q, seed);
  if (choice.strategy == "bounds") return make_bound_propagator(std::move(net), ev, q);
  if (choice.strategy == "modulate") return make_completeness_modulator(std::move(net), ev, q, choice.ladder);
  if (choice.strategy == "default") {
    if (choice.table.empty() || choice.context.empty()) {
      throw ParseError("strategy 'default' needs --table and --context");
    }
    return make_default_policy(load_default_policy_table(choice.table), choice.context);
  }
  throw ParseError("unknown strategy '" + choice.strategy + "'");
}

void print_estimate(std::ostream& out, const std::string& strategy, const Estimate& est, double elapsed) {
  out << "strategy: " << strategy << '\n'
      << "mean: " << g17(est.mean) << '\n'
      << "interval: [" << g17(est.low) << ", " << g17(est.high) << "]\n"
      << "width: " << g17(est.width()) << '\n'
      << "precision: " << g17(est.precision()) << '\n'
      << "steps: " << est.support << '\n'
      << "well_founded: " << (est.well_founded ? "true" : "false") << '\n'
      << "elapsed_seconds (wall-clock): " << seconds(elapsed) << '\n';
}

}  // namespace

int run_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NetworkData data = parse_network_data(read_text_file(path));
    const ValidationReport report = validate(data);
    if (report.ok()) {
      out << "ok: " << data.variables.size() << " chance nodes, " << data.decisions.size() << " decisions, "
          << data.values.size() << " value nodes\n";
      return kExitOk;
    }
    out << report.to_string();
    return kExitDomain;
  });
}

int run_infer(const InferOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto net = std::make_shared<const Network>(load_network(opts.network));
    const Evidence ev = parse_evidence(opts.evidence);
    const Query q = parse_query(opts.query);

    const auto start = std::chrono::steady_clock::now();
    if (opts.strategy == "exact") {
      const Posterior post = variable_elimination(*net, ev, q);
      const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      Estimate est{post.probability, post.probability, post.probability, 1, true};
      print_estimate(out, "exact", est, elapsed);
      return kExitOk;
    }
    AnytimeState state = make_engine({opts.strategy, opts.ladder, opts.table, opts.context}, net, ev, q, opts.seed);
    state.advance(opts.budget);
    const Estimate est = state.estimate();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    print_estimate(out, opts.strategy, est, elapsed);
    return kExitOk;
  });
}

int run_scenario(const ScenarioOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.builtin.empty() == opts.config.empty()) {
      throw ParseError("give exactly one of a builtin scenario name or --config");
    }
    Scenario scenario;
    std::optional<std::filesystem::path> output;
    if (!opts.builtin.empty()) {
      const auto names = builtin_scenario_names();
      if (std::find(names.begin(), names.end(), opts.builtin) == names.end()) {
        throw ParseError("unknown builtin scenario '" + opts.builtin + "'");
      }
      scenario = builtin_scenario(opts.builtin);
    } else {
      const ScenarioConfig cfg = load_scenario_config(opts.config);
      output = cfg.output;
      scenario = load_scenario(cfg);
    }
    if (!opts.output.empty()) output = opts.output;

    std::optional<double> complete;
    if (scenario.network) {
      complete = measure_complete_resources(*scenario.network, scenario.evidence, scenario.query).complete_seconds;
      err << "measured complete_resources_seconds (wall-clock): " << seconds(*complete) << '\n';
    }
    const MetaDecision decision =
        select_strategy(scenario.catalog, scenario.context, scenario.horizon, scenario.grid_n, complete);
    err << "metalevel_overhead_seconds (wall-clock): " << seconds(decision.metalevel_overhead_seconds) << '\n';

    const std::string csv = scenario_csv(decision);
    if (output) {
      std::ofstream file(*output, std::ios::binary);
      if (!file) throw Error("cannot write '" + output->string() + "'");
      file << csv;
    } else {
      out << csv;
    }
    out << selection_summary(decision) << '\n';
    return kExitOk;
  });
}

int run_profile(const ProfileOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ProblemClass cls;
    cls.nodes = opts.nodes;
    cls.max_parents = opts.max_parents;
    cls.cardinality = opts.cardinality;
    cls.evidence = opts.evidence;
    cls.polytree = opts.polytree;
    if (cls.cardinality < 2 || cls.nodes == 0 || cls.evidence >= cls.nodes) {
      throw ParseError("problem class needs nodes > evidence and cardinality >= 2");
    }
    const double bits = static_cast<double>(cls.nodes) * std::log2(static_cast<double>(cls.cardinality));
    if (bits > kDefaultOracleCapBits) {
      throw OracleCapExceeded("problem class " + cls.tag() + " exceeds the oracle scale of 2^" +
                              std::to_string(static_cast<int>(kDefaultOracleCapBits)) + " instantiations");
    }

    const EngineChoice choice{opts.strategy, opts.ladder, opts.table, opts.context};
    // Fail on a bad strategy before spending any trials.
    (void)make_engine(choice, std::make_shared<const Network>(random_network(cls, 0)),
                      {}, {"X0", "s0"}, 0);

    ProfileRequest request;
    request.strategy_id = opts.id.empty() ? opts.strategy : opts.id;
    request.problem_class = cls.tag();
    request.checkpoints = opts.checkpoints;
    request.trials = opts.trials;
    request.seed = opts.seed;
    request.quantile = opts.quantile;
    request.steps_per_second = opts.steps_per_second;

    const EngineFactory factory = [&](const Problem& p, std::uint64_t seed) {
      return make_engine(choice, std::make_shared<const Network>(p.net), p.evidence, p.query, seed)
          .relabel(request.strategy_id);
    };
    const ProblemSampler sampler = [&cls](std::uint64_t seed) { return random_problem(cls, seed); };
    const PrecisionProfile profile = profile_strategy(factory, sampler, request);

    const std::filesystem::path dir = opts.out_dir;
    std::filesystem::create_directories(dir);
    const auto path = dir / (profile.strategy_id + "__" + profile.problem_class + ".json");
    save_profile(profile, path);
    out << path.string() << '\n';
    return kExitOk;
  });
}

}  // namespace timewise::cli
