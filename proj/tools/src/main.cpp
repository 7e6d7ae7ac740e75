#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "timewise/profile.hpp"

namespace cli = timewise::cli;

int main(int argc, char** argv) {
  CLI::App app{"timewise: anytime inference and time-critical strategy selection"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a network file and print its validation report");
  validate->add_option("network", validate_path, "Network JSON file")->required();

  cli::InferOptions infer_opts;
  auto* infer = app.add_subcommand("infer", "Estimate P(query | evidence)");
  infer->add_option("network", infer_opts.network, "Network JSON file")->required();
  infer->add_option("evidence", infer_opts.evidence, "Evidence, e.g. \"A=t,B=f\" (empty for none)")->required();
  infer->add_option("query", infer_opts.query, "Query, e.g. \"C=t\"")->required();
  infer->add_option("--strategy", infer_opts.strategy, "exact, sample, bounds, modulate or default")
      ->check(CLI::IsMember({"exact", "sample", "bounds", "modulate", "default"}))
      ->capture_default_str();
  infer->add_option("--budget", infer_opts.budget, "Steps granted to an anytime engine")->capture_default_str();
  infer->add_option("--seed", infer_opts.seed, "Sampler seed")->capture_default_str();
  infer->add_option("--ladder", infer_opts.ladder, "Importance thresholds for modulate, descending to 0")
      ->delimiter(',');
  infer->add_option("--table", infer_opts.table, "Default policy table (strategy default)");
  infer->add_option("--context", infer_opts.context, "Context key into the default policy table");

  cli::ScenarioOptions scenario_opts;
  auto* scenario = app.add_subcommand("scenario", "Run the selector and print value curves as CSV");
  scenario->add_option("builtin", scenario_opts.builtin, "icu-mild, icu-sharp or icu-extreme");
  scenario->add_option("--config", scenario_opts.config, "Scenario config JSON");
  scenario->add_option("--output", scenario_opts.output, "Write the CSV here instead of stdout");

  cli::ProfileOptions profile_opts;
  auto* profile = app.add_subcommand("profile", "Build a precision profile over random problems");
  profile->add_option("strategy", profile_opts.strategy, "sample, bounds, modulate or default")
      ->required()
      ->check(CLI::IsMember({"sample", "bounds", "modulate", "default"}));
  profile->add_option("--id", profile_opts.id, "Strategy id stored in the profile (defaults to the strategy)");
  profile->add_option("--nodes", profile_opts.nodes, "Nodes per random network")->capture_default_str();
  profile->add_option("--max-parents", profile_opts.max_parents, "Parent cap per node")->capture_default_str();
  profile->add_option("--cardinality", profile_opts.cardinality, "States per node")->capture_default_str();
  profile->add_option("--evidence", profile_opts.evidence, "Observed nodes per problem")->capture_default_str();
  profile->add_flag("--polytree", profile_opts.polytree, "Restrict to singly connected networks");
  profile->add_option("--trials", profile_opts.trials, "Problems per checkpoint (>= 10)")->capture_default_str();
  profile->add_option("--checkpoints", profile_opts.checkpoints, "Ascending step counts")->delimiter(',');
  profile->add_option("--seed", profile_opts.seed, "Base seed")->capture_default_str();
  profile->add_option("--quantile", profile_opts.quantile, "Error quantile")->capture_default_str();
  profile->add_option("--steps-per-second", profile_opts.steps_per_second,
                      "Fix the step rate instead of measuring it");
  profile->add_option("--ladder", profile_opts.ladder, "Importance thresholds for modulate")->delimiter(',');
  profile->add_option("--table", profile_opts.table, "Default policy table");
  profile->add_option("--context", profile_opts.context, "Context key into the default policy table");
  profile->add_option("--out", profile_opts.out_dir, "Output directory")->capture_default_str();

  app.footer(std::string("Environment: ") + timewise::kCatalogEnvVar +
             " names the profile catalog used when a scenario config gives none.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return cli::kExitUsage;
  }

  if (*validate) return cli::run_validate(validate_path, std::cout, std::cerr);
  if (*infer) return cli::run_infer(infer_opts, std::cout, std::cerr);
  if (*scenario) return cli::run_scenario(scenario_opts, std::cout, std::cerr);
  return cli::run_profile(profile_opts, std::cout, std::cerr);
}
