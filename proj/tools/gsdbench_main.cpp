#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsdbench/io.hpp"

namespace {

using namespace gsdbench;

bool warnings_enabled() {
  const char* level = std::getenv("GSDBENCH_LOG");
  return !(level && std::string(level) == "quiet");
}

void report_warnings(const std::vector<std::string>& warnings) {
  if (!warnings_enabled()) return;
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string slurp_input(const std::string& source) {
  if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0)
    return fetch_csv(source);
  return read_text_file(source);
}

PerformanceTable load_table(const std::string& source,
                            const AnalysisConfig& config) {
  IngestResult r = ingest(read_csv_text(slurp_input(source)), config);
  report_warnings(r.warnings);
  if (!r.violations.empty()) {
    std::string msg = "input rejected:";
    for (const auto& v : r.violations) msg += "\n  " + v;
    throw DataError(msg);
  }
  return std::move(r.table);
}

ordered_json report_root(const std::string& command, std::uint64_t seed) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["seed"] = seed;
  return j;
}

struct CommonArgs {
  std::string input;
  std::string config_path;
  std::string out_prefix = "report";
  std::uint64_t seed = 0;
  bool seed_set = false;
  double alpha = 0.0;
  bool alpha_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_alpha) {
  cmd->add_option("input", args.input, "CSV file or http(s) URL")->required();
  cmd->add_option("--config", args.config_path, "analysis config (JSON)")
      ->required();
  cmd->add_option("--out", args.out_prefix, "output file prefix");
  cmd->add_option("--seed", args.seed, "override the config seed")
      ->each([&](const std::string&) { args.seed_set = true; });
  if (with_alpha)
    cmd->add_option("--alpha", args.alpha, "override the config level")
        ->each([&](const std::string&) { args.alpha_set = true; });
}

AnalysisConfig resolve_config(const CommonArgs& args) {
  AnalysisConfig config = load_config(args.config_path);
  if (args.seed_set) config.seed = args.seed;
  if (args.alpha_set) {
    if (!(args.alpha > 0.0 && args.alpha < 1.0))
      throw DataError("--alpha must lie in (0,1)");
    config.alpha = args.alpha;
  }
  return config;
}

int run_analyze(const CommonArgs& args, double epsilon_override,
                bool epsilon_set) {
  AnalysisConfig config = resolve_config(args);
  if (epsilon_set) config.epsilon = epsilon_override;
  PerformanceTable table = load_table(args.input, config);
  const double epsilon =
      config.epsilon ? *config.epsilon
                     : epsilon_schedule(table.datasets.size());

  DominanceMatrix matrix = dominance_matrix(table, config.delta);
  FrontResult gsd = gsd_front(matrix, epsilon);
  FrontResult pareto = pareto_front(table);
  DominanceMatrix fsd = fsd_matrix(table, config.delta);
  FrontResult fsd_front_result = gsd_front(fsd, epsilon);
  DominanceGraph graph = dominance_graph(matrix);

  ordered_json root = report_root("analyze", config.seed);
  root["delta"] = config.delta;
  root["epsilon"] = epsilon;
  root["table"] = table_summary_json(table);
  root["matrix"] = matrix_json(matrix);
  root["fsd_matrix"] = matrix_json(fsd);
  ordered_json fronts;
  fronts["gsd"] = front_json(gsd, table.classifiers);
  fronts["pareto"] = front_json(pareto, table.classifiers);
  fronts["fsd"] = front_json(fsd_front_result, table.classifiers);
  root["fronts"] = fronts;

  write_text_file(args.out_prefix + ".json", render_json(root));
  write_text_file(args.out_prefix + ".dot",
                  std::string("// ") + kToolVersion + "\n" +
                      to_dot(graph, table.classifiers));
  return 0;
}

int run_test(const CommonArgs& args, const std::string& target, bool dynamic,
             bool exhaustive) {
  AnalysisConfig config = resolve_config(args);
  PerformanceTable table = load_table(args.input, config);
  const std::size_t target_index = table.classifier_index(target);

  ResamplingPlan plan;
  plan.mode = exhaustive ? ResamplingPlan::Mode::Exhaustive
                         : ResamplingPlan::Mode::Sampled;
  plan.n_resamples = static_cast<std::uint64_t>(config.n_resamples);
  plan.seed = config.seed;

  ordered_json root = report_root("test", config.seed);
  root["delta"] = config.delta;
  ordered_json pj;
  pj["mode"] = exhaustive ? "exhaustive" : "sampled";
  pj["n_resamples"] = config.n_resamples;
  pj["include_observed"] = plan.include_observed;
  root["plan"] = pj;
  if (dynamic) {
    SelectionTestResult result =
        dynamic_gsd_test(table, target_index, config.alpha, plan, config.delta);
    root["result"] = dynamic_test_json(result, table.classifiers);
  } else {
    MultiTestResult result =
        static_gsd_test(table, target_index, config.alpha, plan, config.delta);
    root["result"] = static_test_json(result, table.classifiers);
  }
  write_text_file(args.out_prefix + ".json", render_json(root));
  return 0;
}

int run_robust(const CommonArgs& args, const std::string& target,
               int k_max_override, bool k_max_set) {
  AnalysisConfig config = resolve_config(args);
  if (k_max_set) config.k_max = k_max_override;
  PerformanceTable table = load_table(args.input, config);
  const std::size_t target_index = table.classifier_index(target);

  ResamplingPlan plan;
  plan.n_resamples = static_cast<std::uint64_t>(config.n_resamples);
  plan.seed = config.seed;

  RobustnessReport report = contamination_report(table, target_index, plan,
                                                 config.delta, config.k_max);

  const std::size_t candidates = report.pairwise.size();
  const double pair_level =
      config.alpha / static_cast<double>(candidates == 0 ? 1 : candidates);

  ordered_json root = report_root("robust", config.seed);
  root["alpha"] = config.alpha;
  root["delta"] = config.delta;
  root["n_resamples"] = config.n_resamples;
  root["curves"] = robustness_json(report, table.classifiers);

  ordered_json breakdown;
  breakdown["static_level"] = config.alpha;
  auto static_k = breakdown_point(report.aggregate, config.alpha, report.k_max);
  if (static_k) breakdown["static_k"] = *static_k;
  else breakdown["static_k"] = nullptr;
  breakdown["pairwise_level"] = pair_level;
  ordered_json per_pair = ordered_json::array();
  for (const auto& curve : report.pairwise) {
    ordered_json cj;
    cj["candidate"] = table.classifiers[curve.candidate];
    auto k = breakdown_point(curve.p_by_k, pair_level, report.k_max);
    if (k) cj["k"] = *k;
    else cj["k"] = nullptr;
    per_pair.push_back(cj);
  }
  breakdown["pairwise"] = per_pair;
  root["breakdown"] = breakdown;

  write_text_file(args.out_prefix + ".json", render_json(root));
  return 0;
}

int run_baseline(const CommonArgs& args) {
  AnalysisConfig config = resolve_config(args);
  PerformanceTable table = load_table(args.input, config);
  MarginalFrontResult result = marginal_front(table, config.alpha);

  ordered_json root = report_root("baseline", config.seed);
  root["marginal"] = marginal_front_json(result, table);
  write_text_file(args.out_prefix + ".json", render_json(root));
  return 0;
}

int run_simulate(const std::string& model_path,
                 const std::vector<std::size_t>& s_grid, std::size_t runs,
                 double epsilon_scale, std::uint64_t seed,
                 const std::string& out_prefix) {
  PopulationModel model =
      model_path == "default" ? default_model() : load_model(model_path);
  ExperimentReport report =
      consistency_experiment(model, s_grid, runs, epsilon_scale, seed);

  ordered_json root = report_root("simulate", seed);
  root["model"] = ordered_json::parse(model_to_json(model));
  root["population_front"] =
      front_json(population_gsd_front(model), model.classifiers);
  root["experiment"] = experiment_json(report);
  write_text_file(out_prefix + ".json", render_json(root));
  write_text_file(out_prefix + ".csv", experiment_rows_csv(report));
  return 0;
}

int run_validate(const std::string& input, const std::string& config_path) {
  AnalysisConfig config = load_config(config_path);
  IngestResult r = ingest(read_csv_text(slurp_input(input)), config);
  for (const auto& w : r.warnings) std::cout << "warning: " << w << "\n";
  if (r.violations.empty()) {
    std::cout << "ok: " << r.table.classifiers.size() << " classifiers, "
              << r.table.datasets.size() << " datasets, "
              << r.table.scale.size() << " metrics\n";
    return 0;
  }
  for (const auto& v : r.violations) std::cout << "violation: " << v << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classifier comparison under mixed-scale multidimensional "
               "quality metrics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonArgs analyze_args;
  double epsilon_override = 0.0;
  bool epsilon_set = false;
  auto* analyze = app.add_subcommand(
      "analyze", "Dominance matrix, fronts, and dominance graph");
  add_common(analyze, analyze_args, false);
  analyze->add_option("--epsilon", epsilon_override, "front slack override")
      ->each([&](const std::string&) { epsilon_set = true; });

  CommonArgs test_args;
  std::string test_target;
  bool test_dynamic = false, test_static = false, test_exhaustive = false;
  auto* test = app.add_subcommand("test", "Permutation tests against a target");
  add_common(test, test_args, true);
  test->add_option("--target", test_target, "classifier under test")->required();
  auto* static_flag = test->add_flag("--static", test_static,
                                     "front-membership test (default)");
  test->add_flag("--dynamic", test_dynamic, "maximal-set identification")
      ->excludes(static_flag);
  test->add_flag("--exhaustive", test_exhaustive,
                 "enumerate all index sets instead of sampling");

  CommonArgs robust_args;
  std::string robust_target;
  int k_max_override = -1;
  bool k_max_set = false;
  auto* robust = app.add_subcommand(
      "robust", "Contamination curves and breakdown points");
  add_common(robust, robust_args, true);
  robust->add_option("--target", robust_target, "classifier under test")
      ->required();
  robust->add_option("--k-max", k_max_override, "largest contamination count")
      ->each([&](const std::string&) { k_max_set = true; });

  CommonArgs baseline_args;
  auto* baseline = app.add_subcommand(
      "baseline", "Per-metric rank tests and the marginal front");
  add_common(baseline, baseline_args, true);

  std::string model_path = "default";
  std::vector<std::size_t> s_grid = {50, 200, 800};
  std::size_t sim_runs = 50;
  double epsilon_scale = 1.0;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "report";
  auto* simulate = app.add_subcommand(
      "simulate", "Front-recovery experiment on a sampled population");
  simulate->add_option("--model", model_path,
                       "model JSON file, or 'default' for the shipped model");
  simulate->add_option("--s-grid", s_grid, "sample sizes")->delimiter(',');
  simulate->add_option("--runs", sim_runs, "replications per sample size");
  simulate->add_option("--epsilon-scale", epsilon_scale,
                       "front slack is epsilon-scale / s^(1/4)");
  simulate->add_option("--seed", sim_seed, "base seed");
  simulate->add_option("--out", sim_out, "output file prefix");

  std::string validate_input, validate_config;
  auto* validate = app.add_subcommand(
      "validate", "Dry-run ingestion and list violations");
  validate->add_option("input", validate_input, "CSV file or http(s) URL")
      ->required();
  validate->add_option("--config", validate_config, "analysis config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(analyze))
      return run_analyze(analyze_args, epsilon_override, epsilon_set);
    if (app.got_subcommand(test))
      return run_test(test_args, test_target, test_dynamic, test_exhaustive);
    if (app.got_subcommand(robust))
      return run_robust(robust_args, robust_target, k_max_override, k_max_set);
    if (app.got_subcommand(baseline)) return run_baseline(baseline_args);
    if (app.got_subcommand(simulate))
      return run_simulate(model_path, s_grid, sim_runs, epsilon_scale, sim_seed,
                          sim_out);
    if (app.got_subcommand(validate))
      return run_validate(validate_input, validate_config);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gsdbench::FetchError& e) {
    std::cerr << "fetch error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
