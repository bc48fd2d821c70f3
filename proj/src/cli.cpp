#include "fairsub/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fairsub/dataset.hpp"
#include "fairsub/errors.hpp"
#include "fairsub/experiment.hpp"
#include "fairsub/formats.hpp"
#include "fairsub/hypervolume.hpp"
#include "fairsub/metrics.hpp"
#include "fairsub/nsga2.hpp"
#include "fairsub/pipeline.hpp"

namespace fairsub::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kOutputDirEnv = "FAIRSUB_OUTPUT_DIR";

struct DataOptions {
  std::string path;
  std::string group_column = "group";
  std::string outcome_column = "outcome";
  std::string positive_label = "1";
  std::string negative_label;
  std::vector<std::string> universe;

  void attach(CLI::App& app) {
    app.add_option("--data", path, "Input CSV (header row required)")->required();
    app.add_option("--group-col", group_column, "Protected-attribute column")->capture_default_str();
    app.add_option("--outcome-col", outcome_column, "Binary outcome column")->capture_default_str();
    app.add_option("--positive-label", positive_label, "Outcome value counted as positive")
        ->capture_default_str();
    app.add_option("--negative-label", negative_label,
                   "Outcome value counted as negative (default: 0 when the positive label is 1, else inferred)");
    app.add_option("--universe", universe,
                   "Group labels of the parent dataset, comma separated; evaluates a subset against them")
        ->delimiter(',');
  }

  [[nodiscard]] Dataset load() const {
    LoadOptions opts{group_column, outcome_column, positive_label, negative_label, std::nullopt};
    if (!universe.empty()) opts.universe = universe;
    return load_csv(path, opts);
  }
};

struct SolverOptions {
  std::size_t population = 200;
  std::size_t generations = 400;
  std::string initializer = "variable";
  double p = 0.5;
  double p_min = 0.5;
  double p_max = 0.99;
  std::string selection = "elitist";
  std::string crossover = "one_point";
  std::string mutation = "bit_flip";
  double mutation_rate = 0.05;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  void attach(CLI::App& app) {
    app.add_option("--population", population, "Population size M")->capture_default_str();
    app.add_option("--generations", generations, "Number of generations G")->capture_default_str();
    app.add_option("--initializer", initializer, "random | variable")->capture_default_str();
    app.add_option("--p", p, "Inclusion probability of the random initializer")->capture_default_str();
    app.add_option("--p-min", p_min, "Lower bound of the variable initializer range")->capture_default_str();
    app.add_option("--p-max", p_max, "Upper bound of the variable initializer range")->capture_default_str();
    app.add_option("--selection", selection, "elitist | tournament")->capture_default_str();
    app.add_option("--crossover", crossover, "one_point | uniform")->capture_default_str();
    app.add_option("--mutation", mutation, "bit_flip | shuffle")->capture_default_str();
    app.add_option("--mutation-rate", mutation_rate, "Bit flip probability")->capture_default_str();
    app.add_option("--seed", seed, "Master random seed")->capture_default_str();
    app.add_option("--jobs", jobs, "Worker threads (results do not depend on it)")->capture_default_str();
  }

  [[nodiscard]] GaConfig config() const {
    GaConfig cfg;
    cfg.population_size = population;
    cfg.generations = generations;
    cfg.operators.initializer = {parse_initializer(initializer), p, p_min, p_max};
    cfg.operators.selection = parse_selection(selection);
    cfg.operators.crossover = parse_crossover(crossover);
    cfg.operators.mutation = parse_mutation(mutation);
    cfg.mutation_rate = mutation_rate;
    cfg.seed = seed;
    cfg.jobs = jobs;
    cfg.validate();
    return cfg;
  }
};

std::string resolve_path(const std::string& out_dir, const std::string& explicit_path, const std::string& name) {
  fs::path path = explicit_path.empty() ? fs::path(out_dir) / name : fs::path(explicit_path);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  return path.string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + path + "'");
  file << text;
}

void add_common(CLI::App& app, std::string& out_dir) {
  // the file itself is expanded by expand_config before parsing
  app.add_option("--config")
      ->description("Read key=value options from a file; command-line flags take precedence")
      ->type_name("FILE");
  app.add_option("--out-dir", out_dir, "Directory for default output files")
      ->envname(kOutputDirEnv)
      ->capture_default_str();
}

std::string group_count_table(const Dataset& d) {
  const GroupStats s = group_stats(d);
  std::ostringstream out;
  for (GroupId g = 0; g < s.group_count(); ++g) {
    out << "  " << d.group_label(g) << ": " << s.total[g] << " rows, " << s.positive[g] << " positive\n";
  }
  return out.str();
}

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

bool given_on_command_line(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

/// Splices the entries of a subcommand's --config file into the argument list,
/// right after the subcommand name, for every key not already on the command line.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  std::size_t sub_pos = 1;
  while (sub_pos < args.size() && app.get_subcommand_no_throw(args[sub_pos]) == nullptr) ++sub_pos;
  if (sub_pos >= args.size()) return args;
  CLI::App* sub = app.get_subcommand(args[sub_pos]);

  std::string path;
  for (std::size_t i = sub_pos + 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::string> injected;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string entry = trim(line);
    if (entry.empty() || entry[0] == '#' || entry[0] == ';') continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(entry.substr(0, eq));
    std::string value = trim(entry.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr || key == "config" || key == "help") {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown option '" + key + "' for " +
                        sub->get_name());
    }
    if (given_on_command_line(args, flag)) continue;
    if (opt->get_expected_max() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") {
        injected.push_back(flag);
      } else if (!(value == "false" || value == "0" || value == "no" || value == "off")) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": '" + key + "' takes true or false");
      }
    } else {
      injected.push_back(flag);
      injected.push_back(value);
    }
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, injected.begin(), injected.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair subset selection: remove rows to reduce group discrimination while keeping coverage and data"};
  app.require_subcommand(1);
  app.name(args.empty() ? "fairsub" : fs::path(args.front()).filename().string());

  // metrics
  auto* metrics_cmd = app.add_subcommand("metrics", "Discrimination, coverage and per-group rates of a dataset");
  DataOptions metrics_data;
  std::string metrics_out_dir = ".";
  double metrics_epsilon = 0.01;
  std::string metrics_aggregation = "max";
  std::string metrics_format = "both";
  std::string metrics_json_out;
  metrics_data.attach(*metrics_cmd);
  add_common(*metrics_cmd, metrics_out_dir);
  metrics_cmd->add_option("--epsilon", metrics_epsilon, "Missing-group penalty offset")->capture_default_str();
  metrics_cmd->add_option("--aggregation", metrics_aggregation, "max | sum")->capture_default_str();
  metrics_cmd->add_option("--format", metrics_format, "table | json | both")->capture_default_str();
  metrics_cmd->add_option("--json-out", metrics_json_out, "Also write the JSON object to this file");

  // split
  auto* split_cmd = app.add_subcommand("split", "Stratified train/test split on the protected attribute");
  DataOptions split_data;
  std::string split_out_dir = ".";
  double test_fraction = 0.2;
  std::uint64_t split_seed = 0;
  std::string train_out, test_out;
  split_data.attach(*split_cmd);
  add_common(*split_cmd, split_out_dir);
  split_cmd->add_option("--test-fraction", test_fraction, "Share of each group placed in the test set")
      ->capture_default_str();
  split_cmd->add_option("--seed", split_seed, "Random seed")->capture_default_str();
  split_cmd->add_option("--train-out", train_out, "Train CSV (default <out-dir>/train.csv)");
  split_cmd->add_option("--test-out", test_out, "Test CSV (default <out-dir>/test.csv)");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic dataset with group-dependent positive rates");
  std::string synth_out_dir = ".";
  SynthSpec synth;
  synth.group_weights = {0.5, 0.5};
  synth.positive_rates = {0.8, 0.3};
  std::string synth_out;
  add_common(*synth_cmd, synth_out_dir);
  synth_cmd->add_option("--n", synth.n, "Number of rows")->capture_default_str();
  synth_cmd->add_option("--weights", synth.group_weights, "Group probabilities, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--rates", synth.positive_rates, "Positive rate per group, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output CSV (default <out-dir>/synthetic.csv)");

  // preprocess
  auto* pre_cmd = app.add_subcommand("preprocess", "Select a fair subset and write it with a report");
  DataOptions pre_data;
  SolverOptions pre_solver;
  std::string pre_out_dir = ".";
  std::string pre_mode = "multi";
  Scalarization scal;
  std::string pre_beta = "absolute";
  std::string pre_aggregation = "max";
  std::string subset_out, report_out, pre_front_out;
  std::string index_column = "row_index";
  bool emit_front = false;
  bool record_timing = false;
  pre_data.attach(*pre_cmd);
  pre_solver.attach(*pre_cmd);
  add_common(*pre_cmd, pre_out_dir);
  pre_cmd->add_option("--mode", pre_mode, "single (weighted sum) | multi (NSGA-II + front selection)")
      ->capture_default_str();
  pre_cmd->add_option("--alpha", scal.alpha, "Weight of discrimination in the single-objective fitness")
      ->capture_default_str();
  pre_cmd->add_option("--beta", pre_beta, "absolute (1+epsilon) | relative (discrimination of the input)")
      ->capture_default_str();
  pre_cmd->add_option("--epsilon", scal.epsilon, "Missing-group penalty offset")->capture_default_str();
  pre_cmd->add_option("--aggregation", pre_aggregation, "max | sum")->capture_default_str();
  pre_cmd->add_option("--out", subset_out, "Fair subset CSV (default <out-dir>/fair.csv)");
  pre_cmd->add_option("--report", report_out, "Report JSON (default <out-dir>/report.json)");
  pre_cmd->add_option("--index-column", index_column, "Name of the appended original-row-index column")
      ->capture_default_str();
  pre_cmd->add_flag("--emit-front", emit_front, "Also write the Pareto front (multi mode)");
  pre_cmd->add_option("--front-out", pre_front_out, "Front JSONL (default <out-dir>/front.jsonl)");
  pre_cmd->add_flag("--record-timing", record_timing, "Include wall-clock seconds in the report");

  // pareto
  auto* pareto_cmd = app.add_subcommand("pareto", "Run NSGA-II and dump the Pareto front");
  DataOptions pareto_data;
  SolverOptions pareto_solver;
  pareto_solver.population = 100;
  pareto_solver.generations = 200;
  std::string pareto_out_dir = ".";
  double pareto_epsilon = 0.01;
  std::string pareto_front_out;
  pareto_data.attach(*pareto_cmd);
  pareto_solver.attach(*pareto_cmd);
  add_common(*pareto_cmd, pareto_out_dir);
  pareto_cmd->add_option("--epsilon", pareto_epsilon, "Missing-group penalty offset")->capture_default_str();
  pareto_cmd->add_option("--front-out", pareto_front_out, "Front JSONL (default <out-dir>/front.jsonl)");

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Hypervolume of every operator combination over repeated trials");
  DataOptions grid_data;
  GridConfig grid;
  std::string grid_out_dir = ".";
  grid_data.attach(*grid_cmd);
  add_common(*grid_cmd, grid_out_dir);
  grid_cmd->add_option("--population", grid.population_size, "Population size M")->capture_default_str();
  grid_cmd->add_option("--generations", grid.generations, "Number of generations G")->capture_default_str();
  grid_cmd->add_option("--trials", grid.trials, "Runs per operator combination")->capture_default_str();
  grid_cmd->add_option("--mutation-rate", grid.mutation_rate, "Bit flip probability")->capture_default_str();
  grid_cmd->add_option("--p", grid.random_init.p, "Inclusion probability of the random initializer")
      ->capture_default_str();
  grid_cmd->add_option("--p-min", grid.variable_init.p_min, "Variable initializer lower bound")
      ->capture_default_str();
  grid_cmd->add_option("--p-max", grid.variable_init.p_max, "Variable initializer upper bound")
      ->capture_default_str();
  grid_cmd->add_option("--epsilon", grid.penalty.epsilon, "Missing-group penalty offset")->capture_default_str();
  grid_cmd->add_option("--seed", grid.seed, "Master seed; trial t uses a seed derived from (seed, t)")
      ->capture_default_str();
  grid_cmd->add_option("--jobs", grid.jobs, "Worker threads (results do not depend on it)")->capture_default_str();

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(app, args);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  }
  std::vector<const char*> argv;
  argv.reserve(expanded.size() + 1);
  if (expanded.empty()) argv.push_back("fairsub");
  for (const auto& a : expanded) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUserError;
  }

  try {
    if (metrics_cmd->parsed()) {
      const Dataset d = metrics_data.load();
      const PenaltyConfig penalty{metrics_epsilon, parse_aggregation(metrics_aggregation)};
      const MetricsSummary summary = summarize(d, penalty);
      const std::string json = metrics_json(summary, d.name());
      if (metrics_format != "table" && metrics_format != "json" && metrics_format != "both") {
        throw ConfigError("unknown format '" + metrics_format + "' (expected table|json|both)");
      }
      if (metrics_format != "json") out << metrics_table(summary);
      if (metrics_format != "table") out << json;
      if (!metrics_json_out.empty()) write_text(resolve_path(metrics_out_dir, metrics_json_out, ""), json);
    } else if (split_cmd->parsed()) {
      const Dataset d = split_data.load();
      const SplitPair split = stratified_split(d, test_fraction, split_seed);
      const std::string train_path = resolve_path(split_out_dir, train_out, "train.csv");
      const std::string test_path = resolve_path(split_out_dir, test_out, "test.csv");
      write_csv_file(train_path, split.train);
      write_csv_file(test_path, split.test);
      out << "train (" << split.train.size() << " rows) -> " << train_path << '\n' << group_count_table(split.train);
      out << "test (" << split.test.size() << " rows) -> " << test_path << '\n' << group_count_table(split.test);
    } else if (synth_cmd->parsed()) {
      const Dataset d = synthesize(synth);
      const std::string path = resolve_path(synth_out_dir, synth_out, "synthetic.csv");
      write_csv_file(path, d);
      out << "wrote " << d.size() << " rows -> " << path << '\n'
          << group_count_table(d) << "psi (max) " << format_fixed(psi(d), 4) << '\n';
    } else if (pre_cmd->parsed()) {
      const Dataset d = pre_data.load();
      scal.beta_mode = parse_beta_mode(pre_beta);
      const SolverMode mode = parse_solver_mode(pre_mode);
      const PreprocessResult result =
          preprocess(d, mode, scal, pre_solver.config(), parse_aggregation(pre_aggregation));
      const std::string subset_path = resolve_path(pre_out_dir, subset_out, "fair.csv");
      const std::string report_path = resolve_path(pre_out_dir, report_out, "report.json");
      write_csv_file(subset_path, result.subset, index_column);
      write_text(report_path, report_json(result.report, d.name(), record_timing));
      for (const auto& w : result.report.warnings) err << "warning: " << w << '\n';
      if (emit_front) {
        if (!result.front) throw ConfigError("--emit-front needs --mode multi");
        const std::string front_path = resolve_path(pre_out_dir, pre_front_out, "front.jsonl");
        std::ofstream front_file(front_path, std::ios::binary);
        if (!front_file) throw ConfigError("cannot write '" + front_path + "'");
        write_front_jsonl(front_file, *result.front, d);
        out << "front (" << result.front->size() << " solutions) -> " << front_path << '\n';
      }
      const auto& r = result.report;
      out << "psi_hat " << format_fixed(r.psi_original, 4) << " -> " << format_fixed(r.psi_fair, 4)
          << ", retained " << format_fixed(r.retained, 4) << " (" << r.rows_fair << "/" << r.rows_original
          << ")\n"
          << "subset -> " << subset_path << "\nreport -> " << report_path << '\n';
    } else if (pareto_cmd->parsed()) {
      const Dataset d = pareto_data.load();
      const ParetoFront front = run_nsga2(d, PenaltyConfig{pareto_epsilon, Aggregation::max}, pareto_solver.config());
      const std::string front_path = resolve_path(pareto_out_dir, pareto_front_out, "front.jsonl");
      std::ofstream front_file(front_path, std::ios::binary);
      if (!front_file) throw ConfigError("cannot write '" + front_path + "'");
      write_front_jsonl(front_file, front, d);
      const auto points = front.points();
      out << "front (" << front.size() << " solutions) -> " << front_path << '\n'
          << "hypervolume " << format_fixed(hypervolume_2d(points), 4) << '\n';
    } else if (grid_cmd->parsed()) {
      const Dataset d = grid_data.load();
      const GridResult result = run_grid(d, grid);
      const std::string trials_path = resolve_path(grid_out_dir, "", "grid_trials.csv");
      const std::string summary_path = resolve_path(grid_out_dir, "", "grid_summary.csv");
      write_text(trials_path, grid_trials_csv(result));
      write_text(summary_path, grid_summary_csv(result));
      out << grid_summary_table(result) << "trials -> " << trials_path << "\nsummary -> " << summary_path << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace fairsub::cli
