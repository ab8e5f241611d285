#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "monodep/cli.hpp"
#include "monodep/errors.hpp"
#include "monodep/io.hpp"

namespace {

using monodep::cli::CliConfig;

void add_data_options(CLI::App* cmd, CliConfig& config) {
  cmd->add_option("-i,--input", config.input_path, "Input CSV file, '-' for stdin")
      ->capture_default_str();
  cmd->add_option("-y,--outcome", config.outcome_column, "Outcome column name")->required();
  cmd->add_option("-x,--predictor", config.predictor_columns, "Predictor column name (repeatable)")
      ->required();
}

void add_method_options(CLI::App* cmd, CliConfig& config, std::string& method) {
  cmd->add_option("--method", method, "Covariance method: plugin or bootstrap")
      ->check(CLI::IsMember({"plugin", "bootstrap"}))
      ->capture_default_str();
  cmd->add_option("--bootstrap-b", config.bootstrap_b, "Bootstrap replicates (>= 100)")
      ->capture_default_str();
  cmd->add_option("--seed", config.seed, "Random seed for bootstrap resampling")
      ->capture_default_str();
}

void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("-f,--format", format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

std::vector<monodep::MeasureKind> parse_measures(const std::vector<std::string>& names) {
  std::vector<monodep::MeasureKind> out;
  for (const std::string& name : names) out.push_back(monodep::measure_from_name(name));
  return out;
}

void load_custom_pmf(const std::string& path, monodep::ScenarioSpec& scenario) {
  std::ifstream file(path);
  if (!file) throw monodep::ValidationError("cannot open pmf file '" + path + "'");
  const monodep::io::CsvTable table = monodep::io::read_csv(file);
  std::size_t xi = table.header.size(), yi = xi, pi = xi;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (table.header[i] == "x") xi = i;
    if (table.header[i] == "y") yi = i;
    if (table.header[i] == "p") pi = i;
  }
  if (xi == table.header.size() || yi == table.header.size() || pi == table.header.size()) {
    throw monodep::ValidationError("pmf file needs columns x, y, p");
  }
  for (const std::vector<std::string>& row : table.rows) {
    double x = 0.0, y = 0.0, p = 0.0;
    if (!monodep::io::parse_cell(row[xi], x) || !monodep::io::parse_cell(row[yi], y) ||
        !monodep::io::parse_cell(row[pi], p)) {
      throw monodep::ValidationError("pmf file has a missing cell");
    }
    scenario.custom_x.push_back(x);
    scenario.custom_y.push_back(y);
    scenario.custom_p.push_back(p);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-based dependence measures and inference for paired data"};
  app.require_subcommand(1);

  CliConfig config;
  std::string method = "plugin";
  std::string format = "json";
  std::vector<std::string> measure_names;
  std::string design = "correlated-normal";
  std::string sim_test = "pairwise";
  std::string sim_mode = "calibration";
  std::string marginal_x = "std-normal";
  std::string marginal_y = "std-normal";
  std::string pmf_path;
  bool two_sided = false;

  CLI::App* compute = app.add_subcommand("compute", "Dependence measures per predictor");
  add_data_options(compute, config);
  compute->add_option("-m,--measure", measure_names,
                      "Measure: agc cma auc cid akc rga cpa spearman kendall (repeatable; "
                      "default agc cma)");
  add_format_option(compute, format);

  CLI::App* test = app.add_subcommand(
      "test", "Hypothesis test: simple (1 predictor + --null), pairwise (2), contrasts (>= 3 "
              "or --contrasts)");
  add_data_options(test, config);
  double null_value = 0.0;
  CLI::Option* null_opt =
      test->add_option("--null", null_value, "Null value for a single-predictor test");
  test->add_option("-m,--measure", measure_names, "Scale for the simple test: agc or cma");
  test->add_option("--contrasts", config.contrast_file,
                   "CSV contrast matrix (no header, one row per contrast)");
  test->add_flag("--flip", config.flip,
                 "Flip the one-sided orientation of the pairwise test");
  add_method_options(test, config, method);
  add_format_option(test, format);

  CLI::App* ci = app.add_subcommand("ci", "Confidence interval for one predictor");
  add_data_options(ci, config);
  ci->add_option("-m,--measure", measure_names, "Interval scale: agc or cma");
  ci->add_option("--level", config.level, "Confidence level in (0.5, 1)")->capture_default_str();
  add_method_options(ci, config, method);
  add_format_option(ci, format);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo calibration and convergence");
  simulate->add_option("--design", design,
                       "correlated-normal, correlated-normal-rounded, bivariate-normal, "
                       "triangle, independent, custom")
      ->capture_default_str();
  simulate->add_option("-n,--n", config.scenario.n, "Sample size per replicate (>= 10)")
      ->capture_default_str();
  simulate->add_option("--replicates", config.scenario.replicates, "Number of replicates")
      ->capture_default_str();
  simulate->add_option("--sim-seed", config.scenario.seed, "Seed for the data generator")
      ->capture_default_str();
  simulate->add_option("--r", config.scenario.r, "Correlation for bivariate-normal")
      ->capture_default_str();
  simulate->add_option("--test", sim_test, "Test to calibrate: simple, pairwise, contrasts")
      ->capture_default_str();
  simulate->add_flag("--two-sided", two_sided, "Use two-sided p-values (default one-sided)");
  simulate->add_option("--mode", sim_mode, "calibration or value")->capture_default_str();
  simulate->add_option("--marginal-x", marginal_x,
                       "independent design: std-normal, uniform01, uniform-levels");
  simulate->add_option("--marginal-y", marginal_y,
                       "independent design: std-normal, uniform01, uniform-levels");
  simulate->add_option("--levels-x", config.scenario.marginal_x.levels,
                       "Levels for a uniform-levels x marginal");
  simulate->add_option("--levels-y", config.scenario.marginal_y.levels,
                       "Levels for a uniform-levels y marginal");
  simulate->add_option("--pmf", pmf_path, "custom design: CSV with columns x, y, p");
  simulate->add_option("--histogram-csv", config.histogram_csv_path,
                       "Also write the p-value histogram to this CSV file");
  add_method_options(simulate, config, method);
  add_format_option(simulate, format);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Population measures of a finite joint pmf (CSV columns x, y, p)");
  oracle->add_option("-i,--input", config.input_path, "Input pmf CSV, '-' for stdin")
      ->capture_default_str();
  oracle->add_option("--alpha", config.oracle_alphas,
                     "Dichotomization level for an extra AUC record (repeatable)");
  add_format_option(oracle, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) config.command = monodep::cli::Command::compute;
    if (test->parsed()) config.command = monodep::cli::Command::test;
    if (ci->parsed()) config.command = monodep::cli::Command::ci;
    if (simulate->parsed()) config.command = monodep::cli::Command::simulate;
    if (oracle->parsed()) config.command = monodep::cli::Command::oracle;

    if (!measure_names.empty()) config.measures = parse_measures(measure_names);
    config.method = method == "bootstrap" ? monodep::CovarianceMethod::bootstrap
                                          : monodep::CovarianceMethod::plugin;
    config.format = format == "csv" ? monodep::cli::Format::csv : monodep::cli::Format::json;
    if (null_opt->count() > 0) config.null_value = null_value;

    if (simulate->parsed()) {
      config.scenario.design = monodep::design_from_name(design);
      config.sim_test = monodep::test_kind_from_name(sim_test);
      config.sim_one_sided = !two_sided;
      config.sim_mode =
          sim_mode == "value" ? monodep::cli::SimMode::value : monodep::cli::SimMode::calibration;
      config.scenario.marginal_x.kind = monodep::marginal_from_name(marginal_x);
      config.scenario.marginal_y.kind = monodep::marginal_from_name(marginal_y);
      if (!pmf_path.empty()) load_custom_pmf(pmf_path, config.scenario);
    }
  } catch (const monodep::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  return monodep::cli::run(config, std::cin, std::cout, std::cerr);
}
