#include "monodep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "monodep/errors.hpp"
#include "monodep/io.hpp"
#include "monodep/oracle.hpp"

namespace monodep::cli {

namespace {

const char* command_name(Command command) {
  switch (command) {
    case Command::compute: return "compute";
    case Command::test: return "test";
    case Command::ci: return "ci";
    case Command::simulate: return "simulate";
    case Command::oracle: return "oracle";
  }
  return "?";
}

io::CsvTable read_table(const CliConfig& config, std::istream& in) {
  if (config.input_path == "-") {
    return io::read_csv(in);
  }
  std::ifstream file(config.input_path);
  if (!file) {
    throw ValidationError("cannot open input file '" + config.input_path + "'");
  }
  return io::read_csv(file);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  std::size_t found = header.size();
  std::size_t hits = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      found = i;
      ++hits;
    }
  }
  if (hits == 0) throw ValidationError("no column named '" + name + "' in the input header");
  if (hits > 1) throw ValidationError("column name '" + name + "' is ambiguous in the header");
  return found;
}

struct Loaded {
  PairedSample sample;
  std::size_t rows;     // data rows in the file
  std::size_t dropped;  // rows removed for missing cells in selected columns
};

Loaded load_sample(const CliConfig& config, std::istream& in) {
  if (config.outcome_column.empty()) {
    throw ValidationError("an outcome column is required");
  }
  if (config.predictor_columns.empty()) {
    throw ValidationError("at least one predictor column is required");
  }
  const io::CsvTable table = read_table(config, in);
  const std::size_t yi = column_index(table.header, config.outcome_column);
  std::vector<std::size_t> xi;
  for (const std::string& name : config.predictor_columns) {
    xi.push_back(column_index(table.header, name));
  }

  const std::size_t m = xi.size();
  std::vector<double> yv;
  std::vector<std::vector<double>> xv(m);
  std::size_t dropped = 0;
  std::vector<double> parsed(m + 1);
  for (const std::vector<std::string>& row : table.rows) {
    bool complete = io::parse_cell(row[yi], parsed[0]);
    for (std::size_t k = 0; k < m && complete; ++k) {
      complete = io::parse_cell(row[xi[k]], parsed[k + 1]);
    }
    if (!complete) {
      ++dropped;
      continue;
    }
    yv.push_back(parsed[0]);
    for (std::size_t k = 0; k < m; ++k) xv[k].push_back(parsed[k + 1]);
  }

  std::vector<DataColumn> predictors;
  predictors.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    predictors.emplace_back(std::move(xv[k]), config.predictor_columns[k]);
  }
  return Loaded{PairedSample(DataColumn(std::move(yv), config.outcome_column),
                             std::move(predictors)),
                table.rows.size(), dropped};
}

InferenceConfig make_inference(const CliConfig& config) {
  InferenceConfig inference;
  inference.method = config.method;
  inference.bootstrap_replicates = config.bootstrap_b;
  inference.seed = config.seed;
  inference.flip_orientation = config.flip;
  return inference;
}

MeasureKind inference_measure(const CliConfig& config) {
  return config.measures.empty() ? MeasureKind::agc : config.measures.front();
}

MeasureValue evaluate(MeasureKind kind, const DataColumn& x, const DataColumn& y) {
  switch (kind) {
    case MeasureKind::agc: return agc(x, y);
    case MeasureKind::cma: return cma(x, y);
    case MeasureKind::auc: return auc(x, y);
    case MeasureKind::cid: return cid(x, y);
    case MeasureKind::akc: return akc(x, y);
    case MeasureKind::rga: return rga(x, y);
    case MeasureKind::cpa: return cpa(x, y);
    case MeasureKind::spearman: return spearman(x, y);
    case MeasureKind::kendall: return kendall(x, y);
  }
  throw ValidationError("unknown measure");
}

io::JsonValue top_level(const CliConfig& config) {
  io::JsonValue top = io::JsonValue::object();
  top["schema"] = "monodep/1";
  top["command"] = command_name(config.command);
  return top;
}

void add_input_summary(io::JsonValue& top, const Loaded& loaded) {
  io::JsonValue input = io::JsonValue::object();
  input["rows"] = loaded.rows;
  input["used_rows"] = loaded.rows - loaded.dropped;
  input["dropped_rows"] = loaded.dropped;
  top["input"] = std::move(input);
}

io::JsonValue estimate_json(const std::string& predictor, const MeasureValue& value) {
  io::JsonValue rec = io::JsonValue::object();
  rec["predictor"] = predictor;
  rec["measure"] = measure_name(value.kind);
  rec["value"] = value.value;
  rec["n"] = value.n;
  rec["degenerate_predictor"] = value.degenerate_predictor;
  return rec;
}

const char* null_dist_name(NullDistribution dist) {
  return dist == NullDistribution::std_normal ? "std-normal" : "chi-square";
}

io::JsonValue test_json(const char* kind, const TestResult& result,
                        const std::vector<std::string>& predictor_names) {
  io::JsonValue rec = io::JsonValue::object();
  rec["kind"] = kind;
  rec["statistic"] = result.statistic;
  rec["null_distribution"] = null_dist_name(result.null_dist);
  rec["df"] = result.df;
  rec["p_one_sided"] = result.p_one_sided;  // null when undefined
  rec["p_two_sided"] = result.p_two_sided;
  rec["stderr"] = result.stderr_value;
  rec["method"] = covariance_method_name(result.method);
  io::JsonValue estimates = io::JsonValue::array();
  for (std::size_t i = 0; i < result.estimates.size(); ++i) {
    estimates.push_back(estimate_json(predictor_names[i], result.estimates[i]));
  }
  rec["estimates"] = std::move(estimates);
  return rec;
}

void write_test_csv(std::ostream& out, const char* kind, const TestResult& result) {
  io::write_csv_row(out, {"kind", "statistic", "df", "p_one_sided", "p_two_sided", "stderr",
                          "method"});
  io::write_csv_row(out, {kind, io::format_double(result.statistic), std::to_string(result.df),
                          io::format_double(result.p_one_sided),
                          io::format_double(result.p_two_sided),
                          io::format_double(result.stderr_value),
                          covariance_method_name(result.method)});
}

std::vector<std::vector<double>> load_contrasts(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw ValidationError("cannot open contrast file '" + path + "'");
  }
  const std::vector<std::vector<std::string>> rows = io::read_csv_rows(file);
  if (rows.empty()) throw ValidationError("contrast file is empty");
  std::vector<std::vector<double>> contrasts;
  for (const std::vector<std::string>& row : rows) {
    std::vector<double> values;
    for (const std::string& cell : row) {
      double v = 0.0;
      if (!io::parse_cell(cell, v)) {
        throw ValidationError("contrast file has an empty cell");
      }
      values.push_back(v);
    }
    contrasts.push_back(std::move(values));
  }
  return contrasts;
}

int run_compute(const CliConfig& config, std::istream& in, std::ostream& out) {
  const Loaded loaded = load_sample(config, in);
  if (config.measures.empty()) {
    throw ValidationError("compute needs at least one measure");
  }
  std::vector<std::pair<std::string, MeasureValue>> records;
  for (std::size_t k = 0; k < loaded.sample.m(); ++k) {
    const DataColumn& x = loaded.sample.predictor(k);
    for (MeasureKind kind : config.measures) {
      records.emplace_back(x.name(), evaluate(kind, x, loaded.sample.outcome()));
    }
  }

  if (config.format == Format::csv) {
    io::write_csv_row(out, {"predictor", "measure", "value", "n", "degenerate_predictor"});
    for (const auto& [name, value] : records) {
      io::write_csv_row(out, {name, measure_name(value.kind), io::format_double(value.value),
                              std::to_string(value.n),
                              value.degenerate_predictor ? "true" : "false"});
    }
  } else {
    io::JsonValue top = top_level(config);
    add_input_summary(top, loaded);
    io::JsonValue results = io::JsonValue::array();
    for (const auto& [name, value] : records) results.push_back(estimate_json(name, value));
    top["results"] = std::move(results);
    top.write(out);
    out << '\n';
  }
  return 0;
}

int run_test(const CliConfig& config, std::istream& in, std::ostream& out) {
  const Loaded loaded = load_sample(config, in);
  const InferenceConfig inference = make_inference(config);
  const std::size_t m = loaded.sample.m();

  const char* kind = nullptr;
  TestResult result;
  if (!config.contrast_file.empty()) {
    kind = "contrasts";
    result = test_contrasts(loaded.sample, load_contrasts(config.contrast_file), inference);
  } else if (m == 1) {
    if (!config.null_value.has_value()) {
      throw ValidationError("a test with one predictor needs a null value (--null)");
    }
    kind = "simple";
    result = test_simple(loaded.sample, *config.null_value, inference_measure(config), inference);
  } else if (config.null_value.has_value()) {
    throw ValidationError("a null value applies only to single-predictor tests");
  } else if (m == 2) {
    kind = "pairwise";
    result = test_pairwise(loaded.sample, inference);
  } else {
    // Three or more predictors without an explicit matrix: all pairwise
    // equality contrasts.
    kind = "contrasts";
    result = test_contrasts(loaded.sample, all_pairs_contrasts(m), inference);
  }

  if (config.format == Format::csv) {
    write_test_csv(out, kind, result);
  } else {
    io::JsonValue top = top_level(config);
    add_input_summary(top, loaded);
    io::JsonValue results = io::JsonValue::array();
    results.push_back(test_json(kind, result, config.predictor_columns));
    top["results"] = std::move(results);
    top.write(out);
    out << '\n';
  }
  return 0;
}

int run_ci(const CliConfig& config, std::istream& in, std::ostream& out) {
  const Loaded loaded = load_sample(config, in);
  if (loaded.sample.m() != 1) {
    throw ValidationError("ci needs exactly one predictor column");
  }
  const MeasureKind measure = inference_measure(config);
  const ConfidenceInterval ci =
      confidence_interval(loaded.sample, config.level, measure, make_inference(config));

  if (config.format == Format::csv) {
    io::write_csv_row(out, {"measure", "level", "estimate", "lower", "upper", "clipped",
                            "method"});
    io::write_csv_row(out, {measure_name(measure), io::format_double(ci.level),
                            io::format_double(ci.estimate.value), io::format_double(ci.lower),
                            io::format_double(ci.upper), ci.clipped ? "true" : "false",
                            covariance_method_name(config.method)});
  } else {
    io::JsonValue top = top_level(config);
    add_input_summary(top, loaded);
    io::JsonValue rec = io::JsonValue::object();
    rec["measure"] = measure_name(measure);
    rec["level"] = ci.level;
    rec["estimate"] = ci.estimate.value;
    rec["lower"] = ci.lower;
    rec["upper"] = ci.upper;
    rec["clipped"] = ci.clipped;
    rec["method"] = covariance_method_name(config.method);
    rec["n"] = ci.estimate.n;
    io::JsonValue results = io::JsonValue::array();
    results.push_back(std::move(rec));
    top["results"] = std::move(results);
    top.write(out);
    out << '\n';
  }
  return 0;
}

void write_histogram_csv(std::ostream& out, const CalibrationReport& report) {
  io::write_csv_row(out, {"bin_left", "bin_right", "count"});
  for (std::size_t b = 0; b < report.histogram.size(); ++b) {
    const double width = 1.0 / static_cast<double>(report.histogram.size());
    io::write_csv_row(out, {io::format_double(b * width), io::format_double((b + 1) * width),
                            std::to_string(report.histogram[b])});
  }
}

int run_simulate(const CliConfig& config, std::ostream& out) {
  if (config.sim_mode == SimMode::value) {
    const std::vector<ConvergenceEntry> entries = run_value_convergence(config.scenario);
    if (config.format == Format::csv) {
      io::write_csv_row(out, {"name", "mean", "mc_stderr", "target", "z"});
      for (const ConvergenceEntry& e : entries) {
        io::write_csv_row(out, {e.name, io::format_double(e.mean), io::format_double(e.mc_stderr),
                                io::format_double(e.target), io::format_double(e.z)});
      }
    } else {
      io::JsonValue top = top_level(config);
      top["design"] = design_name(config.scenario.design);
      top["n"] = config.scenario.n;
      top["replicates"] = config.scenario.replicates;
      top["seed"] = config.scenario.seed;
      io::JsonValue results = io::JsonValue::array();
      for (const ConvergenceEntry& e : entries) {
        io::JsonValue rec = io::JsonValue::object();
        rec["name"] = e.name;
        rec["mean"] = e.mean;
        rec["mc_stderr"] = e.mc_stderr;
        rec["target"] = e.target;
        rec["z"] = e.z;
        results.push_back(std::move(rec));
      }
      top["results"] = std::move(results);
      top.write(out);
      out << '\n';
    }
    return 0;
  }

  const CalibrationReport report =
      run_calibration(config.scenario, config.sim_test, config.sim_one_sided,
                      make_inference(config));
  if (!config.histogram_csv_path.empty()) {
    std::ofstream file(config.histogram_csv_path);
    if (!file) {
      throw ValidationError("cannot open histogram output '" + config.histogram_csv_path + "'");
    }
    write_histogram_csv(file, report);
  }
  if (config.format == Format::csv) {
    write_histogram_csv(out, report);
  } else {
    io::JsonValue top = top_level(config);
    top["design"] = design_name(config.scenario.design);
    top["n"] = config.scenario.n;
    top["replicates"] = config.scenario.replicates;
    top["seed"] = config.scenario.seed;
    top["test"] = test_kind_name(config.sim_test);
    top["one_sided"] = config.sim_one_sided;
    io::JsonValue rep = io::JsonValue::object();
    rep["ks_distance"] = report.ks_distance;
    io::JsonValue rates = io::JsonValue::array();
    for (const auto& [level, rate] : report.rejection_rates) {
      io::JsonValue rec = io::JsonValue::object();
      rec["level"] = level;
      rec["rate"] = rate;
      rates.push_back(std::move(rec));
    }
    rep["rejection_rates"] = std::move(rates);
    io::JsonValue hist = io::JsonValue::array();
    for (std::size_t c : report.histogram) hist.push_back(c);
    rep["histogram"] = std::move(hist);
    rep["errors"] = report.errors;
    rep["runtime_seconds"] = report.runtime_seconds;
    io::JsonValue pvalues = io::JsonValue::array();
    for (double p : report.pvalues) pvalues.push_back(p);
    rep["pvalues"] = std::move(pvalues);
    top["report"] = std::move(rep);
    top.write(out);
    out << '\n';
  }
  return 0;
}

oracle::FiniteBivariateDistribution load_pmf(const CliConfig& config, std::istream& in) {
  const io::CsvTable table = read_table(config, in);
  const std::size_t xi = column_index(table.header, "x");
  const std::size_t yi = column_index(table.header, "y");
  const std::size_t pi = column_index(table.header, "p");
  std::vector<double> xs, ys, ps;
  for (const std::vector<std::string>& row : table.rows) {
    double x = 0.0, y = 0.0, p = 0.0;
    if (!io::parse_cell(row[xi], x) || !io::parse_cell(row[yi], y) ||
        !io::parse_cell(row[pi], p)) {
      throw ValidationError("pmf file has a missing cell");
    }
    if (p < 0.0) throw ValidationError("pmf file has a negative probability");
    xs.push_back(x);
    ys.push_back(y);
    ps.push_back(p);
  }
  if (ps.empty()) throw ValidationError("pmf file has no rows");
  double total = 0.0;
  for (double p : ps) total += p;
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("pmf probabilities sum to " + io::format_double(total) +
                          "; more than 1e-9 away from 1");
  }

  std::vector<double> xsup(xs), ysup(ys);
  std::sort(xsup.begin(), xsup.end());
  xsup.erase(std::unique(xsup.begin(), xsup.end()), xsup.end());
  std::sort(ysup.begin(), ysup.end());
  ysup.erase(std::unique(ysup.begin(), ysup.end()), ysup.end());
  std::vector<double> grid(xsup.size() * ysup.size(), 0.0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::size_t a = std::lower_bound(xsup.begin(), xsup.end(), xs[i]) - xsup.begin();
    const std::size_t b = std::lower_bound(ysup.begin(), ysup.end(), ys[i]) - ysup.begin();
    grid[a * ysup.size() + b] += ps[i] / total;
  }
  return oracle::FiniteBivariateDistribution(std::move(xsup), std::move(ysup), std::move(grid));
}

oracle::FiniteBivariateDistribution transpose(const oracle::FiniteBivariateDistribution& d) {
  std::vector<double> grid(d.p() * d.q());
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.q(); ++j) grid[j * d.p() + i] = d.prob(i, j);
  }
  return oracle::FiniteBivariateDistribution(d.y_support(), d.x_support(), std::move(grid));
}

int run_oracle(const CliConfig& config, std::istream& in, std::ostream& out) {
  const oracle::FiniteBivariateDistribution d = load_pmf(config, in);

  struct Record {
    std::string measure;
    double value;
    double alpha = std::nan("");
  };
  std::vector<Record> records;
  records.push_back({"agc", oracle::population_agc(d), std::nan("")});
  records.push_back({"agc-reversed", oracle::population_agc(transpose(d)), std::nan("")});
  records.push_back({"cma", oracle::population_cma(d), std::nan("")});
  records.push_back({"cid", oracle::population_cid(d), std::nan("")});
  records.push_back({"akc", oracle::population_akc(d), std::nan("")});
  records.push_back({"rga", oracle::population_rga(d), std::nan("")});
  records.push_back({"spearman-grade", oracle::population_spearman_grade(d), std::nan("")});
  records.push_back({"granularity-x", oracle::population_granularity(d.x_marginal()), std::nan("")});
  records.push_back({"granularity-y", oracle::population_granularity(d.y_marginal()), std::nan("")});
  if (d.q() == 2) {
    records.push_back({"auc", oracle::population_auc(d), std::nan("")});
  }
  for (double alpha : config.oracle_alphas) {
    records.push_back(
        {"dichotomized-auc", oracle::population_auc(oracle::dichotomize(d, alpha)), alpha});
  }

  if (config.format == Format::csv) {
    io::write_csv_row(out, {"measure", "alpha", "value"});
    for (const Record& r : records) {
      io::write_csv_row(out, {r.measure, std::isnan(r.alpha) ? "" : io::format_double(r.alpha),
                              io::format_double(r.value)});
    }
  } else {
    io::JsonValue top = top_level(config);
    io::JsonValue results = io::JsonValue::array();
    for (const Record& r : records) {
      io::JsonValue rec = io::JsonValue::object();
      rec["measure"] = r.measure;
      if (!std::isnan(r.alpha)) rec["alpha"] = r.alpha;
      rec["value"] = r.value;
      results.push_back(std::move(rec));
    }
    top["results"] = std::move(results);
    top.write(out);
    out << '\n';
  }
  return 0;
}

}  // namespace

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::compute: return run_compute(config, in, out);
      case Command::test: return run_test(config, in, out);
      case Command::ci: return run_ci(config, in, out);
      case Command::simulate: return run_simulate(config, out);
      case Command::oracle: return run_oracle(config, in, out);
    }
    throw ValidationError("unknown command");
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DegenerateData& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace monodep::cli
