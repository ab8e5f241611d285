#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "monodep/inference.hpp"
#include "monodep/measures.hpp"
#include "monodep/simulation.hpp"

namespace monodep::cli {

enum class Command { compute, test, ci, simulate, oracle };
enum class Format { json, csv };
enum class SimMode { calibration, value };

struct CliConfig {
  Command command = Command::compute;
  std::string input_path = "-";  // "-" reads the provided input stream
  std::string outcome_column;
  std::vector<std::string> predictor_columns;
  // compute evaluates all requested measures; test/ci use the first entry
  // (which must be agc or cma).
  std::vector<MeasureKind> measures = {MeasureKind::agc, MeasureKind::cma};
  CovarianceMethod method = CovarianceMethod::plugin;
  std::size_t bootstrap_b = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  Format format = Format::json;
  std::string contrast_file;         // test: chi-square contrast matrix (CSV, no header)
  std::optional<double> null_value;  // test with one predictor
  bool flip = false;                 // pairwise one-sided direction

  ScenarioSpec scenario;  // simulate
  TestKind sim_test = TestKind::pairwise;
  bool sim_one_sided = true;
  SimMode sim_mode = SimMode::calibration;
  std::string histogram_csv_path;  // optional extra calibration output

  std::vector<double> oracle_alphas;  // oracle: dichotomization levels for AUC
};

// Executes one command against the given streams. Returns the process exit
// code: 0 success, 2 validation/usage error, 3 degenerate data. Error text
// goes to err; structured output to out.
int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace monodep::cli
