#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "monodep/column.hpp"
#include "monodep/inference.hpp"

namespace monodep {

// Synthetic data designs. The two correlated-normal designs draw a shared
// signal X0 plus independent noise per predictor, with Y centered at X0, so
// both predictors have the same population grade correlation by symmetry; the
// rounded variant discretizes predictors and outcome to integers.
enum class Design {
  correlated_normal,
  correlated_normal_rounded,
  bivariate_normal,
  triangle,
  independent,
  custom,
};

const char* design_name(Design design);
Design design_from_name(const std::string& name);

enum class Marginal { std_normal, uniform01, uniform_levels };

const char* marginal_name(Marginal marginal);
Marginal marginal_from_name(const std::string& name);

struct MarginalSpec {
  Marginal kind = Marginal::std_normal;
  std::size_t levels = 5;  // uniform_levels: uniform on {1, ..., levels}
};

struct ScenarioSpec {
  Design design = Design::correlated_normal;
  std::size_t n = 500;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  double r = 0.5;  // bivariate_normal correlation, in (-1, 1)
  MarginalSpec marginal_x;  // independent design
  MarginalSpec marginal_y;
  // custom design: a finite pmf as parallel triples (x, y, probability).
  std::vector<double> custom_x, custom_y, custom_p;
};

// Checks ranges (n >= 10, replicates >= 1, r in (-1,1), pmf shape);
// throws ValidationError.
void validate(const ScenarioSpec& spec);

// Deterministic function of (spec.seed, replicate_index); replicate streams
// are independent, so replicates can be generated in any order.
PairedSample generate(const ScenarioSpec& spec, std::uint64_t replicate_index);

enum class TestKind { simple_zero, pairwise, contrasts_all_pairs };

const char* test_kind_name(TestKind kind);
TestKind test_kind_from_name(const std::string& name);

struct CalibrationReport {
  std::vector<double> pvalues;  // per successful replicate, in replicate order
  double ks_distance = 0.0;     // sup distance of the empirical p CDF from uniform
  std::vector<std::pair<double, double>> rejection_rates;  // (level, rate) at .01/.05/.10
  std::vector<std::size_t> histogram;  // 20 equal bins over [0, 1]
  double runtime_seconds = 0.0;
  std::size_t replicates = 0;  // requested
  std::size_t errors = 0;      // replicates whose test raised a degenerate-data error
};

// Runs the chosen test on every replicate of the scenario and summarizes the
// p-value distribution. For the chi-square contrast test the one_sided flag is
// ignored (the statistic has no sidedness).
CalibrationReport run_calibration(const ScenarioSpec& spec, TestKind kind, bool one_sided,
                                  const InferenceConfig& inference = {});

struct ConvergenceEntry {
  std::string name;
  double mean = 0.0;
  double mc_stderr = 0.0;  // standard error of the mean over replicates
  double target = 0.0;     // closed-form population value
  double z = 0.0;          // (mean - target) / mc_stderr; NaN for a single replicate
};

// Sample-measure means vs closed-form targets: the bivariate normal design
// reports agc and akc against the arcsine formulas, the triangle design
// reports cma (target 1/2) and the grade correlation (target 0).
std::vector<ConvergenceEntry> run_value_convergence(const ScenarioSpec& spec);

}  // namespace monodep
