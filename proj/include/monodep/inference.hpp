#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monodep/asymptotics.hpp"
#include "monodep/column.hpp"
#include "monodep/measures.hpp"

namespace monodep {

enum class NullDistribution { std_normal, chi_square };

struct TestResult {
  double statistic = 0.0;
  NullDistribution null_dist = NullDistribution::std_normal;
  std::size_t df = 0;         // chi-square tests only
  double p_one_sided = 0.0;   // NaN where one-sidedness is undefined (chi-square)
  double p_two_sided = 0.0;
  std::vector<MeasureValue> estimates;
  double stderr_value = 0.0;  // standard error of the estimate (or contrast); NaN for chi-square
  CovarianceMethod method = CovarianceMethod::plugin;
};

struct ConfidenceInterval {
  double level = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool clipped = false;  // interval was trimmed to the measure's range
  MeasureValue estimate{MeasureKind::agc, 0.0, 0, false};
};

struct InferenceConfig {
  CovarianceMethod method = CovarianceMethod::plugin;
  std::size_t bootstrap_replicates = 1000;
  std::uint64_t seed = 0;
  AsymptoticsConfig asymptotics;
  // Pairwise one-sided orientation: by default a positive statistic means the
  // first predictor is the stronger one; set to test the opposite direction.
  bool flip_orientation = false;
};

// Test of measure = null_value for a single predictor; measure is agc or cma
// (the two are the same test on affinely mapped scales).
TestResult test_simple(const PairedSample& sample, double null_value, MeasureKind measure,
                       const InferenceConfig& config = {});

// Two-sided normal-limit interval, intersected with the measure's range.
// A zero standard error yields the degenerate interval [estimate, estimate].
ConfidenceInterval confidence_interval(const PairedSample& sample, double level,
                                       MeasureKind measure, const InferenceConfig& config = {});

// Equality test for the grade correlations of two predictors of a shared
// outcome against the jointly estimated covariance.
TestResult test_pairwise(const PairedSample& sample, const InferenceConfig& config = {});

// Chi-square test of L a = 0 for a contrast matrix L (rows x m), using a
// pseudo-inverse of L Sigma L'; df is its numerical rank.
TestResult test_contrasts(const PairedSample& sample,
                          const std::vector<std::vector<double>>& contrasts,
                          const InferenceConfig& config = {});

// The m(m-1)/2 rows e_k - e_l for k < l: all pairwise equality contrasts.
std::vector<std::vector<double>> all_pairs_contrasts(std::size_t m);

}  // namespace monodep
