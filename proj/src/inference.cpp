#include "monodep/inference.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "monodep/errors.hpp"
#include "monodep/stats.hpp"

namespace monodep {

namespace {

constexpr double kZeroVarianceTol = 1e-12;

CovarianceEstimate estimate_covariance(const PairedSample& sample, const InferenceConfig& config) {
  switch (config.method) {
    case CovarianceMethod::plugin:
      return plugin_covariance(sample, config.asymptotics);
    case CovarianceMethod::bootstrap:
      return bootstrap_covariance(sample, config.bootstrap_replicates, config.seed,
                                  config.asymptotics);
    case CovarianceMethod::hac:
      throw ValidationError("hac covariance is reserved for dependent-series data and "
                            "not implemented");
  }
  throw ValidationError("unknown covariance method");
}

void require_simple_measure(MeasureKind measure) {
  if (measure != MeasureKind::agc && measure != MeasureKind::cma) {
    throw ValidationError(std::string("tests and intervals are defined for agc or cma, not ") +
                          measure_name(measure));
  }
}

double two_sided_normal_p(double t) {
  const double lo = stats::normal_cdf(t);
  const double hi = 1.0 - lo;
  return 2.0 * std::min(lo, hi);
}

}  // namespace

TestResult test_simple(const PairedSample& sample, double null_value, MeasureKind measure,
                       const InferenceConfig& config) {
  require_simple_measure(measure);
  if (sample.m() != 1) {
    throw ValidationError("test_simple needs exactly one predictor, got " +
                          std::to_string(sample.m()));
  }
  const bool is_cma = measure == MeasureKind::cma;
  const double lo = is_cma ? 0.0 : -1.0;
  const double hi = is_cma ? 1.0 : 1.0;
  if (!(null_value > lo && null_value < hi)) {
    throw OutOfRange("null value " + std::to_string(null_value) + " outside the open range of " +
                     measure_name(measure));
  }

  const CovarianceEstimate cov = estimate_covariance(sample, config);
  const MeasureValue est =
      is_cma ? cma(sample.predictor(0), sample.outcome()) : agc(sample.predictor(0), sample.outcome());
  // Covariance is on the agc scale; cma is (agc+1)/2, so its sd is halved.
  const double sd = std::sqrt(std::max(cov(0, 0), 0.0)) * (is_cma ? 0.5 : 1.0);
  if (sd <= kZeroVarianceTol) {
    throw ZeroVariance("estimated variance of " + std::string(measure_name(measure)) +
                       " is zero; the statistic sits on the boundary of its range");
  }
  const double root_n = std::sqrt(static_cast<double>(sample.n()));
  TestResult out;
  out.statistic = root_n * (est.value - null_value) / sd;
  out.null_dist = NullDistribution::std_normal;
  out.p_one_sided = 1.0 - stats::normal_cdf(out.statistic);
  out.p_two_sided = two_sided_normal_p(out.statistic);
  out.estimates = {est};
  out.stderr_value = sd / root_n;
  out.method = cov.method;
  return out;
}

ConfidenceInterval confidence_interval(const PairedSample& sample, double level,
                                       MeasureKind measure, const InferenceConfig& config) {
  require_simple_measure(measure);
  if (sample.m() != 1) {
    throw ValidationError("confidence_interval needs exactly one predictor, got " +
                          std::to_string(sample.m()));
  }
  if (!(level > 0.5 && level < 1.0)) {
    throw OutOfRange("confidence level must lie in (0.5, 1), got " + std::to_string(level));
  }
  const bool is_cma = measure == MeasureKind::cma;
  const CovarianceEstimate cov = estimate_covariance(sample, config);
  const MeasureValue est =
      is_cma ? cma(sample.predictor(0), sample.outcome()) : agc(sample.predictor(0), sample.outcome());
  const double sd = std::sqrt(std::max(cov(0, 0), 0.0)) * (is_cma ? 0.5 : 1.0);
  const double z = stats::normal_quantile(0.5 * (1.0 + level));
  const double half = z * sd / std::sqrt(static_cast<double>(sample.n()));

  const double range_lo = is_cma ? 0.0 : -1.0;
  const double range_hi = 1.0;
  ConfidenceInterval out;
  out.level = level;
  out.estimate = est;
  out.lower = est.value - half;
  out.upper = est.value + half;
  out.clipped = out.lower < range_lo || out.upper > range_hi;
  out.lower = std::max(out.lower, range_lo);
  out.upper = std::min(out.upper, range_hi);
  return out;
}

TestResult test_pairwise(const PairedSample& sample, const InferenceConfig& config) {
  if (sample.m() != 2) {
    throw ValidationError("test_pairwise needs exactly two predictors, got " +
                          std::to_string(sample.m()));
  }
  const CovarianceEstimate cov = estimate_covariance(sample, config);
  const MeasureValue a1 = agc(sample.predictor(0), sample.outcome());
  const MeasureValue a2 = agc(sample.predictor(1), sample.outcome());
  const double var_diff = cov(0, 0) + cov(1, 1) - 2.0 * cov(0, 1);
  if (var_diff <= kZeroVarianceTol) {
    throw ContrastDegenerate(
        "contrast degenerate: the two predictors have (numerically) identical grade "
        "correlations with zero difference variance");
  }
  const double sd = std::sqrt(var_diff);
  const double root_n = std::sqrt(static_cast<double>(sample.n()));
  double delta = root_n * (a1.value - a2.value) / sd;
  if (config.flip_orientation) delta = -delta;

  TestResult out;
  out.statistic = delta;
  out.null_dist = NullDistribution::std_normal;
  out.p_one_sided = 1.0 - stats::normal_cdf(delta);
  out.p_two_sided = two_sided_normal_p(delta);
  out.estimates = {a1, a2};
  out.stderr_value = sd / root_n;
  out.method = cov.method;
  return out;
}

TestResult test_contrasts(const PairedSample& sample,
                          const std::vector<std::vector<double>>& contrasts,
                          const InferenceConfig& config) {
  const std::size_t m = sample.m();
  if (m < 2) {
    throw ValidationError("test_contrasts needs at least two predictors, got " +
                          std::to_string(m));
  }
  if (contrasts.empty()) {
    throw ValidationError("contrast matrix has no rows");
  }
  bool any_nonzero = false;
  for (const std::vector<double>& row : contrasts) {
    if (row.size() != m) {
      throw ValidationError("contrast row has " + std::to_string(row.size()) +
                            " entries, expected " + std::to_string(m));
    }
    for (double v : row) {
      if (!std::isfinite(v)) throw ValidationError("contrast matrix has a non-finite entry");
      if (v != 0.0) any_nonzero = true;
    }
  }
  if (!any_nonzero) {
    throw ValidationError("contrast matrix is identically zero");
  }

  const CovarianceEstimate cov = estimate_covariance(sample, config);
  Eigen::VectorXd a(m);
  std::vector<MeasureValue> estimates;
  estimates.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    estimates.push_back(agc(sample.predictor(k), sample.outcome()));
    a(k) = estimates.back().value;
  }
  Eigen::MatrixXd sigma(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) sigma(k, l) = cov(k, l);
  }
  const std::size_t r = contrasts.size();
  Eigen::MatrixXd L(r, m);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < m; ++k) L(i, k) = contrasts[i][k];
  }

  const Eigen::MatrixXd middle = L * sigma * L.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(middle);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_max = lambda.maxCoeff();
  // Scale-free rank cut: eigenvalues below 1e-10 of the largest are noise from
  // linearly dependent contrasts (e.g. all pairs of m predictors have rank m-1).
  const double threshold = 1e-10 * std::max(lambda_max, 0.0);
  std::size_t df = 0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (lambda(i) > threshold && lambda(i) > 0.0) {
      inv(i) = 1.0 / lambda(i);
      ++df;
    }
  }
  if (df == 0) {
    throw AllContrastsDegenerate(
        "contrast degenerate: every contrast of the grade-correlation vector has zero "
        "estimated variance");
  }
  const Eigen::VectorXd v = L * a;
  const Eigen::VectorXd w = eig.eigenvectors().transpose() * v;
  const double quad = (w.array().square() * inv.array()).sum();
  const double chi = static_cast<double>(sample.n()) * quad;

  TestResult out;
  out.statistic = chi;
  out.null_dist = NullDistribution::chi_square;
  out.df = df;
  out.p_one_sided = std::numeric_limits<double>::quiet_NaN();
  out.p_two_sided = stats::chi_square_sf(chi, static_cast<double>(df));
  out.estimates = std::move(estimates);
  out.stderr_value = std::numeric_limits<double>::quiet_NaN();
  out.method = cov.method;
  return out;
}

std::vector<std::vector<double>> all_pairs_contrasts(std::size_t m) {
  if (m < 2) {
    throw ValidationError("all_pairs_contrasts needs m >= 2");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(m * (m - 1) / 2);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k + 1; l < m; ++l) {
      std::vector<double> row(m, 0.0);
      row[k] = 1.0;
      row[l] = -1.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace monodep
