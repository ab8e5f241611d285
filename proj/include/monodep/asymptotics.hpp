#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "monodep/column.hpp"

namespace monodep {

struct AsymptoticsConfig {
  std::size_t min_n = 10;           // covariance estimation below this errors
  std::size_t max_plugin_n = 20000; // cap for the O(n^2) plug-in path
};

// Empirical bivariate mid-distribution function. Holds copies of the data:
// at(x, y) is an O(n) evaluation, at_sample[i] the value at (X_i, Y_i).
class BivariateMdf {
 public:
  BivariateMdf(std::vector<double> xs, std::vector<double> ys,
               std::vector<double> at_sample);

  double at(double x, double y) const;
  const std::vector<double>& at_sample() const { return at_sample_; }

 private:
  std::vector<double> xs_, ys_;
  std::vector<double> at_sample_;
};

BivariateMdf bivariate_mdf(const DataColumn& x, const DataColumn& y,
                           const AsymptoticsConfig& config = {});

// Influence-kernel evaluations for the AGC vector of a paired sample:
// weights that, squared and averaged, give the asymptotic covariance.
struct KernelEvaluations {
  std::vector<double> k0;                 // outcome-only kernel, per observation
  std::vector<std::vector<double>> kmat;  // per predictor, per observation
  std::vector<double> rho;                // 12 cov(grade of x^(k), grade of y)
  double gamma;                           // outcome granularity
};

KernelEvaluations kernel_evaluations(const PairedSample& sample,
                                     const AsymptoticsConfig& config = {});

enum class CovarianceMethod {
  plugin,
  bootstrap,
  hac,  // reserved for dependent-series use; not implemented
};

const char* covariance_method_name(CovarianceMethod method);

struct CovarianceEstimate {
  std::vector<double> sigma;  // m x m, row-major; scale is for AGC (CMA: /4)
  std::size_t m = 0;
  CovarianceMethod method = CovarianceMethod::plugin;
  std::size_t n = 0;
  std::vector<double> rho;
  double gamma = 0.0;
  double min_eigenvalue = 0.0;
  bool psd = true;                    // min eigenvalue >= -1e-10
  std::size_t bootstrap_redrawn = 0;  // replicates redrawn for degenerate outcome

  double operator()(std::size_t k, std::size_t l) const { return sigma[k * m + l]; }
};

CovarianceEstimate plugin_covariance(const PairedSample& sample,
                                     const AsymptoticsConfig& config = {});

CovarianceEstimate bootstrap_covariance(const PairedSample& sample, std::size_t replicates,
                                        std::uint64_t seed,
                                        const AsymptoticsConfig& config = {});

}  // namespace monodep
