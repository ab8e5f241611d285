#include "monodep/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "monodep/errors.hpp"
#include "monodep/measures.hpp"
#include "monodep/ranks.hpp"
#include "monodep/rng.hpp"

namespace monodep {

namespace {

// sum_i w[i] * s(v[i], t): inner O(n) pass of the quadratic loops, written
// branchless so the comparisons vectorize.
double similarity_weighted_sum(const std::vector<double>& v, const std::vector<double>& w,
                               double t) {
  double below = 0.0, equal = 0.0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    below += (v[i] < t) ? w[i] : 0.0;
    equal += (v[i] == t) ? w[i] : 0.0;
  }
  return below + 0.5 * equal;
}

// 12 cov_n(grade of x, grade of y) through mid ranks; deviations from
// (n+1)/2 are exact half-integers.
double rho_from_ranks(const std::vector<double>& qx, const std::vector<double>& ry) {
  const double n = static_cast<double>(qx.size());
  const double c = (n + 1.0) / 2.0;
  long double cross = 0.0L;
  for (std::size_t i = 0; i < qx.size(); ++i) {
    cross += static_cast<long double>(qx[i] - c) * (ry[i] - c);
  }
  return static_cast<double>(12.0L * cross / (static_cast<long double>(n) * n * n));
}

void finalize_spectrum(CovarianceEstimate& est) {
  const std::size_t m = est.m;
  Eigen::MatrixXd s(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) s(k, l) = est.sigma[k * m + l];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s, Eigen::EigenvaluesOnly);
  est.min_eigenvalue = eig.eigenvalues().minCoeff();
  est.psd = est.min_eigenvalue >= -1e-10;
}

}  // namespace

const char* covariance_method_name(CovarianceMethod method) {
  switch (method) {
    case CovarianceMethod::plugin: return "plugin";
    case CovarianceMethod::bootstrap: return "bootstrap";
    case CovarianceMethod::hac: return "hac";
  }
  return "?";
}

BivariateMdf::BivariateMdf(std::vector<double> xs, std::vector<double> ys,
                           std::vector<double> at_sample)
    : xs_(std::move(xs)), ys_(std::move(ys)), at_sample_(std::move(at_sample)) {}

double BivariateMdf::at(double x, double y) const {
  // H(x, y) = mean of s(X_i, x) s(Y_i, y): the four-term strict/tied
  // decomposition collapses into the similarity product.
  double acc = 0.0;
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    acc += similarity(xs_[i], x) * similarity(ys_[i], y);
  }
  return acc / static_cast<double>(xs_.size());
}

BivariateMdf bivariate_mdf(const DataColumn& x, const DataColumn& y,
                           const AsymptoticsConfig& config) {
  if (x.size() != y.size()) {
    throw ValidationError("bivariate mdf: column lengths differ");
  }
  if (x.size() > config.max_plugin_n) {
    throw ValidationError("bivariate mdf at sample points is O(n^2) and capped at n = " +
                          std::to_string(config.max_plugin_n));
  }
  const std::vector<double>& xv = x.values();
  const std::vector<double>& yv = y.values();
  const std::size_t n = xv.size();
  std::vector<double> at_sample(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += similarity(xv[i], xv[j]) * similarity(yv[i], yv[j]);
    }
    at_sample[j] = acc / static_cast<double>(n);
  }
  return BivariateMdf(xv, yv, std::move(at_sample));
}

KernelEvaluations kernel_evaluations(const PairedSample& sample, const AsymptoticsConfig& config) {
  const std::size_t n = sample.n();
  const std::size_t m = sample.m();
  if (n > config.max_plugin_n) {
    throw ValidationError("kernel evaluation is O(n^2) and capped at n = " +
                          std::to_string(config.max_plugin_n));
  }

  const GradeTable gy = grade_table(sample.outcome());
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  const std::vector<double>& yv = sample.outcome().values();

  KernelEvaluations out;
  out.gamma = gy.granularity;
  out.k0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double jump = gy.cdf[i] - gy.cdf_left[i];
    out.k0[i] = jump * jump - out.gamma;
  }

  // Integrals of the bivariate MDF against one margin: averaging
  // H(x, Y_j) over j leaves sum_i s(X_i, x)(1 - grade_y[i])/n, and
  // symmetrically for the other margin. One O(n^2) pass per predictor each.
  std::vector<double> ty(n);
  for (std::size_t i = 0; i < n; ++i) ty[i] = 1.0 - gy.grades[i];

  out.kmat.resize(m);
  out.rho.resize(m);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k) {
    const DataColumn& x = sample.predictor(k);
    const std::vector<double>& xv = x.values();
    const GradeTable gx = grade_table(x);
    const double rho = rho_from_ranks(gx.mid_ranks, gy.mid_ranks);
    out.rho[k] = rho;

    std::vector<double> tx(n);
    for (std::size_t i = 0; i < n; ++i) tx[i] = 1.0 - gx.grades[i];

    std::vector<double>& kk = out.kmat[k];
    kk.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
      const double ft = similarity_weighted_sum(xv, ty, xv[l]) / dn;
      const double gt = similarity_weighted_sum(yv, tx, yv[l]) / dn;
      const double fb = gx.grades[l];
      const double gb = gy.grades[l];
      kk[l] = 4.0 * (ft + gt + fb * gb - fb - gb) + 1.0 - rho;
    }
  }
  return out;
}

CovarianceEstimate plugin_covariance(const PairedSample& sample, const AsymptoticsConfig& config) {
  if (sample.n() < config.min_n) {
    throw TooFewObservations("plug-in covariance needs at least " +
                             std::to_string(config.min_n) + " observations, got " +
                             std::to_string(sample.n()));
  }
  if (sample.n() > config.max_plugin_n) {
    throw ValidationError("plug-in covariance is O(n^2) and capped at n = " +
                          std::to_string(config.max_plugin_n) +
                          "; use bootstrap_covariance or raise max_plugin_n");
  }
  const KernelEvaluations ker = kernel_evaluations(sample, config);
  const std::size_t n = sample.n();
  const std::size_t m = sample.m();
  const double f = 1.0 / (1.0 - ker.gamma);

  std::vector<std::vector<double>> v(m, std::vector<double>(n));
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      v[k][i] = ker.kmat[k][i] + ker.rho[k] * f * ker.k0[i];
    }
  }

  CovarianceEstimate est;
  est.m = m;
  est.n = n;
  est.method = CovarianceMethod::plugin;
  est.rho = ker.rho;
  est.gamma = ker.gamma;
  est.sigma.assign(m * m, 0.0);
  const double scale = 9.0 * f * f / static_cast<double>(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k; l < m; ++l) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        acc += static_cast<long double>(v[k][i]) * v[l][i];
      }
      const double value = scale * static_cast<double>(acc);
      est.sigma[k * m + l] = value;
      est.sigma[l * m + k] = value;
    }
  }
  finalize_spectrum(est);
  return est;
}

CovarianceEstimate bootstrap_covariance(const PairedSample& sample, std::size_t replicates,
                                        std::uint64_t seed, const AsymptoticsConfig& config) {
  (void)config;
  if (replicates < 100) {
    throw ValidationError("bootstrap covariance needs at least 100 replicates, got " +
                          std::to_string(replicates));
  }
  const std::size_t n = sample.n();
  const std::size_t m = sample.m();
  const std::size_t max_redraws = replicates / 10;

  std::vector<std::vector<double>> a(replicates, std::vector<double>(m));
  std::size_t redrawn = 0;
  std::vector<double> yb(n), xb(n);
  for (std::size_t r = 0; r < replicates; ++r) {
    Rng rng(seed, r);
    std::vector<std::size_t> idx(n);
    for (;;) {
      for (std::size_t i = 0; i < n; ++i) idx[i] = rng.uniform_below(n);
      for (std::size_t i = 0; i < n; ++i) yb[i] = sample.outcome()[idx[i]];
      const bool degenerate =
          std::all_of(yb.begin(), yb.end(), [&](double v) { return v == yb[0]; });
      if (!degenerate) break;
      if (++redrawn > max_redraws) {
        throw BootstrapDegenerate("bootstrap: more than 10% of replicates drew a constant "
                                  "outcome; the sample is too close to degenerate");
      }
    }
    const DataColumn yc(yb);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < n; ++i) xb[i] = sample.predictor(k)[idx[i]];
      a[r][k] = agc(DataColumn(xb), yc).value;
    }
  }

  CovarianceEstimate est;
  est.m = m;
  est.n = n;
  est.method = CovarianceMethod::bootstrap;
  const GradeTable gy = grade_table(sample.outcome());
  est.gamma = gy.granularity;
  est.rho.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    est.rho[k] = rho_from_ranks(grade_table(sample.predictor(k)).mid_ranks, gy.mid_ranks);
  }
  est.bootstrap_redrawn = redrawn;
  std::vector<double> mean(m, 0.0);
  for (std::size_t r = 0; r < replicates; ++r) {
    for (std::size_t k = 0; k < m; ++k) mean[k] += a[r][k];
  }
  for (std::size_t k = 0; k < m; ++k) mean[k] /= static_cast<double>(replicates);
  est.sigma.assign(m * m, 0.0);
  const double scale = static_cast<double>(n) / static_cast<double>(replicates - 1);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k; l < m; ++l) {
      long double acc = 0.0L;
      for (std::size_t r = 0; r < replicates; ++r) {
        acc += static_cast<long double>(a[r][k] - mean[k]) * (a[r][l] - mean[l]);
      }
      const double value = scale * static_cast<double>(acc);
      est.sigma[k * m + l] = value;
      est.sigma[l * m + k] = value;
    }
  }
  finalize_spectrum(est);
  return est;
}

}  // namespace monodep
