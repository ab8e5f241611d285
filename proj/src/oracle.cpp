#include "monodep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "monodep/errors.hpp"
#include "monodep/rng.hpp"

namespace monodep::oracle {

namespace {

double sim(double a, double b) { return (a < b) ? 1.0 : (a == b ? 0.5 : 0.0); }

// Mid-distribution values over a marginal: cumulative mass strictly before
// plus half the atom.
std::vector<double> mdf(const std::vector<double>& marginal) {
  std::vector<double> out(marginal.size());
  double before = 0.0;
  for (std::size_t i = 0; i < marginal.size(); ++i) {
    out[i] = before + 0.5 * marginal[i];
    before += marginal[i];
  }
  return out;
}

double mean_under(const std::vector<double>& w, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
  return s;
}

void require_nondegenerate_y(const FiniteBivariateDistribution& d) {
  const std::vector<double> qy = d.y_marginal();
  std::size_t support_points = 0;
  for (double w : qy) {
    if (w > 0.0) ++support_points;
  }
  if (support_points < 2) {
    throw DegenerateMarginal("y-marginal concentrates on a single point");
  }
}

}  // namespace

FiniteBivariateDistribution::FiniteBivariateDistribution(std::vector<double> x_support,
                                                         std::vector<double> y_support,
                                                         std::vector<double> pmf)
    : x_support_(std::move(x_support)), y_support_(std::move(y_support)), pmf_(std::move(pmf)) {
  if (x_support_.empty() || y_support_.empty()) {
    throw ValidationError("finite distribution: empty support");
  }
  auto check_sorted = [](const std::vector<double>& s, const char* which) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!std::isfinite(s[i])) throw ValidationError(std::string(which) + " support not finite");
      if (i > 0 && !(s[i - 1] < s[i])) {
        throw ValidationError(std::string(which) + " support must be strictly increasing");
      }
    }
  };
  check_sorted(x_support_, "x");
  check_sorted(y_support_, "y");
  if (pmf_.size() != x_support_.size() * y_support_.size()) {
    throw ValidationError("finite distribution: pmf size does not match support grid");
  }
  double total = 0.0;
  for (double w : pmf_) {
    if (!(w >= 0.0)) throw ValidationError("finite distribution: negative or NaN mass");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("finite distribution: masses sum to " + std::to_string(total) +
                          ", not 1");
  }
}

FiniteBivariateDistribution FiniteBivariateDistribution::empirical(const DataColumn& x,
                                                                   const DataColumn& y) {
  if (x.size() != y.size()) throw ValidationError("empirical law: column lengths differ");
  std::vector<double> xs = x.values(), ys = y.values();
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<double> pmf(xs.size() * ys.size(), 0.0);
  const double w = 1.0 / static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::size_t i = std::lower_bound(xs.begin(), xs.end(), x[k]) - xs.begin();
    const std::size_t j = std::lower_bound(ys.begin(), ys.end(), y[k]) - ys.begin();
    pmf[i * ys.size() + j] += w;
  }
  return FiniteBivariateDistribution(std::move(xs), std::move(ys), std::move(pmf));
}

std::vector<double> FiniteBivariateDistribution::x_marginal() const {
  std::vector<double> m(p(), 0.0);
  for (std::size_t i = 0; i < p(); ++i) {
    for (std::size_t j = 0; j < q(); ++j) m[i] += prob(i, j);
  }
  return m;
}

std::vector<double> FiniteBivariateDistribution::y_marginal() const {
  std::vector<double> m(q(), 0.0);
  for (std::size_t i = 0; i < p(); ++i) {
    for (std::size_t j = 0; j < q(); ++j) m[j] += prob(i, j);
  }
  return m;
}

bool FiniteBivariateDistribution::has_zero_marginal() const {
  for (double w : x_marginal()) {
    if (w == 0.0) return true;
  }
  for (double w : y_marginal()) {
    if (w == 0.0) return true;
  }
  return false;
}

double population_agc(const FiniteBivariateDistribution& d) {
  require_nondegenerate_y(d);
  const std::vector<double> px = d.x_marginal(), qy = d.y_marginal();
  const std::vector<double> fx = mdf(px), gy = mdf(qy);
  const double mx = mean_under(px, fx), my = mean_under(qy, gy);
  double cov = 0.0;
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.q(); ++j) {
      cov += d.prob(i, j) * (fx[i] - mx) * (gy[j] - my);
    }
  }
  double var = 0.0;
  for (std::size_t j = 0; j < d.q(); ++j) var += qy[j] * (gy[j] - my) * (gy[j] - my);
  return cov / var;
}

double population_cma(const FiniteBivariateDistribution& d) {
  return 0.5 * (population_agc(d) + 1.0);
}

double population_agc_concordance(const FiniteBivariateDistribution& d) {
  require_nondegenerate_y(d);
  const std::vector<double> gy = mdf(d.y_marginal());
  double num = 0.0, den = 0.0;
  for (std::size_t i1 = 0; i1 < d.p(); ++i1) {
    for (std::size_t j1 = 0; j1 < d.q(); ++j1) {
      const double w1 = d.prob(i1, j1);
      if (w1 == 0.0) continue;
      for (std::size_t i2 = 0; i2 < d.p(); ++i2) {
        for (std::size_t j2 = 0; j2 < d.q(); ++j2) {
          if (j2 <= j1) continue;  // needs Y' < Y''
          const double w = w1 * d.prob(i2, j2) * (gy[j2] - gy[j1]);
          num += w * sim(d.x_support()[i1], d.x_support()[i2]);
          den += w;
        }
      }
    }
  }
  return 2.0 * num / den - 1.0;
}

double population_auc(const FiniteBivariateDistribution& d) {
  std::vector<double> qy = d.y_marginal();
  std::vector<std::size_t> classes;
  for (std::size_t j = 0; j < d.q(); ++j) {
    if (qy[j] > 0.0) classes.push_back(j);
  }
  if (classes.size() != 2) {
    throw NotBinary("population auc: y-marginal has " + std::to_string(classes.size()) +
                    " support points, need exactly 2");
  }
  const std::size_t j0 = classes[0], j1 = classes[1];
  double num = 0.0;
  for (std::size_t i1 = 0; i1 < d.p(); ++i1) {
    for (std::size_t i2 = 0; i2 < d.p(); ++i2) {
      num += d.prob(i1, j0) * d.prob(i2, j1) * sim(d.x_support()[i1], d.x_support()[i2]);
    }
  }
  return num / (qy[j0] * qy[j1]);
}

double population_cid(const FiniteBivariateDistribution& d) {
  require_nondegenerate_y(d);
  double num = 0.0, den = 0.0;
  for (std::size_t i1 = 0; i1 < d.p(); ++i1) {
    for (std::size_t j1 = 0; j1 < d.q(); ++j1) {
      const double w1 = d.prob(i1, j1);
      if (w1 == 0.0) continue;
      for (std::size_t i2 = 0; i2 < d.p(); ++i2) {
        for (std::size_t j2 = j1 + 1; j2 < d.q(); ++j2) {
          const double w = w1 * d.prob(i2, j2);
          num += w * sim(d.x_support()[i1], d.x_support()[i2]);
          den += w;
        }
      }
    }
  }
  return num / den;
}

double population_akc(const FiniteBivariateDistribution& d) {
  return 2.0 * population_cid(d) - 1.0;
}

double population_rga(const FiniteBivariateDistribution& d) {
  require_nondegenerate_y(d);
  const std::vector<double> px = d.x_marginal(), qy = d.y_marginal();
  const std::vector<double> fx = mdf(px), gy = mdf(qy);
  const double mx = mean_under(px, fx);
  const double mg = mean_under(qy, gy);
  const double my = mean_under(qy, d.y_support());
  double num = 0.0;
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.q(); ++j) {
      num += d.prob(i, j) * (d.y_support()[j] - my) * (fx[i] - mx);
    }
  }
  double den = 0.0;
  for (std::size_t j = 0; j < d.q(); ++j) {
    den += qy[j] * (d.y_support()[j] - my) * (gy[j] - mg);
  }
  return 0.5 * (num / den + 1.0);
}

double population_granularity(const std::vector<double>& marginal) {
  double total = 0.0, cubes = 0.0;
  for (double w : marginal) {
    if (!(w >= 0.0)) throw ValidationError("granularity: negative or NaN mass");
    total += w;
    cubes += w * w * w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("granularity: masses sum to " + std::to_string(total) + ", not 1");
  }
  return cubes;
}

double population_spearman_grade(const FiniteBivariateDistribution& d) {
  const std::vector<double> px = d.x_marginal(), qy = d.y_marginal();
  const std::vector<double> fx = mdf(px), gy = mdf(qy);
  const double mx = mean_under(px, fx), my = mean_under(qy, gy);
  double cov = 0.0;
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.q(); ++j) {
      cov += d.prob(i, j) * (fx[i] - mx) * (gy[j] - my);
    }
  }
  double vx = 0.0, vy = 0.0;
  for (std::size_t i = 0; i < d.p(); ++i) vx += px[i] * (fx[i] - mx) * (fx[i] - mx);
  for (std::size_t j = 0; j < d.q(); ++j) vy += qy[j] * (gy[j] - my) * (gy[j] - my);
  if (vx == 0.0 || vy == 0.0) {
    throw DegenerateMarginal("grade correlation: a marginal concentrates on a single point");
  }
  return cov / std::sqrt(vx * vy);
}

FiniteBivariateDistribution dichotomize(const FiniteBivariateDistribution& d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw OutOfRange("dichotomize: alpha must lie strictly in (0,1)");
  }
  const std::vector<double> qy = d.y_marginal();
  // Left-continuous quantile: smallest support point with G(y) >= alpha.
  std::size_t threshold = d.q();
  double cum = 0.0;
  for (std::size_t j = 0; j < d.q(); ++j) {
    cum += qy[j];
    if (cum >= alpha) {
      threshold = j;
      break;
    }
  }
  std::vector<double> pmf(d.p() * 2, 0.0);
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.q(); ++j) {
      pmf[i * 2 + (j >= threshold ? 1 : 0)] += d.prob(i, j);
    }
  }
  double mass0 = 0.0, mass1 = 0.0;
  for (std::size_t i = 0; i < d.p(); ++i) {
    mass0 += pmf[i * 2];
    mass1 += pmf[i * 2 + 1];
  }
  if (mass0 == 0.0 || mass1 == 0.0) {
    throw DegenerateClass("dichotomize: a class receives zero mass at alpha = " +
                          std::to_string(alpha));
  }
  return FiniteBivariateDistribution(d.x_support(), {0.0, 1.0}, std::move(pmf));
}

double triangle_auc_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw OutOfRange("triangle_auc_alpha: alpha must lie strictly in (0,1)");
  }
  if (alpha == 0.5) return 0.5;
  if (alpha > 0.5) return 1.0 - triangle_auc_alpha(1.0 - alpha);
  return 1.0 - ((2.0 / 3.0) * std::sqrt(2.0 * alpha) - (5.0 / 6.0) * alpha) / (1.0 - alpha);
}

double triangle_mc(double alpha, std::size_t samples, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw OutOfRange("triangle_mc: alpha must lie strictly in (0,1)");
  }
  if (samples < 2) throw ValidationError("triangle_mc: need at least 2 samples");
  Rng rng(seed);
  const double xa =
      (alpha <= 0.5) ? std::sqrt(alpha / 2.0) : 1.0 - std::sqrt((1.0 - alpha) / 2.0);
  std::vector<double> y0, y1;
  for (std::size_t k = 0; k < samples; ++k) {
    const double u = rng.uniform();
    const double x = (u < 0.5) ? std::sqrt(u / 2.0) : 1.0 - std::sqrt((1.0 - u) / 2.0);
    const double y = rng.uniform() * (1.0 - 2.0 * std::abs(x - 0.5));
    (x >= xa ? y1 : y0).push_back(y);
  }
  if (y0.empty() || y1.empty()) {
    throw DegenerateClass("triangle_mc: a class received no draws");
  }
  // P(Y0 < Y1) + P(Y0 = Y1)/2 by merging the sorted class samples.
  std::sort(y0.begin(), y0.end());
  std::sort(y1.begin(), y1.end());
  long double wins = 0.0L;
  std::size_t below = 0, equal_start = 0;
  for (double v : y1) {
    while (equal_start < y0.size() && y0[equal_start] < v) ++equal_start;
    below = equal_start;
    std::size_t equal = 0;
    while (equal_start + equal < y0.size() && y0[equal_start + equal] == v) ++equal;
    wins += static_cast<long double>(below) + 0.5L * equal;
  }
  return static_cast<double>(wins / (static_cast<long double>(y0.size()) *
                                     static_cast<long double>(y1.size())));
}

}  // namespace monodep::oracle
