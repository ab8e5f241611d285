#include "monodep/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "monodep/errors.hpp"
#include "monodep/measures.hpp"
#include "monodep/rng.hpp"

namespace monodep {

namespace {

// Round to nearest integer, ties to even; spelled out rather than relying on
// the process floating-point rounding mode.
double round_half_even(double v) {
  const double f = std::floor(v);
  const double d = v - f;
  if (d > 0.5) return f + 1.0;
  if (d < 0.5) return f;
  return std::fmod(f, 2.0) == 0.0 ? f : f + 1.0;
}

double draw_marginal(Rng& rng, const MarginalSpec& spec) {
  switch (spec.kind) {
    case Marginal::std_normal: return rng.normal();
    case Marginal::uniform01: return rng.uniform();
    case Marginal::uniform_levels:
      return static_cast<double>(rng.uniform_below(spec.levels) + 1);
  }
  throw ValidationError("unknown marginal kind");
}

std::vector<double> normalized_custom_pmf(const ScenarioSpec& spec) {
  const std::size_t k = spec.custom_p.size();
  if (k == 0 || spec.custom_x.size() != k || spec.custom_y.size() != k) {
    throw ValidationError("custom design needs equal-length nonempty x, y, p lists");
  }
  double total = 0.0;
  for (double p : spec.custom_p) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError("custom pmf probabilities must be finite and nonnegative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("custom pmf probabilities sum to " + std::to_string(total) +
                          ", not 1 within 1e-9");
  }
  std::vector<double> pmf(spec.custom_p);
  for (double& p : pmf) p /= total;
  return pmf;
}

}  // namespace

const char* design_name(Design design) {
  switch (design) {
    case Design::correlated_normal: return "correlated-normal";
    case Design::correlated_normal_rounded: return "correlated-normal-rounded";
    case Design::bivariate_normal: return "bivariate-normal";
    case Design::triangle: return "triangle";
    case Design::independent: return "independent";
    case Design::custom: return "custom";
  }
  return "?";
}

Design design_from_name(const std::string& name) {
  for (Design d : {Design::correlated_normal, Design::correlated_normal_rounded,
                   Design::bivariate_normal, Design::triangle, Design::independent,
                   Design::custom}) {
    if (name == design_name(d)) return d;
  }
  throw ValidationError("unknown design '" + name + "'");
}

const char* marginal_name(Marginal marginal) {
  switch (marginal) {
    case Marginal::std_normal: return "std-normal";
    case Marginal::uniform01: return "uniform01";
    case Marginal::uniform_levels: return "uniform-levels";
  }
  return "?";
}

Marginal marginal_from_name(const std::string& name) {
  for (Marginal m : {Marginal::std_normal, Marginal::uniform01, Marginal::uniform_levels}) {
    if (name == marginal_name(m)) return m;
  }
  throw ValidationError("unknown marginal '" + name + "'");
}

const char* test_kind_name(TestKind kind) {
  switch (kind) {
    case TestKind::simple_zero: return "simple";
    case TestKind::pairwise: return "pairwise";
    case TestKind::contrasts_all_pairs: return "contrasts";
  }
  return "?";
}

TestKind test_kind_from_name(const std::string& name) {
  for (TestKind k : {TestKind::simple_zero, TestKind::pairwise, TestKind::contrasts_all_pairs}) {
    if (name == test_kind_name(k)) return k;
  }
  throw ValidationError("unknown test kind '" + name + "'");
}

void validate(const ScenarioSpec& spec) {
  if (spec.n < 10) {
    throw ValidationError("scenario n must be at least 10, got " + std::to_string(spec.n));
  }
  if (spec.replicates < 1) {
    throw ValidationError("scenario needs at least one replicate");
  }
  if (spec.design == Design::bivariate_normal && !(spec.r > -1.0 && spec.r < 1.0)) {
    throw OutOfRange("correlation r must lie in (-1, 1), got " + std::to_string(spec.r));
  }
  if ((spec.marginal_x.kind == Marginal::uniform_levels && spec.marginal_x.levels < 2) ||
      (spec.marginal_y.kind == Marginal::uniform_levels && spec.marginal_y.levels < 2)) {
    throw ValidationError("uniform-levels marginal needs at least 2 levels");
  }
  if (spec.design == Design::custom) normalized_custom_pmf(spec);
}

PairedSample generate(const ScenarioSpec& spec, std::uint64_t replicate_index) {
  validate(spec);
  Rng rng(spec.seed, replicate_index);
  const std::size_t n = spec.n;

  switch (spec.design) {
    case Design::correlated_normal:
    case Design::correlated_normal_rounded: {
      const bool rounded = spec.design == Design::correlated_normal_rounded;
      std::vector<double> x1(n), x2(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double x0 = rng.normal();
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        const double eps = rng.normal();
        x1[i] = x0 + z1;
        x2[i] = x0 + z2;
        y[i] = x0 + eps;
        if (rounded) {
          x1[i] = round_half_even(x1[i]);
          x2[i] = round_half_even(x2[i]);
          y[i] = round_half_even(y[i]);
        }
      }
      return PairedSample(DataColumn(std::move(y), "y"),
                          {DataColumn(std::move(x1), "x1"), DataColumn(std::move(x2), "x2")});
    }
    case Design::bivariate_normal: {
      const double s = std::sqrt(1.0 - spec.r * spec.r);
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.normal();
        const double v = rng.normal();
        x[i] = u;
        y[i] = spec.r * u + s * v;
      }
      return PairedSample(DataColumn(std::move(y), "y"), {DataColumn(std::move(x), "x")});
    }
    case Design::triangle: {
      // Uniform on the triangle (0,0), (1/2,1), (1,0): X has density 8x on
      // [0,1/2] mirrored, so its CDF is 2x^2 there; Y given X is uniform on
      // [0, height(X)].
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double v = rng.uniform();
        const double xi = u < 0.5 ? std::sqrt(u / 2.0) : 1.0 - std::sqrt((1.0 - u) / 2.0);
        const double height = 1.0 - 2.0 * std::abs(xi - 0.5);
        x[i] = xi;
        y[i] = v * height;
      }
      return PairedSample(DataColumn(std::move(y), "y"), {DataColumn(std::move(x), "x")});
    }
    case Design::independent: {
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = draw_marginal(rng, spec.marginal_x);
        y[i] = draw_marginal(rng, spec.marginal_y);
      }
      return PairedSample(DataColumn(std::move(y), "y"), {DataColumn(std::move(x), "x")});
    }
    case Design::custom: {
      const std::vector<double> pmf = normalized_custom_pmf(spec);
      std::vector<double> cum(pmf.size());
      std::partial_sum(pmf.begin(), pmf.end(), cum.begin());
      cum.back() = 1.0;
      std::vector<double> x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const std::size_t j = std::lower_bound(cum.begin(), cum.end(), u) - cum.begin();
        x[i] = spec.custom_x[j];
        y[i] = spec.custom_y[j];
      }
      return PairedSample(DataColumn(std::move(y), "y"), {DataColumn(std::move(x), "x")});
    }
  }
  throw ValidationError("unknown design");
}

CalibrationReport run_calibration(const ScenarioSpec& spec, TestKind kind, bool one_sided,
                                  const InferenceConfig& inference) {
  validate(spec);
  const auto t0 = std::chrono::steady_clock::now();

  CalibrationReport report;
  report.replicates = spec.replicates;
  report.pvalues.reserve(spec.replicates);

  for (std::uint64_t i = 0; i < spec.replicates; ++i) {
    PairedSample sample = generate(spec, i);
    try {
      double p = 0.0;
      switch (kind) {
        case TestKind::simple_zero: {
          const PairedSample* s = &sample;
          PairedSample first(sample.outcome(), {sample.predictor(0)});
          if (sample.m() > 1) s = &first;
          const TestResult r = test_simple(*s, 0.0, MeasureKind::agc, inference);
          p = one_sided ? r.p_one_sided : r.p_two_sided;
          break;
        }
        case TestKind::pairwise: {
          const TestResult r = test_pairwise(sample, inference);
          p = one_sided ? r.p_one_sided : r.p_two_sided;
          break;
        }
        case TestKind::contrasts_all_pairs: {
          const TestResult r = test_contrasts(sample, all_pairs_contrasts(sample.m()), inference);
          p = r.p_two_sided;
          break;
        }
      }
      report.pvalues.push_back(p);
    } catch (const DegenerateData&) {
      ++report.errors;
    }
  }

  const std::size_t count = report.pvalues.size();
  report.histogram.assign(20, 0);
  for (double p : report.pvalues) {
    const std::size_t bin = std::min<std::size_t>(19, static_cast<std::size_t>(p * 20.0));
    ++report.histogram[bin];
  }
  std::vector<double> sorted(report.pvalues);
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double hi = static_cast<double>(i + 1) / count - sorted[i];
    const double lo = sorted[i] - static_cast<double>(i) / count;
    ks = std::max({ks, hi, lo});
  }
  report.ks_distance = ks;
  for (double level : {0.01, 0.05, 0.10}) {
    std::size_t rejected = 0;
    for (double p : report.pvalues) rejected += p <= level ? 1 : 0;
    report.rejection_rates.emplace_back(
        level, count == 0 ? 0.0 : static_cast<double>(rejected) / count);
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

namespace {

ConvergenceEntry summarize(std::string name, const std::vector<double>& values, double target) {
  ConvergenceEntry entry;
  entry.name = std::move(name);
  entry.target = target;
  const std::size_t k = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(k);
  entry.mean = mean;
  if (k >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    entry.mc_stderr = std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
    entry.z = entry.mc_stderr > 0.0 ? (mean - target) / entry.mc_stderr
                                    : std::numeric_limits<double>::quiet_NaN();
  } else {
    entry.mc_stderr = 0.0;
    entry.z = std::numeric_limits<double>::quiet_NaN();
  }
  return entry;
}

}  // namespace

std::vector<ConvergenceEntry> run_value_convergence(const ScenarioSpec& spec) {
  validate(spec);
  if (spec.design != Design::bivariate_normal && spec.design != Design::triangle) {
    throw ValidationError("value convergence is defined for the bivariate-normal and "
                          "triangle designs");
  }
  std::vector<double> first, second;
  first.reserve(spec.replicates);
  second.reserve(spec.replicates);
  for (std::uint64_t i = 0; i < spec.replicates; ++i) {
    const PairedSample sample = generate(spec, i);
    const DataColumn& x = sample.predictor(0);
    const DataColumn& y = sample.outcome();
    if (spec.design == Design::bivariate_normal) {
      first.push_back(agc(x, y).value);
      second.push_back(akc(x, y).value);
    } else {
      first.push_back(cma(x, y).value);
      second.push_back(spearman(x, y).value);
    }
  }
  std::vector<ConvergenceEntry> out;
  if (spec.design == Design::bivariate_normal) {
    const double pi = std::numbers::pi;
    out.push_back(summarize("agc", first, (6.0 / pi) * std::asin(spec.r / 2.0)));
    out.push_back(summarize("akc", second, (2.0 / pi) * std::asin(spec.r)));
  } else {
    out.push_back(summarize("cma", first, 0.5));
    out.push_back(summarize("spearman", second, 0.0));
  }
  return out;
}

}  // namespace monodep
