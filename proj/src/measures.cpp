#include "monodep/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monodep/errors.hpp"

namespace monodep {

namespace {

constexpr const char* kMeasureNames[] = {"agc", "cma", "auc",      "cid",    "akc",
                                         "rga", "cpa", "spearman", "kendall"};

void check_lengths(const DataColumn& x, const DataColumn& y) {
  if (x.size() != y.size()) {
    throw ValidationError("columns have different lengths: " + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()));
  }
}

void check_quadratic_cap(std::size_t n, const MeasureConfig& config, const char* op) {
  if (n > config.max_quadratic_n) {
    throw ValidationError(std::string(op) + ": n = " + std::to_string(n) +
                          " exceeds the O(n^2) cap " + std::to_string(config.max_quadratic_n) +
                          "; use the ratio form or raise max_quadratic_n");
  }
}

// Deviation products of mid ranks around (n+1)/2. Half-integer inputs keep
// the terms exact; long double accumulation keeps the sums exact up to n ~ 1e6.
struct RankMoments {
  double cross;  // sum (Q_i - c)(R_i - c)
  double xx;     // sum (Q_i - c)^2
  double yy;     // sum (R_i - c)^2
};

RankMoments rank_moments(const std::vector<double>& qx, const std::vector<double>& ry) {
  const double c = (static_cast<double>(qx.size()) + 1.0) / 2.0;
  long double cross = 0.0L, xx = 0.0L, yy = 0.0L;
  for (std::size_t i = 0; i < qx.size(); ++i) {
    const double a = qx[i] - c;
    const double b = ry[i] - c;
    cross += static_cast<long double>(a) * b;
    xx += static_cast<long double>(a) * a;
    yy += static_cast<long double>(b) * b;
  }
  return {static_cast<double>(cross), static_cast<double>(xx), static_cast<double>(yy)};
}

// Buckets of predictor values per distinct outcome value, ascending in y.
std::vector<std::vector<double>> outcome_buckets(const DataColumn& x, const GradeTable& gy) {
  std::vector<std::vector<double>> buckets(gy.distinct_values.size());
  for (std::size_t c = 0; c < buckets.size(); ++c) buckets[c].reserve(gy.counts[c]);
  for (std::size_t i = 0; i < x.size(); ++i) buckets[gy.value_index[i]].push_back(x[i]);
  return buckets;
}

double pair_similarity_sum(const std::vector<double>& lo, const std::vector<double>& hi) {
  long double s = 0.0L;
  for (double a : lo) {
    for (double b : hi) s += (a < b) ? 1.0 : (a == b ? 0.5 : 0.0);
  }
  return static_cast<double>(s);
}

// Weighted concordance over outcome groups: sum over group pairs i < j of
// (w_j - w_i) * [sum of s(x in group i, x in group j)] over the same with the
// s-sum replaced by N_i N_j.
MeasureValue grouped_concordance(const DataColumn& x, const GradeTable& gy,
                                 const std::vector<double>& group_weight, MeasureKind kind) {
  if (x.degenerate()) {
    // The numerator is exactly half the denominator for a constant predictor;
    // report the independence value with the warning flag, as agc does.
    return {kind, 0.5, x.size(), true};
  }
  const auto buckets = outcome_buckets(x, gy);
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i + 1 < buckets.size(); ++i) {
    for (std::size_t j = i + 1; j < buckets.size(); ++j) {
      const double w = group_weight[j] - group_weight[i];
      num += static_cast<long double>(w) * pair_similarity_sum(buckets[i], buckets[j]);
      den += static_cast<long double>(w) *
             (static_cast<double>(buckets[i].size()) * static_cast<double>(buckets[j].size()));
    }
  }
  return {kind, static_cast<double>(num / den), x.size(), false};
}

std::vector<double> unique_mid_ranks(const GradeTable& gy) {
  std::vector<double> r(gy.counts.size());
  std::size_t before = 0;
  for (std::size_t c = 0; c < gy.counts.size(); ++c) {
    r[c] = static_cast<double>(before) + (static_cast<double>(gy.counts[c]) + 1.0) / 2.0;
    before += gy.counts[c];
  }
  return r;
}

}  // namespace

const char* measure_name(MeasureKind kind) {
  return kMeasureNames[static_cast<int>(kind)];
}

MeasureKind measure_from_name(const std::string& name) {
  for (int k = 0; k < 9; ++k) {
    if (name == kMeasureNames[k]) return static_cast<MeasureKind>(k);
  }
  throw ValidationError("unknown measure '" + name + "'");
}

MeasureValue agc(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const GradeTable gy = grade_table(y);
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  const GradeTable gx = grade_table(x);
  if (gx.degenerate) return {MeasureKind::agc, 0.0, x.size(), true};
  const RankMoments m = rank_moments(gx.mid_ranks, gy.mid_ranks);
  return {MeasureKind::agc, m.cross / m.yy, x.size(), false};
}

MeasureValue cma(const DataColumn& x, const DataColumn& y) {
  MeasureValue v = agc(x, y);
  return {MeasureKind::cma, (v.value + 1.0) / 2.0, v.n, v.degenerate_predictor};
}

MeasureValue cma_concordance(const DataColumn& x, const DataColumn& y,
                             const MeasureConfig& config) {
  check_lengths(x, y);
  check_quadratic_cap(x.size(), config, "cma_concordance");
  const GradeTable gy = grade_table(y);
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  if (x.degenerate()) return {MeasureKind::cma, 0.5, x.size(), true};
  const std::vector<double>& xv = x.values();
  const std::vector<double>& yv = y.values();
  const std::vector<double>& r = gy.mid_ranks;
  const std::size_t n = xv.size();
  long double num = 0.0L, den = 0.0L;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      if (yv[k] == yv[l]) continue;
      // Orient the pair so the outcome increases; contribution of the ordered
      // pair (lo, hi) is (R_lo - R_hi) s(X_lo, X_hi), denominator (R_lo - R_hi).
      const bool fwd = yv[k] < yv[l];
      const std::size_t lo = fwd ? k : l, hi = fwd ? l : k;
      const double d = r[lo] - r[hi];
      num += static_cast<long double>(d) * similarity(xv[lo], xv[hi]);
      den += d;
    }
  }
  return {MeasureKind::cma, static_cast<double>(num / den), n, false};
}

MeasureValue cma_grouped(const DataColumn& x, const DataColumn& y, const MeasureConfig& config) {
  check_lengths(x, y);
  check_quadratic_cap(x.size(), config, "cma_grouped");
  const GradeTable gy = grade_table(y);
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  return grouped_concordance(x, gy, unique_mid_ranks(gy), MeasureKind::cma);
}

MeasureValue auc(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const GradeTable gy = grade_table(y);
  if (gy.distinct_values.size() != 2) {
    throw NotBinary("auc: outcome has " + std::to_string(gy.distinct_values.size()) +
                    " distinct values, need exactly 2");
  }
  const GradeTable gx = grade_table(x);
  long double rank_sum = 0.0L;
  std::size_t n1 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (gy.value_index[i] == 1) {
      rank_sum += gx.mid_ranks[i];
      ++n1;
    }
  }
  const std::size_t n0 = y.size() - n1;
  const double u = static_cast<double>(rank_sum) -
                   static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;
  return {MeasureKind::auc, u / (static_cast<double>(n0) * static_cast<double>(n1)), y.size(),
          x.degenerate()};
}

ConcordanceCounts concordance_counts(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const std::vector<double>& xv = x.values();
  const std::vector<double>& yv = y.values();
  const std::size_t n = xv.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (xv[a] != xv[b]) return xv[a] < xv[b];
    return yv[a] < yv[b];
  });

  ConcordanceCounts c{};
  c.total = static_cast<unsigned long long>(n) * (n - 1) / 2;

  auto tie_pairs = [](unsigned long long g) { return g * (g - 1) / 2; };

  // x-tie and joint-tie runs over the (x, y)-sorted order.
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && xv[order[j]] == xv[order[i]]) ++j;
    c.x_ties += tie_pairs(j - i);
    std::size_t a = i;
    while (a < j) {
      std::size_t b = a;
      while (b < j && yv[order[b]] == yv[order[a]]) ++b;
      c.both_ties += tie_pairs(b - a);
      a = b;
    }
    i = j;
  }

  // y-tie runs: from the multiplicities of y alone.
  {
    std::vector<double> ys = yv;
    std::sort(ys.begin(), ys.end());
    std::size_t a = 0;
    while (a < n) {
      std::size_t b = a;
      while (b < n && ys[b] == ys[a]) ++b;
      c.y_ties += tie_pairs(b - a);
      a = b;
    }
  }

  // Strict inversions of the y-sequence in (x, y)-sorted order = discordant
  // pairs: within an x-group y ascends (no strict inversion), across groups an
  // inversion means x up, y strictly down. Merge sort, taking left on ties.
  std::vector<double> seq(n), tmp(n);
  for (std::size_t k = 0; k < n; ++k) seq[k] = yv[order[k]];
  unsigned long long inv = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
      const std::size_t mid = lo + width;
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, out = lo;
      while (a < mid && b < hi) {
        if (seq[a] <= seq[b]) {
          tmp[out++] = seq[a++];
        } else {
          inv += mid - a;
          tmp[out++] = seq[b++];
        }
      }
      while (a < mid) tmp[out++] = seq[a++];
      while (b < hi) tmp[out++] = seq[b++];
      std::copy(tmp.begin() + lo, tmp.begin() + hi, seq.begin() + lo);
    }
  }
  c.discordant = inv;
  return c;
}

MeasureValue cid(const DataColumn& x, const DataColumn& y) {
  const ConcordanceCounts c = concordance_counts(x, y);
  const unsigned long long strict_y = c.total - c.y_ties;
  if (strict_y == 0) throw DegenerateOutcome("outcome column is constant");
  // Pairs tied in x but with distinct outcomes contribute 1/2 each.
  const double num = static_cast<double>(c.concordant()) +
                     0.5 * static_cast<double>(c.x_ties - c.both_ties);
  return {MeasureKind::cid, num / static_cast<double>(strict_y), x.size(), x.degenerate()};
}

MeasureValue akc(const DataColumn& x, const DataColumn& y) {
  MeasureValue v = cid(x, y);
  return {MeasureKind::akc, 2.0 * v.value - 1.0, v.n, v.degenerate_predictor};
}

MeasureValue rga(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const GradeTable gy = grade_table(y);
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  const GradeTable gx = grade_table(x);
  const std::vector<double>& yv = y.values();
  const std::size_t n = yv.size();
  long double ysum = 0.0L;
  for (double v : yv) ysum += v;
  const double ymean = static_cast<double>(ysum / n);
  const double c = (static_cast<double>(n) + 1.0) / 2.0;
  long double num = 0.0L, den = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const double dy = yv[i] - ymean;
    num += static_cast<long double>(dy) * (gx.mid_ranks[i] - c);
    den += static_cast<long double>(dy) * (gy.mid_ranks[i] - c);
  }
  if (gx.degenerate) return {MeasureKind::rga, 0.5, n, true};
  return {MeasureKind::rga, 0.5 * (static_cast<double>(num / den) + 1.0), n, false};
}

MeasureValue cpa(const DataColumn& x, const DataColumn& y, const MeasureConfig& config) {
  check_lengths(x, y);
  check_quadratic_cap(x.size(), config, "cpa");
  const GradeTable gy = grade_table(y);
  if (gy.degenerate) throw DegenerateOutcome("outcome column is constant");
  std::vector<double> index_weight(gy.counts.size());
  std::iota(index_weight.begin(), index_weight.end(), 1.0);
  return grouped_concordance(x, gy, index_weight, MeasureKind::cpa);
}

MeasureValue spearman(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const GradeTable gx = grade_table(x);
  const GradeTable gy = grade_table(y);
  if (gx.degenerate || gy.degenerate) {
    throw DegenerateInput("spearman: constant column");
  }
  const RankMoments m = rank_moments(gx.mid_ranks, gy.mid_ranks);
  return {MeasureKind::spearman, m.cross / std::sqrt(m.xx * m.yy), x.size(), false};
}

MeasureValue kendall(const DataColumn& x, const DataColumn& y) {
  if (x.degenerate() || y.degenerate()) {
    throw DegenerateInput("kendall: constant column");
  }
  const ConcordanceCounts c = concordance_counts(x, y);
  const double cd = static_cast<double>(c.concordant()) - static_cast<double>(c.discordant);
  return {MeasureKind::kendall, cd / static_cast<double>(c.total), x.size(), false};
}

MixtureResult cma_auc_mixture(const DataColumn& x, const DataColumn& y) {
  check_lengths(x, y);
  const GradeTable gy = grade_table(y);
  const std::size_t n = y.size();
  if (gy.distinct_values.size() != n) {
    throw TiedOutcomes("cma_auc_mixture: outcome values must be pairwise distinct");
  }
  const GradeTable gx = grade_table(x);

  // Observations in descending outcome order; value_index is the rank of the
  // (distinct) outcome, so position i holds the outcome of rank n-i.
  std::vector<std::size_t> desc(n);
  for (std::size_t i = 0; i < n; ++i) desc[n - 1 - gy.value_index[i]] = i;

  MixtureResult result;
  result.levels.reserve(n - 1);
  const double dn = static_cast<double>(n);
  const double wdenom = dn * (dn - 1.0) * (dn + 1.0);
  long double suffix = 0.0L;  // sum of predictor mid ranks over the top class
  long double total = 0.0L;
  for (std::size_t i = n - 1; i >= 1; --i) {
    // Threshold at the (i+1)-th order statistic: class 1 holds the n-i largest
    // outcomes, which are desc[0 .. n-i-1].
    suffix += gx.mid_ranks[desc[n - 1 - i]];
    const double n1 = dn - static_cast<double>(i);
    const double u = static_cast<double>(suffix) - n1 * (n1 + 1.0) / 2.0;
    const double auc_i = u / (static_cast<double>(i) * n1);
    const double weight = 6.0 * static_cast<double>(i) * n1 / wdenom;
    result.levels.push_back({(static_cast<double>(i) + 1.0) / dn, weight, auc_i});
    total += static_cast<long double>(weight) * auc_i;
  }
  std::reverse(result.levels.begin(), result.levels.end());
  result.value = {MeasureKind::cma, static_cast<double>(total), n, x.degenerate()};
  return result;
}

}  // namespace monodep
