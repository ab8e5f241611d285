#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "monodep/column.hpp"
#include "monodep/ranks.hpp"

namespace monodep {

enum class MeasureKind { agc, cma, auc, cid, akc, rga, cpa, spearman, kendall };

const char* measure_name(MeasureKind kind);
MeasureKind measure_from_name(const std::string& name);

struct MeasureValue {
  MeasureKind kind;
  double value;
  std::size_t n;
  // Constant predictor column: the numerator covariance is exactly zero, the
  // value is reported as 0 with this flag instead of an error.
  bool degenerate_predictor = false;
};

struct MeasureConfig {
  // Upper bound on n for the O(n^2) representations (cma_concordance,
  // cma_grouped, cpa); the ratio form has no cap.
  std::size_t max_quadratic_n = 20000;
};

// Ratio of mid-rank deviation sums, O(n log n). x is the predictor, y the
// outcome; the denominator is the outcome's mid-rank variance.
MeasureValue agc(const DataColumn& x, const DataColumn& y);

// (agc + 1)/2.
MeasureValue cma(const DataColumn& x, const DataColumn& y);

// Concordance double-sum representation of cma, O(n^2).
MeasureValue cma_concordance(const DataColumn& x, const DataColumn& y,
                             const MeasureConfig& config = {});

// Representation of cma grouped by unique outcome values and their mid ranks.
MeasureValue cma_grouped(const DataColumn& x, const DataColumn& y,
                         const MeasureConfig& config = {});

// Mann-Whitney AUC; y must take exactly two distinct values, the smaller one
// is class 0. Flip the orientation by negating x.
MeasureValue auc(const DataColumn& x, const DataColumn& y);

// Tie-adjusted concordance probability given strictly ordered outcomes.
MeasureValue cid(const DataColumn& x, const DataColumn& y);

// Somers' D of y on x: 2 cid - 1.
MeasureValue akc(const DataColumn& x, const DataColumn& y);

// Covariance-ratio measure using the raw outcome values; unlike the other
// measures it is not invariant under increasing transforms of y.
MeasureValue rga(const DataColumn& x, const DataColumn& y);

// Class-index-weighted concordance over unique outcome values.
MeasureValue cpa(const DataColumn& x, const DataColumn& y,
                 const MeasureConfig& config = {});

MeasureValue spearman(const DataColumn& x, const DataColumn& y);

// Kendall tau (sample version of the signed-pair expectation, denominator
// n(n-1)/2), computed by merge-sort inversion counting in O(n log n).
MeasureValue kendall(const DataColumn& x, const DataColumn& y);

struct MixtureLevel {
  double level;   // (i+1)/n
  double weight;  // 6 i (n-i) / (n (n-1) (n+1))
  double auc;     // AUC with the outcome dichotomized at the (i+1)-th order statistic
};

struct MixtureResult {
  MeasureValue value;  // kind cma: the weighted AUC mixture
  std::vector<MixtureLevel> levels;
};

// Decomposition of cma as a weighted mixture of dichotomized AUCs; requires
// pairwise distinct outcomes.
MixtureResult cma_auc_mixture(const DataColumn& x, const DataColumn& y);

// Pair concordance counts with tie breakdown, O(n log n). Exposed for reuse
// by kendall/cid/akc and their tests.
struct ConcordanceCounts {
  unsigned long long total;       // n(n-1)/2
  unsigned long long x_ties;      // pairs tied in x
  unsigned long long y_ties;      // pairs tied in y
  unsigned long long both_ties;   // pairs tied in x and y
  unsigned long long discordant;  // strictly opposite-ordered pairs
  unsigned long long concordant() const {
    return total - x_ties - y_ties + both_ties - discordant;
  }
};

ConcordanceCounts concordance_counts(const DataColumn& x, const DataColumn& y);

}  // namespace monodep
