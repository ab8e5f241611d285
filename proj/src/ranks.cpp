#include "monodep/ranks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace monodep {

std::vector<double> mid_ranks(const DataColumn& col) {
  return grade_table(col).mid_ranks;
}

GradeTable grade_table(const DataColumn& col) {
  const std::vector<double>& v = col.values();
  const std::size_t n = v.size();

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });

  GradeTable t;
  t.mid_ranks.resize(n);
  t.grades.resize(n);
  t.cdf.resize(n);
  t.cdf_left.resize(n);
  t.value_index.resize(n);

  const double dn = static_cast<double>(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t stop = start + 1;
    while (stop < n && v[order[stop]] == v[order[start]]) ++stop;
    const std::size_t count = stop - start;
    // Group occupies sorted positions start+1 .. stop (1-based); the mid rank
    // is their mean, a half-integer, exact in double for any realistic n.
    const double rank = static_cast<double>(start) + (static_cast<double>(count) + 1.0) / 2.0;
    const double grade = (rank - 0.5) / dn;
    const double lo = static_cast<double>(start) / dn;
    const double hi = static_cast<double>(stop) / dn;
    const std::size_t value_idx = t.distinct_values.size();
    t.distinct_values.push_back(v[order[start]]);
    t.counts.push_back(count);
    for (std::size_t i = start; i < stop; ++i) {
      const std::size_t j = order[i];
      t.mid_ranks[j] = rank;
      t.grades[j] = grade;
      t.cdf_left[j] = lo;
      t.cdf[j] = hi;
      t.value_index[j] = value_idx;
    }
    start = stop;
  }

  // gamma_n = 1 - (12/n^2) var_n(mid ranks), divisor n. Deviations from
  // (n+1)/2 are half-integers, so the sum of squares is exact.
  const double center = (dn + 1.0) / 2.0;
  double ss = 0.0;
  for (double r : t.mid_ranks) {
    const double d = r - center;
    ss += d * d;
  }
  const double var = ss / dn;
  t.granularity = 1.0 - 12.0 * var / (dn * dn);
  t.degenerate = (t.distinct_values.size() == 1);
  if (t.degenerate) t.granularity = 1.0;
  return t;
}

}  // namespace monodep
