#pragma once

#include <cstddef>
#include <vector>

#include "monodep/column.hpp"

namespace monodep {

// Mid ranks, grades (mid-distribution values), CDF and left-limit CDF per
// observation, plus the granularity of the empirical law. distinct_values,
// counts and value_index expose the tie structure for reuse.
struct GradeTable {
  std::vector<double> mid_ranks;  // R_i in [1, n], ties share the mean rank
  std::vector<double> grades;     // (R_i - 1/2)/n
  std::vector<double> cdf;        // G_n(Y_i)
  std::vector<double> cdf_left;   // G_n(Y_i-), proportion strictly less
  double granularity = 0.0;       // gamma_n = 1 - (12/n^2) var_n(mid ranks)
  bool degenerate = false;        // all values equal

  std::vector<double> distinct_values;   // ascending
  std::vector<std::size_t> counts;       // N_c per distinct value
  std::vector<std::size_t> value_index;  // observation -> distinct index
};

// s(a, b) = 1{a < b} + 1/2 1{a = b}; satisfies s(a,b) + s(b,a) = 1.
inline double similarity(double a, double b) {
  return (a < b) ? 1.0 : (a == b ? 0.5 : 0.0);
}

std::vector<double> mid_ranks(const DataColumn& col);

GradeTable grade_table(const DataColumn& col);

}  // namespace monodep
