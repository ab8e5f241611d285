#pragma once

#include <cstddef>

namespace monodep::stats {

// Standard normal CDF, accurate to ~1e-15 via erfc.
double normal_cdf(double t);

// Standard normal quantile; u in (0, 1).
double normal_quantile(double u);

// Chi-square CDF with df > 0 degrees of freedom, via the regularized
// incomplete gamma function.
double chi_square_cdf(double x, double df);

// Chi-square upper tail, 1 - CDF, computed without cancellation.
double chi_square_sf(double x, double df);

}  // namespace monodep::stats
