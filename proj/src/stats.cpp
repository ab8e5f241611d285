#include "monodep/stats.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "monodep/errors.hpp"

namespace monodep::stats {

double normal_cdf(double t) {
  return 0.5 * std::erfc(-t / std::sqrt(2.0));
}

double normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw OutOfRange("normal_quantile: argument must lie strictly in (0,1)");
  }
  // Phi^-1(u) = -sqrt(2) erfc^-1(2u); erfc_inv is stable in both tails.
  return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * u);
}

double chi_square_cdf(double x, double df) {
  if (!(df > 0.0)) throw OutOfRange("chi_square_cdf: df must be positive");
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(df / 2.0, x / 2.0);
}

double chi_square_sf(double x, double df) {
  if (!(df > 0.0)) throw OutOfRange("chi_square_sf: df must be positive");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

}  // namespace monodep::stats
