#include "monodep/rng.hpp"

#include "monodep/stats.hpp"

namespace monodep {

double Rng::normal() {
  return stats::normal_quantile(uniform());
}

}  // namespace monodep
