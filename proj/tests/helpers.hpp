#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "monodep/column.hpp"
#include "monodep/rng.hpp"

// Seeded generators shared by the test binaries. Each test records the seed
// it passes in, so failures reproduce exactly.
namespace testutil {

// Values from a small alphabet (spaced by 0.5 so ties are exact); redraws
// until at least two distinct values appear.
inline std::vector<double> alphabet_column(monodep::Rng& rng, std::size_t n,
                                           std::size_t alphabet) {
  for (;;) {
    std::vector<double> v(n);
    for (double& x : v) {
      x = 0.5 * static_cast<double>(rng.uniform_below(alphabet)) - 1.0;
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] != v[0]) return v;
    }
  }
}

// All-distinct column (uniform draws; collisions have probability ~0, but
// redraw anyway so the distinctness contract is unconditional).
inline std::vector<double> distinct_column(monodep::Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform();
    std::vector<double> sorted(v);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return v;
  }
}

// Binary 0/1 column with both classes present.
inline std::vector<double> binary_column(monodep::Rng& rng, std::size_t n) {
  for (;;) {
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng.uniform_below(2));
    for (std::size_t i = 1; i < n; ++i) {
      if (v[i] != v[0]) return v;
    }
  }
}

struct RandomDataset {
  std::vector<double> x;
  std::vector<double> y;
};

// Mixed tie structure: x and y drawn from alphabets of random size (2..8),
// occasionally continuous; outcome never constant.
inline RandomDataset random_dataset(std::uint64_t seed, std::size_t max_n = 30) {
  monodep::Rng rng(seed, 0x5eed);
  const std::size_t n = 5 + rng.uniform_below(max_n > 5 ? max_n - 4 : 1);
  RandomDataset d;
  const std::uint64_t mode_x = rng.uniform_below(4);
  d.x = mode_x == 3 ? distinct_column(rng, n) : alphabet_column(rng, n, 2 + rng.uniform_below(5));
  const std::uint64_t mode_y = rng.uniform_below(4);
  d.y = mode_y == 3 ? distinct_column(rng, n) : alphabet_column(rng, n, 2 + rng.uniform_below(5));
  return d;
}

struct RandomPmf {
  std::vector<double> x_support;
  std::vector<double> y_support;
  std::vector<double> pmf;  // row-major p x q
};

// Probabilities from normalized exponentials (flat Dirichlet); a few entries
// are zeroed to exercise sparse grids, keeping every marginal positive.
inline RandomPmf random_pmf(std::uint64_t seed, std::size_t max_side = 8) {
  monodep::Rng rng(seed, 0xd15c);
  const std::size_t p = 2 + rng.uniform_below(max_side - 1);
  const std::size_t q = 2 + rng.uniform_below(max_side - 1);
  RandomPmf d;
  for (std::size_t i = 0; i < p; ++i) d.x_support.push_back(0.25 * static_cast<double>(i) - 1.0);
  for (std::size_t j = 0; j < q; ++j) d.y_support.push_back(0.5 * static_cast<double>(j));
  d.pmf.resize(p * q);
  for (;;) {
    double total = 0.0;
    for (double& w : d.pmf) {
      w = -std::log(rng.uniform());
      if (rng.uniform_below(4) == 0) w = 0.0;  // sparse cells
      total += w;
    }
    if (total <= 0.0) continue;
    for (double& w : d.pmf) w /= total;
    // Keep marginals nondegenerate: every row and column must carry mass.
    bool ok = true;
    for (std::size_t i = 0; i < p && ok; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < q; ++j) row += d.pmf[i * q + j];
      ok = row > 0.0;
    }
    for (std::size_t j = 0; j < q && ok; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < p; ++i) col += d.pmf[i * q + j];
      ok = col > 0.0;
    }
    if (ok) return d;
  }
}

}  // namespace testutil
