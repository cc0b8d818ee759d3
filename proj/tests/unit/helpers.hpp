#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "anisolab/field.hpp"
#include "anisolab/grid.hpp"

namespace anisolab::test {

inline Grid square(Index n, int q = 1) {
  const std::vector<double> ext{1.0, 1.0};
  const std::vector<Index> cells{n, n};
  return make_grid(ext, cells, q);
}

inline Grid cube(Index n, int q = 1) {
  const std::vector<double> ext{1.0, 1.0, 1.0};
  const std::vector<Index> cells{n, n, n};
  return make_grid(ext, cells, q);
}

/// Random interior values, zero boundary.
inline ScalarField random_field(const Grid& g, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  ScalarField u(g);
  for (Index k = 0; k < u.size(); ++k) u[k] = d(rng);
  u.zero_boundary();
  return u;
}

/// Slope of log(err) against log(h) between consecutive refinements.
inline std::vector<double> slopes(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> s;
  for (std::size_t i = 1; i < h.size(); ++i) s.push_back(std::log(err[i - 1] / err[i]) / std::log(h[i - 1] / h[i]));
  return s;
}

}  // namespace anisolab::test
