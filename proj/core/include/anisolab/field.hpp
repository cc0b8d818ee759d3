#pragma once

#include <functional>
#include <span>
#include <vector>

#include "anisolab/grid.hpp"

namespace anisolab {

/// Real grid function over all nodes, boundary included.
class ScalarField {
 public:
  explicit ScalarField(Grid grid, double fill = 0.0);
  ScalarField(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  Index size() const noexcept { return static_cast<Index>(values_.size()); }

  double& operator[](Index i) { return values_[static_cast<std::size_t>(i)]; }
  double operator[](Index i) const { return values_[static_cast<std::size_t>(i)]; }
  double& at(std::span<const Index> idx) { return (*this)[grid_.linear(idx)]; }
  double at(std::span<const Index> idx) const { return (*this)[grid_.linear(idx)]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  /// Copies interior values in interior-unknown order.
  std::vector<double> interior() const;
  /// Scatters interior values back; boundary nodes are left untouched.
  void set_interior(std::span<const double> interior);

  void zero_boundary();
  double max_abs_boundary() const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Samples fn(x) at every node.
ScalarField sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn);

/// Maps a full-grid linear index to the interior-unknown numbering, or -1.
class InteriorNumbering {
 public:
  explicit InteriorNumbering(const Grid& grid);

  Index unknowns() const noexcept { return unknowns_; }
  Index operator()(Index linear) const { return map_[static_cast<std::size_t>(linear)]; }
  Index node(Index unknown) const { return nodes_[static_cast<std::size_t>(unknown)]; }

 private:
  Index unknowns_ = 0;
  std::vector<Index> map_;
  std::vector<Index> nodes_;
};

/// Whole-cell translation tau_h u(x) = u(x + h).
///
/// Every node of `mask` shifted by `h_cells` must stay on the grid, otherwise
/// ConfigError is thrown. Nodes whose shifted index leaves the grid are set
/// to NaN so accidental reads outside the admissible region are visible.
ScalarField shift_field(const ScalarField& u, std::span<const Index> h_cells, const SubdomainMask& mask);

}  // namespace anisolab
