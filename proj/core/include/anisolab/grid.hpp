#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace anisolab {

using Index = std::ptrdiff_t;
using MultiIndex = std::vector<Index>;

/// Tensor-product grid on an axis-aligned box with a direction split.
///
/// Axes 0..q-1 form the degenerating block X1, axes q..N-1 the retained
/// block X2. Nodes run 0..cells[i] on each axis; nodes 0 and cells[i] lie on
/// the boundary. Linear node indices are row-major over axes in order
/// x1..xN, i.e. the last axis varies fastest.
class Grid {
 public:
  Grid(std::vector<double> lower, std::vector<double> upper,
       std::vector<Index> cells, int q);

  int dim() const noexcept { return static_cast<int>(cells_.size()); }
  int q() const noexcept { return q_; }
  int x2_dim() const noexcept { return dim() - q_; }
  bool in_x1(int axis) const noexcept { return axis < q_; }

  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  double extent(int axis) const { return upper_[axis] - lower_[axis]; }
  Index cells(int axis) const { return cells_[axis]; }
  Index nodes(int axis) const { return cells_[axis] + 1; }
  double spacing(int axis) const { return spacing_[axis]; }
  const std::vector<Index>& cells() const noexcept { return cells_; }

  /// Product of spacings, the quadrature weight of one node.
  double cell_volume() const noexcept { return cell_volume_; }

  Index node_count() const noexcept { return strides_.empty() ? 0 : strides_[0] * nodes(0); }
  Index interior_count() const noexcept;

  Index stride(int axis) const { return strides_[axis]; }
  Index linear(std::span<const Index> idx) const;
  MultiIndex multi(Index linear) const;
  void multi(Index linear, std::span<Index> out) const;

  double coordinate(int axis, Index i) const { return lower_[axis] + static_cast<double>(i) * spacing_[axis]; }
  std::vector<double> point(std::span<const Index> idx) const;

  /// Nearest node index along an axis for a coordinate.
  Index index_of(int axis, double x) const;

  bool is_boundary(std::span<const Index> idx) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.cells_ == b.cells_ && a.q_ == b.q_;
  }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<Index> cells_;
  int q_;
  std::vector<double> spacing_;
  std::vector<Index> strides_;
  double cell_volume_ = 1.0;
};

/// Builds a grid on prod_i (0, extents[i]) with the given cell counts.
Grid make_grid(std::span<const double> extents, std::span<const Index> cells, int q);

/// Index box of nodes compactly contained in the domain.
///
/// Covers nodes with index in [margin_i, cells_i - margin_i] on every axis.
/// Margins are at least one cell so the box never touches the boundary.
class SubdomainMask {
 public:
  SubdomainMask(const Grid& grid, std::vector<Index> margins);

  int dim() const noexcept { return static_cast<int>(lo_.size()); }
  Index lo(int axis) const { return lo_[axis]; }
  Index hi(int axis) const { return hi_[axis]; }
  Index margin(int axis) const { return lo_[axis]; }
  const std::vector<Index>& lo() const noexcept { return lo_; }
  const std::vector<Index>& hi() const noexcept { return hi_; }

  Index size() const;
  bool contains(std::span<const Index> idx) const;
  /// True when every node of this mask is also in `other`.
  bool subset_of(const SubdomainMask& other) const;

  /// Calls fn(linear_index) for every node of the box, in linear order.
  template <class Fn>
  void for_each(const Grid& grid, Fn&& fn) const;

  friend bool operator==(const SubdomainMask&, const SubdomainMask&) = default;

 private:
  std::vector<Index> lo_;
  std::vector<Index> hi_;
};

SubdomainMask interior_subdomain(const Grid& grid, Index margin_cells);
SubdomainMask interior_subdomain(const Grid& grid, std::vector<Index> margin_cells);

/// The full set of interior nodes (margin one cell on every face).
SubdomainMask interior_nodes(const Grid& grid);

/// Increasing family omega_0 subset omega_1 subset ... of interior boxes.
struct NestedFamily {
  std::vector<SubdomainMask> masks;

  std::size_t size() const noexcept { return masks.size(); }
  const SubdomainMask& operator[](std::size_t n) const { return masks[n]; }
  bool is_nested() const;
};

/// Margins halve from min(2^(n_max-1), largest admissible margin) down to
/// one cell; once at one cell the family stays constant.
NestedFamily nested_family(const Grid& grid, int n_max);

template <class Fn>
void SubdomainMask::for_each(const Grid& grid, Fn&& fn) const {
  const int n = dim();
  MultiIndex idx(lo_);
  if (size() == 0) return;
  while (true) {
    fn(grid.linear(idx));
    int axis = n - 1;
    while (axis >= 0) {
      if (++idx[axis] <= hi_[axis]) break;
      idx[axis] = lo_[axis];
      --axis;
    }
    if (axis < 0) return;
  }
}

}  // namespace anisolab
