#include "anisolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anisolab/errors.hpp"

namespace anisolab {

Grid::Grid(std::vector<double> lower, std::vector<double> upper, std::vector<Index> cells, int q)
    : lower_(std::move(lower)), upper_(std::move(upper)), cells_(std::move(cells)), q_(q) {
  const auto n = cells_.size();
  if (lower_.size() != n || upper_.size() != n)
    throw ConfigError("grid: lower/upper/cells must have the same length");
  if (n < 2) throw ConfigError("grid: dimension must be at least 2");
  if (q_ < 1 || q_ > static_cast<int>(n) - 1) {
    std::ostringstream os;
    os << "grid: split index q=" << q_ << " must satisfy 1 <= q <= " << n - 1;
    throw ConfigError(os.str());
  }
  spacing_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (cells_[i] < 2) {
      std::ostringstream os;
      os << "grid: axis " << i << " has " << cells_[i] << " cells, need at least 2";
      throw ConfigError(os.str());
    }
    const double ext = upper_[i] - lower_[i];
    if (!(ext > 0.0) || !std::isfinite(ext)) {
      std::ostringstream os;
      os << "grid: axis " << i << " has degenerate extent [" << lower_[i] << ", " << upper_[i] << "]";
      throw ConfigError(os.str());
    }
    spacing_[i] = ext / static_cast<double>(cells_[i]);
    cell_volume_ *= spacing_[i];
  }
  strides_.assign(n, 1);
  for (int i = static_cast<int>(n) - 2; i >= 0; --i) strides_[i] = strides_[i + 1] * (cells_[i + 1] + 1);
}

Index Grid::interior_count() const noexcept {
  Index c = 1;
  for (auto n : cells_) c *= n - 1;
  return c;
}

Index Grid::linear(std::span<const Index> idx) const {
  Index l = 0;
  for (std::size_t i = 0; i < cells_.size(); ++i) l += idx[i] * strides_[i];
  return l;
}

MultiIndex Grid::multi(Index linear) const {
  MultiIndex out(cells_.size());
  multi(linear, out);
  return out;
}

void Grid::multi(Index linear, std::span<Index> out) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    out[i] = linear / strides_[i];
    linear -= out[i] * strides_[i];
  }
}

std::vector<double> Grid::point(std::span<const Index> idx) const {
  std::vector<double> x(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) x[i] = coordinate(static_cast<int>(i), idx[i]);
  return x;
}

Index Grid::index_of(int axis, double x) const {
  const auto i = static_cast<Index>(std::lround((x - lower_[axis]) / spacing_[axis]));
  return std::clamp<Index>(i, 0, cells_[axis]);
}

bool Grid::is_boundary(std::span<const Index> idx) const {
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (idx[i] == 0 || idx[i] == cells_[i]) return true;
  return false;
}

Grid make_grid(std::span<const double> extents, std::span<const Index> cells, int q) {
  if (extents.size() != cells.size()) throw ConfigError("make_grid: extents and cells differ in length");
  return Grid(std::vector<double>(extents.size(), 0.0), {extents.begin(), extents.end()},
              {cells.begin(), cells.end()}, q);
}

SubdomainMask::SubdomainMask(const Grid& grid, std::vector<Index> margins) {
  const int n = grid.dim();
  if (static_cast<int>(margins.size()) != n) throw ConfigError("subdomain: one margin per axis required");
  lo_.resize(n);
  hi_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (margins[i] < 1) throw ConfigError("subdomain: margin must be at least one cell");
    lo_[i] = margins[i];
    hi_[i] = grid.cells(i) - margins[i];
    if (lo_[i] > hi_[i]) {
      std::ostringstream os;
      os << "subdomain: margin " << margins[i] << " leaves an empty box on axis " << i << " ("
         << grid.cells(i) << " cells)";
      throw ConfigError(os.str());
    }
  }
}

Index SubdomainMask::size() const {
  Index s = 1;
  for (std::size_t i = 0; i < lo_.size(); ++i) s *= hi_[i] - lo_[i] + 1;
  return s;
}

bool SubdomainMask::contains(std::span<const Index> idx) const {
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (idx[i] < lo_[i] || idx[i] > hi_[i]) return false;
  return true;
}

bool SubdomainMask::subset_of(const SubdomainMask& other) const {
  if (other.lo_.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < lo_.size(); ++i)
    if (lo_[i] < other.lo_[i] || hi_[i] > other.hi_[i]) return false;
  return true;
}

SubdomainMask interior_subdomain(const Grid& grid, Index margin_cells) {
  return SubdomainMask(grid, std::vector<Index>(static_cast<std::size_t>(grid.dim()), margin_cells));
}

SubdomainMask interior_subdomain(const Grid& grid, std::vector<Index> margin_cells) {
  return SubdomainMask(grid, std::move(margin_cells));
}

SubdomainMask interior_nodes(const Grid& grid) { return interior_subdomain(grid, 1); }

bool NestedFamily::is_nested() const {
  for (std::size_t n = 1; n < masks.size(); ++n)
    if (!masks[n - 1].subset_of(masks[n])) return false;
  return true;
}

NestedFamily nested_family(const Grid& grid, int n_max) {
  if (n_max < 1) throw ConfigError("nested_family: n_max must be at least 1");
  Index admissible = grid.cells(0) / 2;
  for (int i = 1; i < grid.dim(); ++i) admissible = std::min(admissible, grid.cells(i) / 2);

  // 2^(n_max-1) overflows quickly; only the clamp matters past ~62.
  Index margin = admissible;
  if (n_max - 1 < 62) margin = std::min<Index>(admissible, Index{1} << (n_max - 1));

  NestedFamily family;
  family.masks.reserve(static_cast<std::size_t>(n_max));
  for (int n = 0; n < n_max; ++n) {
    family.masks.push_back(interior_subdomain(grid, margin));
    margin = std::max<Index>(1, margin / 2);
  }
  return family;
}

}  // namespace anisolab
