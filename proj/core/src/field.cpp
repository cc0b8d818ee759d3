#include "anisolab/field.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "anisolab/errors.hpp"

namespace anisolab {

ScalarField::ScalarField(Grid grid, double fill)
    : grid_(std::move(grid)), values_(static_cast<std::size_t>(grid_.node_count()), fill) {}

ScalarField::ScalarField(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<Index>(values_.size()) != grid_.node_count())
    throw ConfigError("field: value count does not match grid node count");
}

std::vector<double> ScalarField::interior() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(grid_.interior_count()));
  interior_nodes(grid_).for_each(grid_, [&](Index l) { out.push_back((*this)[l]); });
  return out;
}

void ScalarField::set_interior(std::span<const double> interior) {
  if (static_cast<Index>(interior.size()) != grid_.interior_count())
    throw ConfigError("field: interior vector has wrong length");
  std::size_t k = 0;
  interior_nodes(grid_).for_each(grid_, [&](Index l) { (*this)[l] = interior[k++]; });
}

void ScalarField::zero_boundary() {
  MultiIndex idx(static_cast<std::size_t>(grid_.dim()));
  for (Index l = 0; l < size(); ++l) {
    grid_.multi(l, idx);
    if (grid_.is_boundary(idx)) (*this)[l] = 0.0;
  }
}

double ScalarField::max_abs_boundary() const {
  MultiIndex idx(static_cast<std::size_t>(grid_.dim()));
  double m = 0.0;
  for (Index l = 0; l < size(); ++l) {
    grid_.multi(l, idx);
    if (grid_.is_boundary(idx)) m = std::max(m, std::abs((*this)[l]));
  }
  return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw ConfigError("field: grid mismatch in +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  if (!(grid_ == o.grid_)) throw ConfigError("field: grid mismatch in -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField sample(const Grid& grid, const std::function<double(std::span<const double>)>& fn) {
  ScalarField u(grid);
  MultiIndex idx(static_cast<std::size_t>(grid.dim()));
  for (Index l = 0; l < u.size(); ++l) {
    grid.multi(l, idx);
    const auto x = grid.point(idx);
    u[l] = fn(x);
  }
  return u;
}

InteriorNumbering::InteriorNumbering(const Grid& grid) : map_(static_cast<std::size_t>(grid.node_count()), -1) {
  nodes_.reserve(static_cast<std::size_t>(grid.interior_count()));
  interior_nodes(grid).for_each(grid, [&](Index l) {
    map_[static_cast<std::size_t>(l)] = unknowns_++;
    nodes_.push_back(l);
  });
}

ScalarField shift_field(const ScalarField& u, std::span<const Index> h_cells, const SubdomainMask& mask) {
  const Grid& g = u.grid();
  const int n = g.dim();
  if (static_cast<int>(h_cells.size()) != n) throw ConfigError("shift_field: shift needs one entry per axis");
  for (int i = 0; i < n; ++i) {
    if (mask.lo(i) + h_cells[i] < 0 || mask.hi(i) + h_cells[i] > g.cells(i)) {
      std::ostringstream os;
      os << "shift_field: shift of " << h_cells[i] << " cells on axis " << i << " leaves the grid for mask ["
         << mask.lo(i) << ", " << mask.hi(i) << "]";
      throw ConfigError(os.str());
    }
  }
  ScalarField out(g, std::numeric_limits<double>::quiet_NaN());
  MultiIndex idx(static_cast<std::size_t>(n));
  for (Index l = 0; l < u.size(); ++l) {
    g.multi(l, idx);
    bool inside = true;
    for (int i = 0; i < n && inside; ++i) {
      idx[i] += h_cells[i];
      inside = idx[i] >= 0 && idx[i] <= g.cells(i);
    }
    if (inside) out[l] = u.at(idx);
  }
  return out;
}

}  // namespace anisolab
