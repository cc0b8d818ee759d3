#include "anisolab/limit_solver.hpp"

#include <sstream>

#include "anisolab/errors.hpp"
#include "stencil.hpp"

namespace anisolab {

std::vector<MultiIndex> x1_indices(const Grid& grid) {
  const int q = grid.q();
  std::vector<MultiIndex> out;
  MultiIndex idx(static_cast<std::size_t>(q), 0);
  while (true) {
    out.push_back(idx);
    int axis = q - 1;
    while (axis >= 0) {
      if (++idx[axis] <= grid.cells(axis)) break;
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) return out;
  }
}

SliceProblem::SliceProblem(const CoefficientField& a, std::span<const Index> x1_index)
    : x1_(x1_index.begin(), x1_index.end()) {
  const Grid& g = a.grid();
  const int q = g.q();
  const int m = g.x2_dim();
  if (static_cast<int>(x1_.size()) != q) throw ConfigError("slice: X1 index has wrong length");

  Index base = 0;
  for (int i = 0; i < q; ++i) base += x1_[i] * g.stride(i);

  std::vector<double> h(static_cast<std::size_t>(m));
  std::vector<Index> local_stride(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) h[k] = g.spacing(q + k);

  // local interior numbering: row-major over X2 interior nodes
  Index unknowns = 1;
  for (int k = m - 1; k >= 0; --k) {
    local_stride[k] = unknowns;
    unknowns *= g.cells(q + k) - 1;
  }
  auto global = [&](const MultiIndex& p) {
    Index l = base;
    for (int k = 0; k < m; ++k) l += p[k] * g.stride(q + k);
    return l;
  };
  auto local_unknown = [&](const MultiIndex& p) -> Index {
    Index l = 0;
    for (int k = 0; k < m; ++k) {
      if (p[k] < 1 || p[k] > g.cells(q + k) - 1) return -1;
      l += (p[k] - 1) * local_stride[k];
    }
    return l;
  };
  auto coeff = [&](const MultiIndex& p, int i, int j) { return a.a(global(p), q + i, q + j); };

  std::vector<Eigen::Triplet<double>> triplets;
  nodes_.resize(static_cast<std::size_t>(unknowns));
  MultiIndex p(static_cast<std::size_t>(m));
  MultiIndex t(static_cast<std::size_t>(m));
  for (Index row = 0; row < unknowns; ++row) {
    Index rem = row;
    for (int k = 0; k < m; ++k) {
      p[k] = rem / local_stride[k] + 1;
      rem %= local_stride[k];
    }
    nodes_[static_cast<std::size_t>(row)] = global(p);
    detail::flux_stencil(h, p, coeff, [&](int ax, int sa, int bx, int sb, double w) {
      t = p;
      if (ax >= 0) t[ax] += sa;
      if (bx >= 0) t[bx] += sb;
      const Index col = local_unknown(t);
      if (col >= 0) triplets.emplace_back(row, col, w);
    });
  }
  op_.matrix.resize(unknowns, unknowns);
  op_.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op_.matrix.prune(0.0);
  op_.matrix.makeCompressed();
  op_.symmetric = a.is_symmetric() && symmetry_defect(op_.matrix) <= 1e-12;
  op_.stencil = "flux form, X2 slice";
}

Eigen::VectorXd SliceProblem::gather(const ScalarField& u) const {
  Eigen::VectorXd v(static_cast<Index>(nodes_.size()));
  for (std::size_t k = 0; k < nodes_.size(); ++k) v[static_cast<Index>(k)] = u[nodes_[k]];
  return v;
}

void SliceProblem::scatter(const Eigen::VectorXd& v, ScalarField& u) const {
  for (std::size_t k = 0; k < nodes_.size(); ++k) u[nodes_[k]] = v[static_cast<Index>(k)];
}

namespace {

std::string slice_name(std::span<const Index> x1) {
  std::ostringstream os;
  os << "X1 index (";
  for (std::size_t i = 0; i < x1.size(); ++i) os << (i ? "," : "") << x1[i];
  os << ')';
  return os.str();
}

}  // namespace

void solve_limit_slice(const CoefficientField& a, const ScalarField& f, std::span<const Index> x1_index,
                       ScalarField& u0, const SolverOptions& options) {
  const SliceProblem slice(a, x1_index);
  try {
    const DirichletSolver solver(slice.op(), options);
    slice.scatter(solver.solve(slice.gather(f)), u0);
  } catch (const SolverError& e) {
    throw SolverError("limit solve failed on slice " + slice_name(x1_index) + ": " + e.what(), e.residual());
  }
}

ScalarField solve_limit(const CoefficientField& a, const ScalarField& f, const SolverOptions& options) {
  if (!(a.grid() == f.grid())) throw ConfigError("solve_limit: grid mismatch");
  ScalarField u0(f.grid());
  for (const auto& x1 : x1_indices(f.grid())) solve_limit_slice(a, f, x1, u0, options);
  return u0;
}

}  // namespace anisolab
