#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "anisolab/coefficients.hpp"
#include "anisolab/linear_solver.hpp"

namespace anisolab {

/// The (N-q)-dimensional Dirichlet problem -div_X2(A22 grad_X2 v) = g on the
/// X2 slice through a fixed X1 node. Uses the same flux stencil as the
/// full-grid operator restricted to the X2 axes.
class SliceProblem {
 public:
  SliceProblem(const CoefficientField& a, std::span<const Index> x1_index);

  const SparseOperator& op() const noexcept { return op_; }
  const MultiIndex& x1_index() const noexcept { return x1_; }
  /// Global node indices of the slice unknowns, in unknown order.
  const std::vector<Index>& nodes() const noexcept { return nodes_; }

  Eigen::VectorXd gather(const ScalarField& u) const;
  void scatter(const Eigen::VectorXd& v, ScalarField& u) const;

 private:
  MultiIndex x1_;
  std::vector<Index> nodes_;
  SparseOperator op_;
};

/// All X1 node indices, boundary included, in row-major order.
std::vector<MultiIndex> x1_indices(const Grid& grid);

/// Solves one slice of the limit problem into `u0`.
void solve_limit_slice(const CoefficientField& a, const ScalarField& f, std::span<const Index> x1_index,
                       ScalarField& u0, const SolverOptions& options = {});

/// Slice-wise limit solution u0. Every X1 node (including X1 boundary
/// nodes) gets its own X2 solve; u0 vanishes only on the X2 faces.
ScalarField solve_limit(const CoefficientField& a, const ScalarField& f, const SolverOptions& options = {});

}  // namespace anisolab
