#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anisolab/fd_operators.hpp"

namespace anisolab {

enum class SolverKind { direct, cg };

SolverKind parse_solver_kind(const std::string& name);
std::string to_string(SolverKind kind);

struct SolverOptions {
  SolverKind kind = SolverKind::direct;
  /// Required relative residual |L u - f|_2 / |f|_2.
  double tol = 1e-10;
  /// CG iteration cap; 0 selects 20 * sqrt(unknowns).
  Index max_iter = 0;
};

struct SolveInfo {
  SolverKind kind = SolverKind::direct;
  double relative_residual = 0.0;
  Index iterations = 0;
};

struct SolveResult {
  ScalarField u;
  SolveInfo info;
};

/// Factorizes (or preconditions) an operator once and solves repeatedly.
///
/// The direct path uses a simplicial LDL^T with AMD ordering for symmetric
/// operators and sparse LU otherwise; both are deterministic. The iterative
/// path is conjugate gradients with a Jacobi preconditioner.
class DirichletSolver {
 public:
  DirichletSolver(const SparseOperator& op, SolverOptions options = {});
  ~DirichletSolver();
  DirichletSolver(DirichletSolver&&) noexcept;
  DirichletSolver& operator=(DirichletSolver&&) noexcept;

  Index unknowns() const noexcept;
  const SolverOptions& options() const noexcept { return options_; }

  /// Solves L x = b on interior unknowns. Throws SolverError when the
  /// residual target is missed.
  Eigen::VectorXd solve(const Eigen::VectorXd& b, SolveInfo* info = nullptr) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  SolverOptions options_;
};

SolveResult solve_dirichlet(const SparseOperator& op, const ScalarField& f, const SolverOptions& options = {});

/// Jacobi-preconditioned CG. Returns the iteration count; x holds the
/// initial guess on entry.
Index conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol,
                         Index max_iter, double* relative_residual);

struct ConditioningReport {
  Index unknowns = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double condition = 0.0;
  /// Jacobi-CG iterations to reach 1e-10 on a ones right-hand side.
  Index cg_iterations = 0;
  std::vector<double> eigenvalues;
};

/// Exact extremal eigenvalues by dense symmetric eigensolve, so limited to
/// small operators (at most 4096 unknowns).
ConditioningReport solver_diagnostics(const SparseOperator& op);

}  // namespace anisolab
