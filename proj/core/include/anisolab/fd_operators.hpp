#pragma once

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "anisolab/coefficients.hpp"
#include "anisolab/field.hpp"

namespace anisolab {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete -div(A grad .) on the interior unknowns of a grid, homogeneous
/// Dirichlet data folded away. Unknowns follow InteriorNumbering.
struct SparseOperator {
  SparseMatrix matrix;
  bool symmetric = false;
  std::string stencil;

  Index unknowns() const noexcept { return matrix.rows(); }
};

// Centered differences evaluated at interior nodes. Neighbours on the
// boundary are read as stored, so fields must carry their boundary values.
// Boundary nodes of the returned fields are 0.
ScalarField first_derivative(const ScalarField& u, int axis);
ScalarField second_derivative(const ScalarField& u, int i, int j);

std::vector<ScalarField> grad_x1(const ScalarField& u);
std::vector<ScalarField> grad_x2(const ScalarField& u);

using HessianBlock = std::vector<std::vector<ScalarField>>;
/// (N-q) x (N-q) second derivatives in the X2 directions.
HessianBlock hess_x2(const ScalarField& u);
/// q x q second derivatives in the X1 directions.
HessianBlock hess_x1(const ScalarField& u);
/// q x (N-q) mixed derivatives d_i d_j, i in X1, j in X2.
HessianBlock hess_x1x2(const ScalarField& u);

SparseOperator assemble_operator(const CoefficientField& a);
SparseOperator assemble_operator(const ScaledCoefficientField& a);

/// Non-divergence expansion, needs coefficient derivatives. Not symmetric;
/// used for residual cross-checks only.
SparseOperator assemble_nondivergence_operator(const CoefficientField& a);
SparseOperator assemble_nondivergence_operator(const ScaledCoefficientField& a);

/// Matrix-free versions reading the boundary values of u.
ScalarField apply_divergence_form(const CoefficientField& a, const ScalarField& u);
ScalarField apply_nondivergence_form(const CoefficientField& a, const ScalarField& u);

/// op * interior(u), scattered onto the grid with a zero boundary.
ScalarField apply_operator(const SparseOperator& op, const ScalarField& u);

/// max |M - M^T| / max |M|.
double symmetry_defect(const SparseMatrix& m);

}  // namespace anisolab
