#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "anisolab/grid.hpp"

namespace anisolab {

/// Closed-form matrix coefficient A(x) with exact first derivatives.
struct CoefficientFamily {
  std::string name;
  int dim = 0;
  /// Declared ellipticity constant: A(x) z.z >= lambda |z|^2.
  double lambda = 0.0;
  std::function<Eigen::MatrixXd(std::span<const double>)> matrix;
  /// derivative(x, k) returns the entrywise partial d/dx_k of A at x.
  std::function<Eigen::MatrixXd(std::span<const double>, int)> derivative;
};

CoefficientFamily identity_family(int dim);
/// Constant matrix; lambda is declared by the caller and verified on sampling.
CoefficientFamily constant_family(const Eigen::MatrixXd& a, double lambda);
/// Smooth variable coefficients, lambda = 0.75:
///   a_ii(x) = 1 + x_{(i+1) mod N}^2 / 2,
///   a_ij(x) = 0.25/(N-1) sin(pi x_i) sin(pi x_j)   (i != j).
CoefficientFamily smooth_family(int dim);

/// Looks a family up by name: "identity", "constant" (params are the N*N
/// row-major entries followed by lambda) or "smooth".
CoefficientFamily coefficient_family(const std::string& name, int dim, const std::vector<double>& params = {});

/// A(x) sampled at every grid node, optionally with d_k a_ij.
class CoefficientField {
 public:
  /// Entries are node-major, then row-major N x N. Derivatives, if given,
  /// are node-major, then k, then row-major N x N.
  CoefficientField(Grid grid, std::vector<double> entries, double lambda, std::vector<double> derivatives = {});

  const Grid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return n_; }
  double lambda() const noexcept { return lambda_; }
  bool has_derivatives() const noexcept { return !derivs_.empty(); }

  double a(Index node, int i, int j) const {
    return entries_[static_cast<std::size_t>((node * n_ + i) * n_ + j)];
  }
  /// d/dx_k a_ij at a node.
  double da(Index node, int k, int i, int j) const {
    return derivs_[static_cast<std::size_t>(((node * n_ + k) * n_ + i) * n_ + j)];
  }
  Eigen::MatrixXd matrix_at(Index node) const;
  bool is_symmetric(double rel_tol = 1e-14) const;

  const std::vector<double>& entries() const noexcept { return entries_; }
  const std::vector<double>& derivatives() const noexcept { return derivs_; }

 private:
  Grid grid_;
  int n_;
  double lambda_;
  std::vector<double> entries_;
  std::vector<double> derivs_;
};

CoefficientField sample_coefficients(const Grid& grid, const CoefficientFamily& family);

/// A_eps: eps^2 a_ij on the X1 block, a_ij on the X2 block and eps a_ij on
/// the mixed blocks. Derivatives are scaled the same way.
class ScaledCoefficientField {
 public:
  ScaledCoefficientField(const CoefficientField& base, double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  const CoefficientField& field() const noexcept { return scaled_; }
  const Grid& grid() const noexcept { return scaled_.grid(); }
  double a(Index node, int i, int j) const { return scaled_.a(node, i, j); }
  double da(Index node, int k, int i, int j) const { return scaled_.da(node, k, i, j); }

 private:
  double epsilon_;
  CoefficientField scaled_;
};

/// Multiplier applied to a_ij by the eps-scaling.
double scaling_factor(int i, int j, int q, double epsilon);

ScaledCoefficientField scale_coefficients(const CoefficientField& a, double epsilon);

struct EllipticityReport {
  double observed = 0.0;
  Index worst_node = 0;
};

/// Minimum over nodes of the smallest eigenvalue of (A + A^T)/2. Throws
/// VerificationError when it falls below the declared lambda.
EllipticityReport verify_ellipticity(const CoefficientField& a);

}  // namespace anisolab
