#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "anisolab/grid.hpp"

namespace anisolab {

using Complex = std::complex<double>;

/// Fourier coefficients of a field on the 2pi-periodic torus sampled on a
/// lattice with sizes[i] points per axis.
///
/// Storage index k on an axis of size n stands for the integer frequency
/// k for k < (n+1)/2 and k - n otherwise, so the even-size Nyquist index
/// maps to -n/2. Transforms are unitary (1/sqrt(M) each way), so the
/// coefficient l2 norm equals the lattice-value l2 norm exactly.
class SpectralField {
 public:
  SpectralField(std::vector<Index> sizes, int q);
  SpectralField(std::vector<Index> sizes, int q, std::vector<Complex> coefficients);

  /// Forward unitary DFT of lattice values (last axis fastest).
  static SpectralField from_physical(std::span<const double> values, std::vector<Index> sizes, int q);
  /// Inverse unitary DFT. Returns complex values; real fields have ~0
  /// imaginary parts when the coefficients are Hermitian symmetric.
  std::vector<Complex> to_physical() const;

  int dim() const noexcept { return static_cast<int>(sizes_.size()); }
  int q() const noexcept { return q_; }
  const std::vector<Index>& sizes() const noexcept { return sizes_; }
  Index size() const noexcept { return static_cast<Index>(coeffs_.size()); }

  Complex& operator[](Index k) { return coeffs_[static_cast<std::size_t>(k)]; }
  const Complex& operator[](Index k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// Integer frequency vector of storage index k.
  void frequency(Index k, std::span<Index> xi) const;
  std::vector<Index> frequency(Index k) const;
  /// Storage index of a frequency vector (taken modulo the lattice).
  Index index_of(std::span<const Index> xi) const;

  double l2_norm() const;
  /// Hermitian symmetry c(-xi) = conj(c(xi)), i.e. a real physical field.
  bool is_hermitian(double tol = 1e-12) const;

 private:
  std::vector<Index> sizes_;
  int q_;
  std::vector<Complex> coeffs_;
};

/// Constant-coefficient symbol sum_ij a^eps_ij xi_i xi_j.
double symbol(const Eigen::MatrixXd& a, int q, double epsilon, std::span<const Index> xi);

/// Solves -eps^2 Lap_X1 u - Lap_X2 u = f mode by mode; the zero mode is 0.
/// Throws ConfigError unless f has zero mean.
SpectralField torus_solve(const SpectralField& f, double epsilon);
/// Same with the symbol of a constant matrix A_eps.
SpectralField torus_solve(const Eigen::MatrixXd& a, const SpectralField& f, double epsilon);
/// Forward operator: multiplies each coefficient by the symbol.
SpectralField apply_symbol(const Eigen::MatrixXd& a, const SpectralField& u, double epsilon);

/// Spectral Hessian-block norms: sum over the block of |xi_i xi_j u(xi)|^2.
struct HessianNorms {
  double x2 = 0.0;
  double x1 = 0.0;
  double x1x2 = 0.0;
};
HessianNorms spectral_hessian_norms(const SpectralField& u);

struct BoundReport {
  double epsilon = 0.0;
  double lambda = 1.0;
  /// lambda |Hess_X2 u| / |f|
  double r_x2 = 0.0;
  /// lambda eps^2 |Hess_X1 u| / |f|
  double r_x1 = 0.0;
  /// sqrt(2) lambda eps |Hess_X1X2 u| / |f|
  double r_cross = 0.0;
  bool pass_x2 = false;
  bool pass_x1 = false;
  bool pass_cross = false;

  bool passed() const noexcept { return pass_x2 && pass_x1 && pass_cross; }
};

inline constexpr double kBoundSlack = 1e-9;

/// Computes the three ratios for the identity-coefficient problem without
/// throwing; pass flags test ratio <= 1 + kBoundSlack.
BoundReport laplacian_ratios(const SpectralField& f, double epsilon);
/// Same for constant A with ellipticity constant lambda.
BoundReport constant_coefficient_ratios(const Eigen::MatrixXd& a, double lambda, const SpectralField& f, double epsilon);

/// As the *_ratios functions but throw VerificationError naming the
/// offending ratio when a bound fails.
BoundReport check_laplacian_bounds(const SpectralField& f, double epsilon);
BoundReport check_constant_coefficient_bounds(const Eigen::MatrixXd& a, double lambda, const SpectralField& f, double epsilon);

/// Real, zero-mean random forcing: i.i.d. standard normal lattice values
/// with the mean removed, transformed.
SpectralField random_zero_mean_forcing(std::vector<Index> sizes, int q, std::uint64_t seed);
/// Real single mode cos(xi.x): coefficients at xi and -xi.
SpectralField single_mode(std::vector<Index> sizes, int q, std::span<const Index> xi);
/// Random real forcing whose spectrum lives on the xi_X1 = 0 modes.
SpectralField x1_constant_forcing(std::vector<Index> sizes, int q, std::uint64_t seed);

}  // namespace anisolab
