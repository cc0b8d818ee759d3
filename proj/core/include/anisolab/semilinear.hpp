#pragma once

#include <functional>
#include <string>
#include <vector>

#include "anisolab/coefficients.hpp"
#include "anisolab/linear_solver.hpp"

namespace anisolab {

/// Continuous nonincreasing a: R -> R with |a(x)| <= c (1 + |x|).
struct Nonlinearity {
  std::string name;
  std::function<double(double)> eval;
  double growth = 0.0;
  /// a == 0 identically; the Picard loop then reduces to one linear solve.
  bool is_zero = false;

  double operator()(double x) const { return eval(x); }
};

Nonlinearity zero_nonlinearity();
/// a(u) = -kappa u, kappa >= 0, growth constant kappa.
Nonlinearity linear_nonlinearity(double kappa);
/// a(u) = -tanh(u), growth constant 1.
Nonlinearity tanh_nonlinearity();
/// a(u) = -u / (1 + |u|), growth constant 1.
Nonlinearity rational_nonlinearity();
/// Registry lookup: "zero", "linear" (params: kappa), "tanh", "rational".
Nonlinearity make_nonlinearity(const std::string& name, const std::vector<double>& params = {});

/// Checks monotonicity and the growth bound on a sampled range.
bool is_nonincreasing(const Nonlinearity& a, double lo = -50.0, double hi = 50.0, int samples = 2001);
bool satisfies_growth(const Nonlinearity& a, double lo = -50.0, double hi = 50.0, int samples = 2001);

struct PicardOptions {
  double damping = 0.5;
  /// Stop when |u^{m+1} - u^m|_2 <= tol * max(1, |u^m|_2).
  double tol = 1e-12;
  int max_iter = 500;
  SolverOptions linear;
};

struct PicardReport {
  int iterations = 0;
  double last_increment = 0.0;
  std::vector<double> increments;
  /// |L u - a(u) - f|_2 / |f|_2 (plain Euclidean norms on interior unknowns).
  double nonlinear_residual = 0.0;
};

struct PicardResult {
  ScalarField u;
  PicardReport report;
};

/// Damped Picard u^{m+1} = (1 - t) u^m + t L^{-1}(a(u^m) + f) for
/// -div(A_eps grad u) = a(u) + f with zero Dirichlet data. Throws
/// SolverError with the last increment when max_iter is exceeded.
PicardResult picard_solve(const ScaledCoefficientField& a_eps, const Nonlinearity& a, const ScalarField& f,
                          const PicardOptions& options = {});

/// Limit of the semilinear problem: the same damped Picard loop on every X2
/// slice. The report carries the worst iteration count and residual.
PicardResult semilinear_limit(const CoefficientField& a, const Nonlinearity& nl, const ScalarField& f,
                              const PicardOptions& options = {});

}  // namespace anisolab
