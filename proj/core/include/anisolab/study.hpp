#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anisolab/config.hpp"
#include "anisolab/field.hpp"
#include "anisolab/spectral.hpp"

namespace anisolab {

inline constexpr std::array<const char*, 9> kSweepColumns = {
    "epsilon",           "l2_diff",       "v12_diff", "eps_grad_x1", "hess_x2_diff_omega", "eps2_hess_x1_omega",
    "eps_hess_x1x2_omega", "frechet_d", "wall_ms"};

struct SweepRow {
  double epsilon = 0.0;
  double l2_diff = 0.0;
  double v12_diff = 0.0;
  double eps_grad_x1 = 0.0;
  double hess_x2_diff_omega = 0.0;
  double eps2_hess_x1_omega = 0.0;
  double eps_hess_x1x2_omega = 0.0;
  double frechet_d = 0.0;
  double wall_ms = 0.0;
  int picard_iterations = 0;

  /// Values in kSweepColumns order.
  std::array<double, 9> values() const;
};

struct RateEstimate {
  double slope = 0.0;
  int used = 0;
  std::vector<std::string> warnings;
};

/// Least-squares slope of log(value) against log(epsilon). Nonpositive
/// values are dropped with a warning; fewer than 3 usable pairs throws
/// ConfigError.
RateEstimate estimate_rate(std::span<const double> epsilons, std::span<const double> values);

struct SweepReport {
  std::string kind = "linear";
  std::vector<SweepRow> rows;
  bool complete = true;
  std::string error;
  /// 10x the manufactured-solution L2 error on the same grid.
  double discretization_floor = 0.0;
  std::vector<std::pair<std::string, double>> rates;
  std::vector<std::string> warnings;
};

struct SweepResult {
  SweepReport report;
  std::optional<ScalarField> limit;
  /// u_eps per row, only when requested.
  std::vector<ScalarField> solutions;
};

/// Row diagnostics of u_eps against the limit u0; omega is the sweep
/// subdomain, family the nested family for the Frechet distance.
SweepRow evaluate_row(double epsilon, const ScalarField& u, const ScalarField& u0, const SubdomainMask& omega,
                      const NestedFamily& family);

/// L2 error of the identity-coefficient solve of -Laplace u = f with
/// u = prod_i sin(pi (x_i - lower_i) / L_i).
double manufactured_error(const Grid& grid, const SolverOptions& options = {});

/// Solves the limit once, then every epsilon row (rows run on worker
/// threads; output order is the config order). A nonzero nonlinearity
/// switches both solves to the damped Picard iteration. A failing row
/// ends the report there with complete = false.
SweepResult run_sweep(const StudyConfig& config, bool keep_fields = false);

/// sigma(h) of the X2 Hessians of the given fields for the diagonal shifts
/// (s, ..., s), s in config.shifts, over the config margin subdomain.
std::vector<std::pair<MultiIndex, double>> hessian_translation_modulus(const StudyConfig& config,
                                                                       std::span<const ScalarField> fields);

struct FourierRow {
  int trial = 0;
  BoundReport bound;
};

/// Torus bound check on config.lattice: config.fourier_trials random
/// zero-mean forcings (seeds seed, seed + 1, ...) for every fourier epsilon.
/// Coefficient "identity" checks the Laplacian ratios; "constant" uses
/// fourier_matrix and fourier_lambda. Never throws on a failed bound.
std::vector<FourierRow> run_fourier_check(const StudyConfig& config);

}  // namespace anisolab
