#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "anisolab/coefficients.hpp"
#include "anisolab/field.hpp"
#include "anisolab/linear_solver.hpp"
#include "anisolab/semilinear.hpp"

namespace anisolab {

/// Settings for every CLI subcommand, read from a sectioned key = value
/// text file (see docs/config.md for the grammar).
struct StudyConfig {
  // [grid]
  std::vector<double> extents{1.0, 1.0};
  std::vector<Index> cells{64, 64};
  int q = 1;
  // [coefficients]
  std::string coefficient_family = "identity";
  std::vector<double> coefficient_params;
  // [forcing]
  std::string forcing = "sin";
  double forcing_amplitude = 1.0;
  int forcing_modes = 4;
  // [sweep]
  std::vector<double> epsilons{1.0, 0.5, 0.25, 0.125};
  Index margin = 4;
  int frechet_terms = 20;
  // [solver]
  std::string solver = "direct";
  double solver_tol = 1e-10;
  Index solver_max_iter = 0;
  int threads = 0;
  // [nonlinearity]
  std::string nonlinearity = "zero";
  std::vector<double> nonlinearity_params;
  double damping = 0.5;
  double picard_tol = 1e-12;
  int picard_max_iter = 500;
  // [translation]
  std::vector<Index> shifts{8, 4, 2, 1};
  // [fourier]
  std::vector<Index> lattice{64, 64};
  std::vector<double> fourier_epsilons{1.0, 0.5, 0.1, 0.01, 0.001};
  std::string fourier_coefficient = "identity";
  std::vector<double> fourier_matrix;
  double fourier_lambda = 1.0;
  int fourier_trials = 20;
  // [output]
  std::string out_dir = "out";
  bool save_fields = false;
  // [study]
  std::uint64_t seed = 42;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

StudyConfig parse_config(const std::string& text);
StudyConfig load_config(const std::filesystem::path& path);
std::string to_config_text(const StudyConfig& config);

std::string config_to_json(const StudyConfig& config, int indent = 2);
StudyConfig config_from_json(const std::string& json);

/// Structural checks: grid shape, epsilons strictly decreasing in (0, 1],
/// known family names. Throws ConfigError.
void validate(const StudyConfig& config);

Grid make_grid(const StudyConfig& config);
CoefficientFamily make_coefficient_family(const StudyConfig& config);
Nonlinearity make_nonlinearity(const StudyConfig& config);
SolverOptions make_solver_options(const StudyConfig& config);
PicardOptions make_picard_options(const StudyConfig& config);

/// Forcing families on the box, with s_i(x) = sin(pi (x_i - lower_i) / L_i):
///   one          f = A
///   sin          f = A prod_i s_i(x)
///   sin_x2       f = A prod_{i >= q} s_i(x)
///   random_modes f = A sum_m c_m prod_i sin(k_mi pi (x_i - lower_i) / L_i),
///                c_m ~ N(0,1), k_mi uniform in 1..4, drawn from the seed.
ScalarField make_forcing(const StudyConfig& config, const Grid& grid);

}  // namespace anisolab
