#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "anisolab/coefficients.hpp"
#include "anisolab/config.hpp"
#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"
#include "anisolab/field_io.hpp"
#include "anisolab/limit_solver.hpp"
#include "anisolab/linear_solver.hpp"
#include "anisolab/norms.hpp"
#include "anisolab/report.hpp"
#include "anisolab/semilinear.hpp"
#include "anisolab/study.hpp"

namespace fs = std::filesystem;
using namespace anisolab;

namespace {

enum Exit { kOk = 0, kVerification = 1, kConfig = 2, kSolver = 3, kIo = 4 };

struct Common {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config_path, "study config file")->check(CLI::ExistingFile);
  app->add_option("-o,--out", c.out, "output directory (overrides [output] dir)");
  app->add_option("--seed", c.seed, "random seed (overrides [study] seed)");
  app->add_option("--format", c.format, "stdout format")->check(CLI::IsMember({"csv", "json"}));
}

StudyConfig load(const Common& c) {
  StudyConfig cfg = c.config_path.empty() ? StudyConfig{} : load_config(c.config_path);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.seed) cfg.seed = *c.seed;
  validate(cfg);
  return cfg;
}

fs::path out_dir(const StudyConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw IoError("cannot write " + p.string());
  os << text;
}

int cmd_solve(const Common& c, std::optional<double> epsilon, bool diagnostics) {
  const StudyConfig cfg = load(c);
  const Grid grid = make_grid(cfg);
  const CoefficientField a = sample_coefficients(grid, make_coefficient_family(cfg));
  verify_ellipticity(a);
  const double eps = epsilon.value_or(cfg.epsilons.front());
  const ScaledCoefficientField ae(a, eps);
  const SparseOperator op = assemble_operator(ae);
  const ScalarField f = make_forcing(cfg, grid);
  const Nonlinearity nl = make_nonlinearity(cfg);
  ScalarField u = nl.is_zero ? solve_dirichlet(op, f, make_solver_options(cfg)).u
                             : picard_solve(ae, nl, f, make_picard_options(cfg)).u;
  const fs::path path = out_dir(cfg) / "u_eps.agf";
  write_field(path, u);
  std::cout << "epsilon " << g(eps) << "\nl2 " << g(l2_norm(u)) << "\nv12 " << g(v12_norm(u)) << "\nwrote "
            << path.string() << "\n";
  if (diagnostics) {
    const auto d = solver_diagnostics(op);
    std::cout << "unknowns " << d.unknowns << "\nlambda_min " << g(d.lambda_min) << "\nlambda_max "
              << g(d.lambda_max) << "\ncondition " << g(d.condition) << "\ncg_iterations " << d.cg_iterations
              << "\n";
  }
  return kOk;
}

int cmd_limit(const Common& c) {
  const StudyConfig cfg = load(c);
  const Grid grid = make_grid(cfg);
  const CoefficientField a = sample_coefficients(grid, make_coefficient_family(cfg));
  verify_ellipticity(a);
  const ScalarField f = make_forcing(cfg, grid);
  const Nonlinearity nl = make_nonlinearity(cfg);
  ScalarField u0 = nl.is_zero ? solve_limit(a, f, make_solver_options(cfg))
                              : semilinear_limit(a, nl, f, make_picard_options(cfg)).u;
  const fs::path path = out_dir(cfg) / "u0.agf";
  write_field(path, u0);
  std::cout << "l2 " << g(l2_norm(u0)) << "\nv12 " << g(v12_norm(u0)) << "\nwrote " << path.string() << "\n";
  return kOk;
}

int run_and_report(const StudyConfig& cfg, const Common& c, const std::string& stem) {
  SweepResult res = run_sweep(cfg, cfg.save_fields);
  const fs::path dir = out_dir(cfg);
  emit_report(res.report, cfg, dir, stem);
  if (cfg.save_fields) {
    write_field(dir / "u0.agf", *res.limit);
    for (std::size_t k = 0; k < res.solutions.size(); ++k)
      write_field(dir / ("u_eps_" + std::to_string(k) + ".agf"), res.solutions[k]);
  }
  std::cout << (c.format == "json" ? sweep_json(res.report, cfg) : sweep_csv(res.report));
  for (const auto& w : res.report.warnings) std::cerr << "warning: " << w << "\n";
  std::cerr << "note: values below the discretization floor " << g(res.report.discretization_floor)
            << " reflect grid error, not epsilon\n";
  if (!res.report.complete) {
    std::cerr << "error: sweep stopped early: " << res.report.error << "\n";
    return kSolver;
  }
  return kOk;
}

int cmd_sweep(const Common& c) { return run_and_report(load(c), c, "sweep"); }

int cmd_semilinear(const Common& c, const std::string& name, const std::vector<double>& params) {
  StudyConfig cfg = load(c);
  if (!name.empty()) {
    cfg.nonlinearity = name;
    cfg.nonlinearity_params = params;
    validate(cfg);
  }
  return run_and_report(cfg, c, "semilinear");
}

int cmd_fourier(const Common& c) {
  const StudyConfig cfg = load(c);
  const auto rows = run_fourier_check(cfg);
  const std::string csv = fourier_csv(rows);
  write_text(out_dir(cfg) / "fourier.csv", csv);
  std::cout << csv;
  const auto failed = std::count_if(rows.begin(), rows.end(), [](const FourierRow& r) { return !r.bound.passed(); });
  if (failed > 0) {
    std::cerr << "error: " << failed << " of " << rows.size() << " bound checks failed\n";
    return kVerification;
  }
  return kOk;
}

int cmd_metric(const std::string& a_path, const std::string& b_path, Index margin, int n_max) {
  const ScalarField a = read_field(a_path);
  const ScalarField b = read_field(b_path);
  if (!(a.grid() == b.grid())) throw ConfigError("metric: fields live on different grids");
  const ScalarField d = a - b;
  const SubdomainMask omega = interior_subdomain(a.grid(), margin);
  std::cout << "l2 " << g(l2_norm(d)) << "\nv12 " << g(v12_norm(d)) << "\nv22_omega " << g(v22_norm(d, omega))
            << "\nfrechet_d " << g(frechet_distance(a, b, nested_family(a.grid(), n_max))) << "\n";
  return kOk;
}

int cmd_translation(const Common& c) {
  const StudyConfig cfg = load(c);
  SweepResult res = run_sweep(cfg, true);
  if (!res.report.complete) {
    std::cerr << "error: " << res.report.error << "\n";
    return kSolver;
  }
  const auto sigma = hessian_translation_modulus(cfg, res.solutions);
  const std::string csv = translation_csv(sigma);
  write_text(out_dir(cfg) / "translation.csv", csv);
  std::cout << csv;
  const SubdomainMask omega = interior_subdomain(make_grid(cfg), cfg.margin);
  double lo = 0.0, hi = 0.0;
  for (std::size_t k = 0; k < res.solutions.size(); ++k) {
    const double n = hess_x2_seminorm(res.solutions[k], omega);
    lo = k == 0 ? n : std::min(lo, n);
    hi = k == 0 ? n : std::max(hi, n);
  }
  std::cerr << "hess_x2 norm range over epsilon: " << g(lo) << " .. " << g(hi) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisolab: anisotropic singular perturbation studies"};
  app.require_subcommand(1);

  Common c;
  std::optional<double> epsilon;
  bool diagnostics = false;
  auto* solve = app.add_subcommand("solve", "solve one epsilon and save u_eps.agf");
  add_common(solve, c);
  solve->add_option("-e,--epsilon", epsilon, "epsilon (default: first sweep value)");
  solve->add_flag("--diagnostics", diagnostics, "print spectrum and CG iteration count");

  auto* limit = app.add_subcommand("limit", "solve the limit problem and save u0.agf");
  add_common(limit, c);
  auto* sweep = app.add_subcommand("sweep", "epsilon sweep, writes sweep.csv and sweep.json");
  add_common(sweep, c);

  std::string nl_name;
  std::vector<double> nl_params;
  auto* semi = app.add_subcommand("semilinear", "semilinear epsilon sweep");
  add_common(semi, c);
  semi->add_option("-n,--nonlinearity", nl_name, "zero | linear | tanh | rational");
  semi->add_option("--params", nl_params, "nonlinearity parameters");

  auto* fourier = app.add_subcommand("fourier-check", "torus Hessian bound check");
  add_common(fourier, c);

  std::string a_path, b_path;
  Index margin = 4;
  int n_max = 20;
  auto* metric = app.add_subcommand("metric", "distances between two saved fields");
  metric->add_option("a", a_path, "first field")->required()->check(CLI::ExistingFile);
  metric->add_option("b", b_path, "second field")->required()->check(CLI::ExistingFile);
  metric->add_option("--margin", margin, "omega margin in cells");
  metric->add_option("--nmax", n_max, "Frechet series length");

  auto* translation = app.add_subcommand("translation", "translation modulus of the X2 Hessians");
  add_common(translation, c);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve) return cmd_solve(c, epsilon, diagnostics);
    if (*limit) return cmd_limit(c);
    if (*sweep) return cmd_sweep(c);
    if (*semi) return cmd_semilinear(c, nl_name, nl_params);
    if (*fourier) return cmd_fourier(c);
    if (*metric) return cmd_metric(a_path, b_path, margin, n_max);
    if (*translation) return cmd_translation(c);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolver;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kIo;
  }
  return kOk;
}
