#include "anisolab/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "anisolab/coefficients.hpp"
#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"
#include "anisolab/limit_solver.hpp"
#include "anisolab/norms.hpp"
#include "anisolab/semilinear.hpp"

namespace anisolab {

std::array<double, 9> SweepRow::values() const {
  return {epsilon,           l2_diff,           v12_diff,  eps_grad_x1, hess_x2_diff_omega, eps2_hess_x1_omega,
          eps_hess_x1x2_omega, frechet_d, wall_ms};
}

RateEstimate estimate_rate(std::span<const double> eps, std::span<const double> values) {
  if (eps.size() != values.size()) throw ConfigError("estimate_rate: size mismatch");
  RateEstimate r;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(values[i] > 0.0) || !(eps[i] > 0.0)) {
      std::ostringstream os;
      os << "estimate_rate: dropping nonpositive value " << values[i] << " at epsilon " << eps[i];
      r.warnings.push_back(os.str());
      continue;
    }
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(values[i]));
  }
  r.used = static_cast<int>(lx.size());
  if (r.used < 3) throw ConfigError("estimate_rate: fewer than 3 usable pairs");
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw ConfigError("estimate_rate: epsilons are all equal");
  r.slope = sxy / sxx;
  return r;
}

SweepRow evaluate_row(double eps, const ScalarField& u, const ScalarField& u0, const SubdomainMask& omega,
                      const NestedFamily& family) {
  SweepRow row;
  row.epsilon = eps;
  const ScalarField d = u - u0;
  row.l2_diff = l2_norm(d);
  row.v12_diff = v12_norm(d);
  row.eps_grad_x1 = eps * grad_x1_norm(u);
  row.hess_x2_diff_omega = hess_x2_seminorm(d, omega);
  row.eps2_hess_x1_omega = eps * eps * hess_x1_seminorm(u, omega);
  row.eps_hess_x1x2_omega = eps * hess_x1x2_seminorm(u, omega);
  row.frechet_d = frechet_distance(u, u0, family);
  return row;
}

double manufactured_error(const Grid& grid, const SolverOptions& options) {
  using std::numbers::pi;
  const int n = grid.dim();
  auto exact = sample(grid, [&](std::span<const double> x) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) v *= std::sin(pi * (x[i] - grid.lower(i)) / grid.extent(i));
    return v;
  });
  double k2 = 0.0;
  for (int i = 0; i < n; ++i) k2 += (pi / grid.extent(i)) * (pi / grid.extent(i));
  const ScalarField f = k2 * exact;
  const auto a = scale_coefficients(sample_coefficients(grid, identity_family(n)), 1.0);
  auto res = solve_dirichlet(assemble_operator(a), f, options);
  return l2_norm(res.u - exact);
}

SweepResult run_sweep(const StudyConfig& config, bool keep_fields) {
  validate(config);
  const Grid grid = make_grid(config);
  const CoefficientField a = sample_coefficients(grid, make_coefficient_family(config));
  verify_ellipticity(a);
  const ScalarField f = make_forcing(config, grid);
  const Nonlinearity nl = make_nonlinearity(config);
  const PicardOptions picard = make_picard_options(config);
  const bool semilinear = !nl.is_zero;

  SweepResult out;
  out.report.kind = semilinear ? "semilinear" : "linear";
  out.report.discretization_floor = 10.0 * manufactured_error(grid, picard.linear);
  out.limit = semilinear ? semilinear_limit(a, nl, f, picard).u : solve_limit(a, f, picard.linear);

  const SubdomainMask omega = interior_subdomain(grid, config.margin);
  const NestedFamily family = nested_family(grid, config.frechet_terms);
  const std::size_t rows = config.epsilons.size();
  std::vector<std::optional<SweepRow>> done(rows);
  std::vector<std::optional<ScalarField>> fields(rows);
  std::vector<std::string> errors(rows);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows; k = next++) {
      const double eps = config.epsilons[k];
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const ScaledCoefficientField ae(a, eps);
        int iters = 0;
        ScalarField u = [&] {
          if (semilinear) {
            auto r = picard_solve(ae, nl, f, picard);
            iters = r.report.iterations;
            return std::move(r.u);
          }
          return solve_dirichlet(assemble_operator(ae), f, picard.linear).u;
        }();
        SweepRow row = evaluate_row(eps, u, *out.limit, omega, family);
        row.picard_iterations = iters;
        row.wall_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        done[k] = row;
        if (keep_fields) fields[k] = std::move(u);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  unsigned nthreads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  nthreads = std::clamp<unsigned>(nthreads, 1u, static_cast<unsigned>(std::max<std::size_t>(rows, 1)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t k = 0; k < rows; ++k) {
    if (!done[k]) {
      out.report.complete = false;
      std::ostringstream os;
      os << "epsilon " << config.epsilons[k] << ": " << errors[k];
      out.report.error = os.str();
      break;
    }
    out.report.rows.push_back(*done[k]);
    if (keep_fields) out.solutions.push_back(std::move(*fields[k]));
  }

  auto& rep = out.report;
  std::vector<double> eps;
  for (const auto& r : rep.rows) eps.push_back(r.epsilon);
  for (std::size_t c = 1; c + 1 < kSweepColumns.size(); ++c) {
    std::vector<double> col;
    for (const auto& r : rep.rows) col.push_back(r.values()[c]);
    // frechet_d is bounded by 2 and not comparable to an L2 error
    for (std::size_t k = 1; c != 7 && k < col.size(); ++k) {
      if (col[k] < rep.discretization_floor && col[k] > 0.9 * col[k - 1]) {
        std::ostringstream os;
        os << kSweepColumns[c] << " plateaus below the discretization floor " << rep.discretization_floor
           << " at epsilon " << eps[k] << "; this reflects grid error, not the epsilon limit";
        rep.warnings.push_back(os.str());
        break;
      }
    }
    if (col.size() < 3) continue;
    try {
      auto est = estimate_rate(eps, col);
      rep.rates.emplace_back(kSweepColumns[c], est.slope);
      for (auto& w : est.warnings) rep.warnings.push_back(std::string(kSweepColumns[c]) + ": " + w);
    } catch (const ConfigError& e) {
      rep.warnings.push_back(std::string(kSweepColumns[c]) + ": " + e.what());
    }
  }
  return out;
}

std::vector<std::pair<MultiIndex, double>> hessian_translation_modulus(const StudyConfig& config,
                                                                       std::span<const ScalarField> fields) {
  if (fields.empty()) return {};
  const Grid& g = fields.front().grid();
  std::vector<std::vector<ScalarField>> members;
  for (const auto& u : fields) {
    std::vector<ScalarField> comps;
    for (auto& rowv : hess_x2(u))
      for (auto& c : rowv) comps.push_back(std::move(c));
    members.push_back(std::move(comps));
  }
  std::vector<MultiIndex> shifts;
  for (Index s : config.shifts) shifts.emplace_back(static_cast<std::size_t>(g.dim()), s);
  return translation_modulus(std::span<const std::vector<ScalarField>>(members), interior_subdomain(g, config.margin),
                             shifts);
}

std::vector<FourierRow> run_fourier_check(const StudyConfig& config) {
  const int n = static_cast<int>(config.lattice.size());
  if (config.fourier_trials < 1) throw ConfigError("fourier: trials must be at least 1");
  Eigen::MatrixXd a;
  const bool identity = config.fourier_coefficient == "identity";
  if (!identity) {
    if (config.fourier_coefficient != "constant")
      throw ConfigError("fourier: coefficient must be identity or constant");
    if (static_cast<int>(config.fourier_matrix.size()) != n * n)
      throw ConfigError("fourier: matrix needs N*N entries");
    a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        config.fourier_matrix.data(), n, n);
  }
  std::vector<FourierRow> out;
  for (int t = 0; t < config.fourier_trials; ++t) {
    const SpectralField f = random_zero_mean_forcing(config.lattice, config.q, config.seed + static_cast<std::uint64_t>(t));
    for (double eps : config.fourier_epsilons) {
      out.push_back({t, identity ? laplacian_ratios(f, eps) : constant_coefficient_ratios(a, config.fourier_lambda, f, eps)});
    }
  }
  return out;
}

}  // namespace anisolab
