#include "anisolab/semilinear.hpp"

#include <cmath>
#include <sstream>

#include "anisolab/errors.hpp"
#include "anisolab/limit_solver.hpp"

namespace anisolab {

Nonlinearity zero_nonlinearity() { return {"zero", [](double) { return 0.0; }, 0.0, true}; }

Nonlinearity linear_nonlinearity(double kappa) {
  if (!(kappa >= 0.0)) throw ConfigError("linear nonlinearity: kappa must be >= 0");
  return {"linear", [kappa](double x) { return -kappa * x; }, kappa, kappa == 0.0};
}

Nonlinearity tanh_nonlinearity() { return {"tanh", [](double x) { return -std::tanh(x); }, 1.0, false}; }

Nonlinearity rational_nonlinearity() {
  return {"rational", [](double x) { return -x / (1.0 + std::abs(x)); }, 1.0, false};
}

Nonlinearity make_nonlinearity(const std::string& name, const std::vector<double>& params) {
  if (name == "zero") return zero_nonlinearity();
  if (name == "linear") return linear_nonlinearity(params.empty() ? 1.0 : params.front());
  if (name == "tanh") return tanh_nonlinearity();
  if (name == "rational") return rational_nonlinearity();
  throw ConfigError("unknown nonlinearity '" + name + "'");
}

bool is_nonincreasing(const Nonlinearity& a, double lo, double hi, int samples) {
  double prev = a(lo);
  for (int k = 1; k < samples; ++k) {
    const double x = lo + (hi - lo) * k / (samples - 1);
    const double y = a(x);
    if (y > prev) return false;
    prev = y;
  }
  return true;
}

bool satisfies_growth(const Nonlinearity& a, double lo, double hi, int samples) {
  for (int k = 0; k < samples; ++k) {
    const double x = lo + (hi - lo) * k / (samples - 1);
    if (std::abs(a(x)) > a.growth * (1.0 + std::abs(x)) * (1.0 + 1e-14)) return false;
  }
  return true;
}

namespace {

Eigen::VectorXd apply(const Nonlinearity& a, const Eigen::VectorXd& u) {
  Eigen::VectorXd out(u.size());
  for (Index i = 0; i < u.size(); ++i) out[i] = a(u[i]);
  return out;
}

struct VectorPicard {
  Eigen::VectorXd u;
  PicardReport report;
};

VectorPicard iterate(const SparseMatrix& l, const DirichletSolver& solver, const Nonlinearity& a,
                     const Eigen::VectorXd& f, const PicardOptions& opt) {
  if (!(opt.damping > 0.0 && opt.damping <= 1.0)) throw ConfigError("picard: damping must lie in (0, 1]");
  if (!(opt.tol > 0.0)) throw ConfigError("picard: tol must be positive");
  VectorPicard r;
  r.u = Eigen::VectorXd::Zero(f.size());
  if (a.is_zero) {
    r.u = solver.solve(f);
    r.report.iterations = 1;
    r.report.last_increment = r.u.norm();
    r.report.increments.push_back(r.report.last_increment);
  } else {
    bool converged = false;
    for (int m = 0; m < opt.max_iter; ++m) {
      const Eigen::VectorXd target = solver.solve(apply(a, r.u) + f);
      const Eigen::VectorXd next = (1.0 - opt.damping) * r.u + opt.damping * target;
      const double inc = (next - r.u).norm();
      const double scale = std::max(1.0, r.u.norm());
      r.u = next;
      r.report.iterations = m + 1;
      r.report.last_increment = inc;
      r.report.increments.push_back(inc);
      if (inc <= opt.tol * scale) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "picard: no convergence in " << opt.max_iter << " iterations, last increment "
         << r.report.last_increment;
      throw SolverError(os.str(), r.report.last_increment);
    }
  }
  const double fn = f.norm();
  r.report.nonlinear_residual = (l * r.u - apply(a, r.u) - f).norm() / (fn > 0.0 ? fn : 1.0);
  return r;
}

}  // namespace

PicardResult picard_solve(const ScaledCoefficientField& a_eps, const Nonlinearity& a, const ScalarField& f,
                          const PicardOptions& options) {
  if (!(a_eps.grid() == f.grid())) throw ConfigError("picard_solve: grid mismatch");
  const SparseOperator op = assemble_operator(a_eps);
  const DirichletSolver solver(op, options.linear);
  const auto rhs = f.interior();
  const Eigen::Map<const Eigen::VectorXd> fv(rhs.data(), static_cast<Index>(rhs.size()));
  auto vr = iterate(op.matrix, solver, a, fv, options);
  PicardResult out{ScalarField(f.grid()), std::move(vr.report)};
  out.u.set_interior(std::span<const double>(vr.u.data(), static_cast<std::size_t>(vr.u.size())));
  return out;
}

PicardResult semilinear_limit(const CoefficientField& a, const Nonlinearity& nl, const ScalarField& f,
                              const PicardOptions& options) {
  if (!(a.grid() == f.grid())) throw ConfigError("semilinear_limit: grid mismatch");
  PicardResult out{ScalarField(f.grid()), {}};
  for (const auto& x1 : x1_indices(f.grid())) {
    const SliceProblem slice(a, x1);
    const DirichletSolver solver(slice.op(), options.linear);
    auto vr = iterate(slice.op().matrix, solver, nl, slice.gather(f), options);
    slice.scatter(vr.u, out.u);
    if (vr.report.iterations >= out.report.iterations) {
      out.report.iterations = vr.report.iterations;
      out.report.increments = std::move(vr.report.increments);
      out.report.last_increment = vr.report.last_increment;
    }
    out.report.nonlinear_residual = std::max(out.report.nonlinear_residual, vr.report.nonlinear_residual);
  }
  return out;
}

}  // namespace anisolab
