#include "anisolab/linear_solver.hpp"

#include <cmath>
#include <sstream>
#include <variant>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "anisolab/errors.hpp"

namespace anisolab {

SolverKind parse_solver_kind(const std::string& name) {
  if (name == "direct") return SolverKind::direct;
  if (name == "cg") return SolverKind::cg;
  throw ConfigError("unknown solver '" + name + "' (expected direct or cg)");
}

std::string to_string(SolverKind kind) { return kind == SolverKind::direct ? "direct" : "cg"; }

Index conjugate_gradient(const SparseMatrix& a, const Eigen::VectorXd& b, Eigen::VectorXd& x, double tol,
                         Index max_iter, double* relative_residual) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    if (relative_residual) *relative_residual = 0.0;
    return 0;
  }
  const Eigen::VectorXd inv_diag = a.diagonal().cwiseInverse();
  Eigen::VectorXd r = b - a * x;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  Eigen::VectorXd ap(x.size());
  double rz = r.dot(z);
  double rel = r.norm() / bnorm;
  Index it = 0;
  while (rel > tol && it < max_iter) {
    ap.noalias() = a * p;
    const double alpha = rz / p.dot(ap);
    x.noalias() += alpha * p;
    r.noalias() -= alpha * ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    rel = r.norm() / bnorm;
    ++it;
  }
  if (relative_residual) *relative_residual = rel;
  return it;
}

struct DirichletSolver::Impl {
  SparseMatrix matrix;
  std::variant<std::monostate, Eigen::SimplicialLDLT<SparseMatrix>, Eigen::SparseLU<SparseMatrix>> factor;
};

DirichletSolver::DirichletSolver(const SparseOperator& op, SolverOptions options)
    : impl_(std::make_unique<Impl>()), options_(options) {
  if (!(options_.tol > 0.0)) throw ConfigError("solver: tolerance must be positive");
  impl_->matrix = op.matrix;
  if (options_.kind == SolverKind::cg) {
    if (!op.symmetric) throw ConfigError("solver: CG requires a symmetric operator");
    return;
  }
  if (op.symmetric) {
    auto& ldlt = impl_->factor.emplace<Eigen::SimplicialLDLT<SparseMatrix>>();
    ldlt.compute(impl_->matrix);
    if (ldlt.info() != Eigen::Success) throw SolverError("solver: LDL^T factorization failed", NAN);
  } else {
    auto& lu = impl_->factor.emplace<Eigen::SparseLU<SparseMatrix>>();
    lu.compute(impl_->matrix);
    if (lu.info() != Eigen::Success) throw SolverError("solver: LU factorization failed", NAN);
  }
}

DirichletSolver::~DirichletSolver() = default;
DirichletSolver::DirichletSolver(DirichletSolver&&) noexcept = default;
DirichletSolver& DirichletSolver::operator=(DirichletSolver&&) noexcept = default;

Index DirichletSolver::unknowns() const noexcept { return impl_->matrix.rows(); }

Eigen::VectorXd DirichletSolver::solve(const Eigen::VectorXd& b, SolveInfo* info) const {
  SolveInfo local;
  local.kind = options_.kind;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(b.size());
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    if (info) *info = local;
    return x;
  }
  if (options_.kind == SolverKind::cg) {
    const Index cap = options_.max_iter > 0
                          ? options_.max_iter
                          : static_cast<Index>(std::ceil(20.0 * std::sqrt(static_cast<double>(b.size()))));
    local.iterations = conjugate_gradient(impl_->matrix, b, x, options_.tol, cap, &local.relative_residual);
  } else {
    std::visit(
        [&](auto& f) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(f)>, std::monostate>) x = f.solve(b);
        },
        impl_->factor);
    local.relative_residual = (impl_->matrix * x - b).norm() / bnorm;
  }
  if (info) *info = local;
  if (!(local.relative_residual <= options_.tol)) {
    std::ostringstream os;
    os << "solver (" << to_string(options_.kind) << ") reached relative residual " << local.relative_residual
       << " > tol " << options_.tol;
    if (options_.kind == SolverKind::cg) os << " after " << local.iterations << " iterations";
    throw SolverError(os.str(), local.relative_residual);
  }
  return x;
}

SolveResult solve_dirichlet(const SparseOperator& op, const ScalarField& f, const SolverOptions& options) {
  const auto rhs = f.interior();
  if (static_cast<Index>(rhs.size()) != op.unknowns()) throw ConfigError("solve_dirichlet: size mismatch");
  const DirichletSolver solver(op, options);
  SolveResult out{ScalarField(f.grid()), {}};
  const Eigen::VectorXd x =
      solver.solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Index>(rhs.size())), &out.info);
  out.u.set_interior(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  return out;
}

ConditioningReport solver_diagnostics(const SparseOperator& op) {
  const Index n = op.unknowns();
  if (n > 4096) throw ConfigError("solver_diagnostics: dense eigensolve limited to 4096 unknowns");
  ConditioningReport r;
  r.unknowns = n;
  const Eigen::MatrixXd dense = Eigen::MatrixXd(op.matrix);
  const Eigen::MatrixXd sym = 0.5 * (dense + dense.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  r.lambda_min = ev.minCoeff();
  r.lambda_max = ev.maxCoeff();
  r.condition = r.lambda_min > 0.0 ? r.lambda_max / r.lambda_min : std::numeric_limits<double>::infinity();
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  r.cg_iterations = conjugate_gradient(op.matrix, Eigen::VectorXd::Ones(n), x, 1e-10, 10 * n + 10, nullptr);
  return r;
}

}  // namespace anisolab
