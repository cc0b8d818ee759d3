#include "anisolab/coefficients.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "anisolab/errors.hpp"

namespace anisolab {

CoefficientFamily identity_family(int dim) {
  return constant_family(Eigen::MatrixXd::Identity(dim, dim), 1.0);
}

CoefficientFamily constant_family(const Eigen::MatrixXd& a, double lambda) {
  if (a.rows() != a.cols() || a.rows() < 2) throw ConfigError("constant coefficients: need a square matrix, N >= 2");
  if (!(lambda > 0.0)) throw ConfigError("constant coefficients: lambda must be positive");
  const auto n = static_cast<int>(a.rows());
  CoefficientFamily f;
  f.name = a.isIdentity(0.0) ? "identity" : "constant";
  f.dim = n;
  f.lambda = lambda;
  f.matrix = [a](std::span<const double>) { return a; };
  f.derivative = [n](std::span<const double>, int) { return Eigen::MatrixXd::Zero(n, n).eval(); };
  return f;
}

CoefficientFamily smooth_family(int dim) {
  using std::numbers::pi;
  if (dim < 2) throw ConfigError("smooth coefficients: N >= 2 required");
  const double c = 0.25 / (dim - 1);
  CoefficientFamily f;
  f.name = "smooth";
  f.dim = dim;
  f.lambda = 0.75;
  f.matrix = [dim, c](std::span<const double> x) {
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j) {
          const double y = x[(i + 1) % dim];
          a(i, i) = 1.0 + 0.5 * y * y;
        } else {
          a(i, j) = c * std::sin(pi * x[i]) * std::sin(pi * x[j]);
        }
      }
    }
    return a;
  };
  f.derivative = [dim, c](std::span<const double> x, int k) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        if (i == j) {
          if (k == (i + 1) % dim) d(i, i) = x[k];
        } else if (k == i) {
          d(i, j) = c * pi * std::cos(pi * x[i]) * std::sin(pi * x[j]);
        } else if (k == j) {
          d(i, j) = c * pi * std::sin(pi * x[i]) * std::cos(pi * x[j]);
        }
      }
    }
    return d;
  };
  return f;
}

CoefficientFamily coefficient_family(const std::string& name, int dim, const std::vector<double>& params) {
  if (name == "identity") return identity_family(dim);
  if (name == "smooth") return smooth_family(dim);
  if (name == "constant") {
    const auto nn = static_cast<std::size_t>(dim * dim);
    if (params.size() != nn + 1) {
      std::ostringstream os;
      os << "constant coefficients: expected " << nn << " entries plus lambda, got " << params.size() << " values";
      throw ConfigError(os.str());
    }
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = params[static_cast<std::size_t>(i * dim + j)];
    return constant_family(a, params.back());
  }
  throw ConfigError("unknown coefficient family '" + name + "'");
}

CoefficientField::CoefficientField(Grid grid, std::vector<double> entries, double lambda,
                                   std::vector<double> derivatives)
    : grid_(std::move(grid)),
      n_(grid_.dim()),
      lambda_(lambda),
      entries_(std::move(entries)),
      derivs_(std::move(derivatives)) {
  const auto nodes = static_cast<std::size_t>(grid_.node_count());
  const auto nn = static_cast<std::size_t>(n_ * n_);
  if (entries_.size() != nodes * nn) throw ConfigError("coefficients: entry table has wrong size");
  if (!derivs_.empty() && derivs_.size() != nodes * nn * static_cast<std::size_t>(n_))
    throw ConfigError("coefficients: derivative table has wrong size");
  if (!(lambda_ > 0.0)) throw ConfigError("coefficients: lambda must be positive");
  for (double v : entries_)
    if (!std::isfinite(v)) throw ConfigError("coefficients: non-finite entry");
}

Eigen::MatrixXd CoefficientField::matrix_at(Index node) const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = a(node, i, j);
  return m;
}

bool CoefficientField::is_symmetric(double rel_tol) const {
  for (Index node = 0; node < grid_.node_count(); ++node)
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) {
        const double x = a(node, i, j), y = a(node, j, i);
        if (std::abs(x - y) > rel_tol * std::max({1.0, std::abs(x), std::abs(y)})) return false;
      }
  return true;
}

CoefficientField sample_coefficients(const Grid& grid, const CoefficientFamily& family) {
  const int n = grid.dim();
  if (family.dim != n) throw ConfigError("coefficients: family dimension differs from grid dimension");
  const auto nodes = static_cast<std::size_t>(grid.node_count());
  const auto nn = static_cast<std::size_t>(n * n);
  std::vector<double> entries(nodes * nn);
  std::vector<double> derivs;
  if (family.derivative) derivs.resize(nodes * nn * static_cast<std::size_t>(n));

  MultiIndex idx(static_cast<std::size_t>(n));
  for (std::size_t node = 0; node < nodes; ++node) {
    grid.multi(static_cast<Index>(node), idx);
    const auto x = grid.point(idx);
    const Eigen::MatrixXd m = family.matrix(x);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) entries[node * nn + static_cast<std::size_t>(i * n + j)] = m(i, j);
    if (!derivs.empty()) {
      for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXd d = family.derivative(x, k);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            derivs[(node * static_cast<std::size_t>(n) + static_cast<std::size_t>(k)) * nn +
                   static_cast<std::size_t>(i * n + j)] = d(i, j);
      }
    }
  }
  return CoefficientField(grid, std::move(entries), family.lambda, std::move(derivs));
}

double scaling_factor(int i, int j, int q, double epsilon) {
  const bool x1_i = i < q, x1_j = j < q;
  if (x1_i && x1_j) return epsilon * epsilon;
  if (!x1_i && !x1_j) return 1.0;
  return epsilon;
}

namespace {

CoefficientField scaled_copy(const CoefficientField& base, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    std::ostringstream os;
    os << "scale_coefficients: epsilon=" << epsilon << " outside (0, 1]";
    throw ConfigError(os.str());
  }
  const int n = base.dim();
  const int q = base.grid().q();
  const auto nn = static_cast<std::size_t>(n * n);
  std::vector<double> entries = base.entries();
  std::vector<double> derivs = base.derivatives();
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto ij = static_cast<int>(k % nn);
    entries[k] *= scaling_factor(ij / n, ij % n, q, epsilon);
  }
  for (std::size_t k = 0; k < derivs.size(); ++k) {
    const auto ij = static_cast<int>(k % nn);
    derivs[k] *= scaling_factor(ij / n, ij % n, q, epsilon);
  }
  return CoefficientField(base.grid(), std::move(entries), base.lambda(), std::move(derivs));
}

}  // namespace

ScaledCoefficientField::ScaledCoefficientField(const CoefficientField& base, double epsilon)
    : epsilon_(epsilon), scaled_(scaled_copy(base, epsilon)) {}

ScaledCoefficientField scale_coefficients(const CoefficientField& a, double epsilon) {
  return ScaledCoefficientField(a, epsilon);
}

EllipticityReport verify_ellipticity(const CoefficientField& a) {
  EllipticityReport r;
  r.observed = std::numeric_limits<double>::infinity();
  const int n = a.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  for (Index node = 0; node < a.grid().node_count(); ++node) {
    const Eigen::MatrixXd m = a.matrix_at(node);
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    double lmin;
    if (n == 2) {
      // closed form avoids iterative round-off on the common 2x2 case
      const double tr = sym(0, 0) + sym(1, 1);
      const double diff = sym(0, 0) - sym(1, 1);
      lmin = 0.5 * tr - 0.5 * std::sqrt(diff * diff + 4.0 * sym(0, 1) * sym(0, 1));
    } else {
      es.compute(sym, Eigen::EigenvaluesOnly);
      lmin = es.eigenvalues().minCoeff();
    }
    if (lmin < r.observed) {
      r.observed = lmin;
      r.worst_node = node;
    }
  }
  if (r.observed < a.lambda() * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "ellipticity violated: observed " << r.observed << " < declared " << a.lambda() << " at node "
       << r.worst_node;
    const auto idx = a.grid().multi(r.worst_node);
    os << " (index";
    for (auto i : idx) os << ' ' << i;
    os << ')';
    throw VerificationError(os.str());
  }
  return r;
}

}  // namespace anisolab
