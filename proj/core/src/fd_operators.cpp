#include "anisolab/fd_operators.hpp"

#include <cmath>

#include "anisolab/errors.hpp"
#include "stencil.hpp"

namespace anisolab {
namespace {

std::vector<double> spacings(const Grid& g) {
  std::vector<double> h(static_cast<std::size_t>(g.dim()));
  for (int i = 0; i < g.dim(); ++i) h[i] = g.spacing(i);
  return h;
}

// Offsets a node index by up to two unit steps.
Index offset(const Grid& g, Index l, int a, int sa, int b, int sb) {
  if (a >= 0) l += sa * g.stride(a);
  if (b >= 0) l += sb * g.stride(b);
  return l;
}

template <class StencilFn>
SparseMatrix assemble(const Grid& g, StencilFn&& stencil) {
  const InteriorNumbering numbering(g);
  std::vector<Eigen::Triplet<double>> triplets;
  const int n = g.dim();
  triplets.reserve(static_cast<std::size_t>(numbering.unknowns()) * (n == 2 ? 9 : 27));
  MultiIndex p(static_cast<std::size_t>(n));
  for (Index row = 0; row < numbering.unknowns(); ++row) {
    const Index node = numbering.node(row);
    g.multi(node, p);
    stencil(p, [&](int a, int sa, int b, int sb, double w) {
      const Index col = numbering(offset(g, node, a, sa, b, sb));
      if (col >= 0) triplets.emplace_back(row, col, w);
    });
  }
  SparseMatrix m(numbering.unknowns(), numbering.unknowns());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.prune(0.0);
  m.makeCompressed();
  return m;
}

template <class StencilFn>
ScalarField apply_free(const ScalarField& u, StencilFn&& stencil) {
  const Grid& g = u.grid();
  ScalarField out(g);
  MultiIndex p(static_cast<std::size_t>(g.dim()));
  interior_nodes(g).for_each(g, [&](Index node) {
    g.multi(node, p);
    double acc = 0.0;
    stencil(p, [&](int a, int sa, int b, int sb, double w) { acc += w * u[offset(g, node, a, sa, b, sb)]; });
    out[node] = acc;
  });
  return out;
}

void check_finite(const CoefficientField& a) {
  for (double v : a.derivatives())
    if (!std::isfinite(v)) throw ConfigError("assemble: non-finite coefficient derivative");
}

}  // namespace

ScalarField first_derivative(const ScalarField& u, int axis) {
  const Grid& g = u.grid();
  ScalarField d(g);
  const Index s = g.stride(axis);
  const double inv = 1.0 / (2.0 * g.spacing(axis));
  interior_nodes(g).for_each(g, [&](Index l) { d[l] = (u[l + s] - u[l - s]) * inv; });
  return d;
}

ScalarField second_derivative(const ScalarField& u, int i, int j) {
  const Grid& g = u.grid();
  ScalarField d(g);
  const Index si = g.stride(i);
  if (i == j) {
    const double inv = 1.0 / (g.spacing(i) * g.spacing(i));
    interior_nodes(g).for_each(g, [&](Index l) { d[l] = (u[l + si] - 2.0 * u[l] + u[l - si]) * inv; });
  } else {
    const Index sj = g.stride(j);
    const double inv = 1.0 / (4.0 * g.spacing(i) * g.spacing(j));
    interior_nodes(g).for_each(g, [&](Index l) {
      d[l] = (u[l + si + sj] - u[l + si - sj] - u[l - si + sj] + u[l - si - sj]) * inv;
    });
  }
  return d;
}

std::vector<ScalarField> grad_x1(const ScalarField& u) {
  std::vector<ScalarField> out;
  for (int i = 0; i < u.grid().q(); ++i) out.push_back(first_derivative(u, i));
  return out;
}

std::vector<ScalarField> grad_x2(const ScalarField& u) {
  std::vector<ScalarField> out;
  for (int i = u.grid().q(); i < u.grid().dim(); ++i) out.push_back(first_derivative(u, i));
  return out;
}

namespace {

HessianBlock hessian_block(const ScalarField& u, int r0, int r1, int c0, int c1) {
  HessianBlock out;
  for (int i = r0; i < r1; ++i) {
    out.emplace_back();
    for (int j = c0; j < c1; ++j) out.back().push_back(second_derivative(u, i, j));
  }
  return out;
}

}  // namespace

HessianBlock hess_x2(const ScalarField& u) {
  const int q = u.grid().q(), n = u.grid().dim();
  return hessian_block(u, q, n, q, n);
}

HessianBlock hess_x1(const ScalarField& u) {
  const int q = u.grid().q();
  return hessian_block(u, 0, q, 0, q);
}

HessianBlock hess_x1x2(const ScalarField& u) {
  const int q = u.grid().q(), n = u.grid().dim();
  return hessian_block(u, 0, q, q, n);
}

SparseOperator assemble_operator(const CoefficientField& a) {
  const Grid& g = a.grid();
  const auto h = spacings(g);
  auto coeff = [&](const MultiIndex& p, int i, int j) { return a.a(g.linear(p), i, j); };
  SparseOperator op;
  op.matrix = assemble(g, [&](MultiIndex& p, auto&& emit) { detail::flux_stencil(h, p, coeff, emit); });
  op.symmetric = a.is_symmetric() && symmetry_defect(op.matrix) <= 1e-12;
  op.stencil = g.dim() == 2 ? "flux form, 9-point" : "flux form, 27-point box";
  return op;
}

SparseOperator assemble_operator(const ScaledCoefficientField& a) { return assemble_operator(a.field()); }

SparseOperator assemble_nondivergence_operator(const CoefficientField& a) {
  if (!a.has_derivatives()) throw ConfigError("non-divergence operator needs coefficient derivatives");
  check_finite(a);
  const Grid& g = a.grid();
  const auto h = spacings(g);
  auto coeff = [&](const MultiIndex& p, int i, int j) { return a.a(g.linear(p), i, j); };
  auto deriv = [&](const MultiIndex& p, int k, int i, int j) { return a.da(g.linear(p), k, i, j); };
  SparseOperator op;
  op.matrix =
      assemble(g, [&](MultiIndex& p, auto&& emit) { detail::nondivergence_stencil(h, p, coeff, deriv, emit); });
  op.symmetric = false;
  op.stencil = "non-divergence expansion";
  return op;
}

SparseOperator assemble_nondivergence_operator(const ScaledCoefficientField& a) {
  return assemble_nondivergence_operator(a.field());
}

ScalarField apply_divergence_form(const CoefficientField& a, const ScalarField& u) {
  const Grid& g = a.grid();
  if (!(g == u.grid())) throw ConfigError("apply_divergence_form: grid mismatch");
  const auto h = spacings(g);
  auto coeff = [&](const MultiIndex& p, int i, int j) { return a.a(g.linear(p), i, j); };
  return apply_free(u, [&](MultiIndex& p, auto&& emit) { detail::flux_stencil(h, p, coeff, emit); });
}

ScalarField apply_nondivergence_form(const CoefficientField& a, const ScalarField& u) {
  if (!a.has_derivatives()) throw ConfigError("non-divergence form needs coefficient derivatives");
  const Grid& g = a.grid();
  if (!(g == u.grid())) throw ConfigError("apply_nondivergence_form: grid mismatch");
  const auto h = spacings(g);
  auto coeff = [&](const MultiIndex& p, int i, int j) { return a.a(g.linear(p), i, j); };
  auto deriv = [&](const MultiIndex& p, int k, int i, int j) { return a.da(g.linear(p), k, i, j); };
  return apply_free(u, [&](MultiIndex& p, auto&& emit) { detail::nondivergence_stencil(h, p, coeff, deriv, emit); });
}

ScalarField apply_operator(const SparseOperator& op, const ScalarField& u) {
  const auto x = u.interior();
  if (static_cast<Index>(x.size()) != op.unknowns()) throw ConfigError("apply_operator: size mismatch");
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<Index>(x.size()));
  const Eigen::VectorXd y = op.matrix * xv;
  ScalarField out(u.grid());
  out.set_interior(std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
  return out;
}

double symmetry_defect(const SparseMatrix& m) {
  const SparseMatrix t = m.transpose();
  const SparseMatrix d = m - t;
  double dmax = 0.0, mmax = 0.0;
  for (Index k = 0; k < d.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) dmax = std::max(dmax, std::abs(it.value()));
  for (Index k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) mmax = std::max(mmax, std::abs(it.value()));
  return mmax > 0.0 ? dmax / mmax : 0.0;
}

}  // namespace anisolab
