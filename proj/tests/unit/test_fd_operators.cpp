#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "anisolab/coefficients.hpp"
#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anisolab;
using anisolab::test::cube;
using anisolab::test::slopes;
using anisolab::test::square;
using std::numbers::pi;

namespace {

double max_on(const ScalarField& u, const SubdomainMask& m) {
  double v = 0.0;
  m.for_each(u.grid(), [&](Index k) { v = std::max(v, std::abs(u[k])); });
  return v;
}

ScalarField sinsin(const Grid& g) {
  return sample(g, [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
}

/// 1-D Dirichlet second-difference matrix -D2 with n-1 unknowns.
Eigen::MatrixXd neg_d2(Index n, double h) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n - 1, n - 1);
  for (Index i = 0; i < n - 1; ++i) {
    m(i, i) = 2 / (h * h);
    if (i > 0) m(i, i - 1) = -1 / (h * h);
    if (i + 2 < n) m(i, i + 1) = -1 / (h * h);
  }
  return m;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

}  // namespace

TEST_CASE("gradients") {
  const Grid g = square(8);
  const auto inner = interior_subdomain(g, 1);
  SUBCASE("constant field has zero gradient") {
    const ScalarField c(g, 3.0);
    for (const auto& d : grad_x1(c)) CHECK(max_on(d, inner) == 0.0);
    for (const auto& d : grad_x2(c)) CHECK(max_on(d, inner) == 0.0);
  }
  SUBCASE("u = x2 has unit X2 derivative") {
    const auto u = sample(g, [](std::span<const double> x) { return x[1]; });
    const auto d = grad_x2(u);
    REQUIRE(d.size() == 1);
    inner.for_each(g, [&](Index k) { CHECK(d[0][k] == doctest::Approx(1.0).epsilon(1e-13)); });
  }
  SUBCASE("block sizes follow the split") {
    const Grid c = cube(4, 2);
    const ScalarField u(c, 1.0);
    CHECK(grad_x1(u).size() == 2);
    CHECK(grad_x2(u).size() == 1);
    CHECK(hess_x1(u).size() == 2);
    CHECK(hess_x2(u).size() == 1);
    CHECK(hess_x1x2(u).size() == 2);
    CHECK(hess_x1x2(u)[0].size() == 1);
  }
}

TEST_CASE("derivative refinement is second order") {
  std::vector<double> hs, e1, e2;
  for (Index n : {16, 32, 64, 128}) {
    const Grid g = square(n);
    const auto inner = interior_subdomain(g, 1);
    const auto u = sample(g, [](std::span<const double> x) { return std::sin(pi * x[1]); });
    const auto du = first_derivative(u, 1);
    double err = 0;
    inner.for_each(g, [&](Index k) {
      err = std::max(err, std::abs(du[k] - pi * std::cos(pi * g.coordinate(1, g.multi(k)[1]))));
    });
    e1.push_back(err);

    const auto w = sinsin(g);
    const auto d22 = second_derivative(w, 1, 1);
    const auto mask = interior_subdomain(g, n / 8);
    double err2 = 0;
    mask.for_each(g, [&](Index k) { err2 = std::max(err2, std::abs(d22[k] + pi * pi * w[k])); });
    e2.push_back(err2);
    hs.push_back(g.spacing(0));
  }
  for (double s : slopes(hs, e1)) CHECK(s == doctest::Approx(2.0).epsilon(0.1));
  for (double s : slopes(hs, e2)) CHECK(s == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("second differences on polynomials") {
  const Grid g = square(8);
  const auto inner = interior_subdomain(g, 1);
  const auto lin = sample(g, [](std::span<const double> x) { return 2 * x[0] - 3 * x[1] + 1; });
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(max_on(second_derivative(lin, i, j), inner) < 1e-10);
  const auto bil = sample(g, [](std::span<const double> x) { return x[0] * x[1]; });
  const auto d12 = second_derivative(bil, 0, 1);
  inner.for_each(g, [&](Index k) { CHECK(d12[k] == doctest::Approx(1.0).epsilon(1e-12)); });
  CHECK(max_on(hess_x1x2(bil)[0][0] - d12, inner) == 0.0);
}

TEST_CASE("identity operator is the 5-point Laplacian") {
  const Grid g = make_grid(std::vector<double>{1.0, 2.0}, std::vector<Index>{5, 8}, 1);
  const auto op = assemble_operator(scale_coefficients(sample_coefficients(g, identity_family(2)), 1.0));
  const double h1 = g.spacing(0), h2 = g.spacing(1);
  const Eigen::MatrixXd expect =
      kron(neg_d2(5, h1), Eigen::MatrixXd::Identity(7, 7)) + kron(Eigen::MatrixXd::Identity(4, 4), neg_d2(8, h2));
  const Eigen::MatrixXd got(op.matrix);
  CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(got(10, 10) == doctest::Approx(2 / (h1 * h1) + 2 / (h2 * h2)));
  CHECK(op.symmetric);
}

TEST_CASE("eps = 0.5 weights the X1 stencil by 1/4") {
  const Grid g = square(6);
  const auto op = assemble_operator(scale_coefficients(sample_coefficients(g, identity_family(2)), 0.5));
  const double h = g.spacing(0);
  const Eigen::MatrixXd i5 = Eigen::MatrixXd::Identity(5, 5);
  const Eigen::MatrixXd expect = 0.25 * kron(neg_d2(6, h), i5) + kron(i5, neg_d2(6, h));
  CHECK((Eigen::MatrixXd(op.matrix) - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("constant anisotropic operator is the weighted sum of axis stencils") {
  const Grid g = cube(4, 1);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a.diagonal() << 2.0, 0.5, 3.0;
  const double eps = 0.3;
  const auto op = assemble_operator(scale_coefficients(sample_coefficients(g, constant_family(a, 0.5)), eps));
  const double h = g.spacing(0);
  const Eigen::MatrixXd i3 = Eigen::MatrixXd::Identity(3, 3), d = neg_d2(4, h);
  const Eigen::MatrixXd expect =
      eps * eps * 2.0 * kron(kron(d, i3), i3) + 0.5 * kron(kron(i3, d), i3) + 3.0 * kron(kron(i3, i3), d);
  CHECK((Eigen::MatrixXd(op.matrix) - expect).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("discrete eigenfunction of the Laplacian") {
  std::vector<double> hs, errs;
  for (Index n : {8, 16, 32, 64}) {
    const Grid g = square(n);
    const auto a = scale_coefficients(sample_coefficients(g, identity_family(2)), 1.0);
    const auto u = sinsin(g);
    const auto lu = apply_operator(assemble_operator(a), u);
    const double h = g.spacing(0);
    const double sym = 2 * 4 / (h * h) * std::pow(std::sin(pi * h / 2), 2);
    double exact_err = 0, cont_err = 0;
    interior_nodes(g).for_each(g, [&](Index k) {
      exact_err = std::max(exact_err, std::abs(lu[k] - sym * u[k]));
      cont_err = std::max(cont_err, std::abs(lu[k] - 2 * pi * pi * u[k]));
    });
    CHECK(exact_err < 1e-9 * sym);
    hs.push_back(h);
    errs.push_back(cont_err);
  }
  for (double s : slopes(hs, errs)) CHECK(s == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("variable symmetric coefficients give a symmetric positive definite operator") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const Grid g = n == 2 ? square(10) : cube(5);
    const auto a = sample_coefficients(g, smooth_family(n));
    for (double eps : {1.0, 0.3, 0.01}) {
      const auto op = assemble_operator(scale_coefficients(a, eps));
      CHECK(symmetry_defect(op.matrix) <= 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(op.matrix)};
      CHECK(es.eigenvalues().minCoeff() > 0.0);

      // pattern bounded by the 3^N box stencil
      const Index bound = n == 2 ? 9 : 27;
      for (Index c = 0; c < op.matrix.outerSize(); ++c) CHECK(op.matrix.col(c).nonZeros() <= bound);

      // discrete Green identity
      const Eigen::VectorXd u = Eigen::VectorXd::Random(op.matrix.rows());
      const Eigen::VectorXd v = Eigen::VectorXd::Random(op.matrix.rows());
      const double luv = (op.matrix * u).dot(v), ulv = u.dot(op.matrix * v);
      CHECK(std::abs(luv - ulv) <= 1e-12 * std::abs(luv) + 1e-9);
    }
  }
}

TEST_CASE("derivatives commute with whole-cell translation") {
  const Grid g = square(16);
  std::mt19937_64 rng(9);
  const auto u = anisolab::test::random_field(g, rng);
  const auto outer = interior_subdomain(g, 4);
  const auto inner = interior_subdomain(g, 5);
  const std::vector<Index> h{2, -1};
  const auto tu = shift_field(u, h, outer);
  for (int axis = 0; axis < 2; ++axis) {
    const auto lhs = first_derivative(tu, axis);
    const auto rhs = shift_field(first_derivative(u, axis), h, outer);
    inner.for_each(g, [&](Index k) { CHECK(lhs[k] == doctest::Approx(rhs[k]).epsilon(1e-12)); });
  }
  const auto lhs2 = second_derivative(tu, 0, 1);
  const auto rhs2 = shift_field(second_derivative(u, 0, 1), h, outer);
  inner.for_each(g, [&](Index k) { CHECK(lhs2[k] == doctest::Approx(rhs2[k]).epsilon(1e-12)); });
}

TEST_CASE("divergence and non-divergence forms agree to second order") {
  std::vector<double> hs, diffs;
  for (Index n : {16, 32, 64, 128}) {
    const Grid g = square(n);
    const auto a = sample_coefficients(g, smooth_family(2));
    const auto u = sinsin(g);
    const auto div = apply_divergence_form(a, u);
    const auto nondiv = apply_nondivergence_form(a, u);
    const auto mask = interior_subdomain(g, 1);
    double d = 0;
    mask.for_each(g, [&](Index k) { d = std::max(d, std::abs(div[k] - nondiv[k])); });
    hs.push_back(g.spacing(0));
    diffs.push_back(d);

    // the matrix forms act like the matrix-free forms
    const auto op = assemble_operator(a);
    const auto nop = assemble_nondivergence_operator(a);
    CHECK(max_on(apply_operator(op, u) - div, mask) < 1e-9 * max_on(div, mask));
    CHECK(max_on(apply_operator(nop, u) - nondiv, mask) < 1e-9 * max_on(div, mask));
    CHECK_FALSE(nop.symmetric);
  }
  for (double s : slopes(hs, diffs)) CHECK(s == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("non-divergence form needs derivatives") {
  const Grid g = square(4);
  const CoefficientField a(g, sample_coefficients(g, identity_family(2)).entries(), 1.0);
  CHECK_THROWS_AS(assemble_nondivergence_operator(a), ConfigError);
}
