#include <cmath>
#include <numbers>

#include "anisolab/coefficients.hpp"
#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"
#include "anisolab/limit_solver.hpp"
#include "anisolab/linear_solver.hpp"
#include "anisolab/norms.hpp"
#include "anisolab/semilinear.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anisolab;
using anisolab::test::slopes;
using anisolab::test::square;
using std::numbers::pi;

TEST_CASE("registry nonlinearities are monotone with bounded growth") {
  for (const auto& a : {zero_nonlinearity(), linear_nonlinearity(2.5), tanh_nonlinearity(), rational_nonlinearity()}) {
    CHECK(is_nonincreasing(a));
    CHECK(satisfies_growth(a));
  }
  CHECK(linear_nonlinearity(2.5).growth == 2.5);
  CHECK(tanh_nonlinearity().growth == 1.0);
  CHECK(rational_nonlinearity()(1.0) == doctest::Approx(-0.5));
  CHECK(make_nonlinearity("linear", {3.0})(2.0) == doctest::Approx(-6.0));
  CHECK(make_nonlinearity("zero").is_zero);
  CHECK_THROWS_AS(make_nonlinearity("cubic"), ConfigError);
  CHECK_THROWS_AS(linear_nonlinearity(-1.0), ConfigError);

  const Nonlinearity increasing{"up", [](double x) { return x; }, 1.0, false};
  CHECK_FALSE(is_nonincreasing(increasing));
  const Nonlinearity cubic{"cubic", [](double x) { return -x * x * x; }, 1.0, false};
  CHECK_FALSE(satisfies_growth(cubic));
}

TEST_CASE("zero nonlinearity reproduces the linear solve") {
  const Grid g = square(16);
  const auto a = scale_coefficients(sample_coefficients(g, smooth_family(2)), 0.5);
  const ScalarField f(g, 1.0);
  const auto r = picard_solve(a, zero_nonlinearity(), f);
  const auto lin = solve_dirichlet(assemble_operator(a), f).u;
  CHECK(r.report.iterations == 1);
  for (Index k = 0; k < g.node_count(); ++k) CHECK(r.u[k] == lin[k]);
}

TEST_CASE("a(u) = -u manufactured solution") {
  const double eps = 0.5;
  std::vector<double> hs, errs;
  for (Index n : {16, 32, 64}) {
    const Grid g = square(n);
    const auto exact = sample(g, [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
    const ScalarField f = (eps * eps * pi * pi + pi * pi + 1) * exact;
    const auto a = scale_coefficients(sample_coefficients(g, identity_family(2)), eps);
    const auto r = picard_solve(a, linear_nonlinearity(1.0), f);
    double err = 0;
    for (Index k = 0; k < g.node_count(); ++k) err = std::max(err, std::abs(r.u[k] - exact[k]));
    hs.push_back(g.spacing(0));
    errs.push_back(err);
  }
  for (double s : slopes(hs, errs)) CHECK(s == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("tanh nonlinearity converges quickly") {
  const Grid g = square(32);
  const auto a = scale_coefficients(sample_coefficients(g, identity_family(2)), 0.5);
  PicardOptions opt;
  opt.max_iter = 200;
  const auto r = picard_solve(a, tanh_nonlinearity(), ScalarField(g, 1.0), opt);
  CHECK(r.report.iterations <= 200);
  CHECK(r.report.nonlinear_residual <= 1e-8);

  // increments settle into a monotone decay over the second half
  const auto& inc = r.report.increments;
  REQUIRE(inc.size() >= 4);
  for (std::size_t m = inc.size() / 2; m + 1 < inc.size(); ++m) CHECK(inc[m + 1] <= 1.1 * inc[m]);
}

TEST_CASE("iteration budget and options") {
  const Grid g = square(16);
  const auto a = scale_coefficients(sample_coefficients(g, identity_family(2)), 0.5);
  PicardOptions opt;
  opt.max_iter = 2;
  try {
    picard_solve(a, tanh_nonlinearity(), ScalarField(g, 1.0), opt);
    FAIL("expected a solver error");
  } catch (const SolverError& e) {
    CHECK(e.residual() > 0.0);
  }
  opt.max_iter = 50;
  opt.damping = 0.0;
  CHECK_THROWS_AS(picard_solve(a, tanh_nonlinearity(), ScalarField(g, 1.0), opt), ConfigError);
  opt.damping = 1.5;
  CHECK_THROWS_AS(picard_solve(a, tanh_nonlinearity(), ScalarField(g, 1.0), opt), ConfigError);
}

TEST_CASE("semilinear limit") {
  SUBCASE("zero nonlinearity is the linear limit") {
    const Grid g = square(16);
    const auto a = sample_coefficients(g, smooth_family(2));
    const auto f = sample(g, [](std::span<const double> x) { return 1 + x[0]; });
    const auto u = semilinear_limit(a, zero_nonlinearity(), f).u;
    const auto ref = solve_limit(a, f);
    for (Index k = 0; k < g.node_count(); ++k) CHECK(u[k] == doctest::Approx(ref[k]).epsilon(1e-12));
  }
  SUBCASE("a(u) = -u matches the cosh profile") {
    std::vector<double> hs, errs;
    for (Index n : {16, 32, 64}) {
      const Grid g = square(n);
      const auto u = semilinear_limit(sample_coefficients(g, identity_family(2)), linear_nonlinearity(1.0),
                                      ScalarField(g, 1.0))
                         .u;
      const double h = g.spacing(1);
      double err = 0;
      for (Index k = 0; k < g.node_count(); ++k) {
        const double y = g.coordinate(1, g.multi(k)[1]);
        err = std::max(err, std::abs(u[k] - (1 - std::cosh(y - 0.5) / std::cosh(0.5))));
      }
      CHECK(err <= h * h);
      CHECK(u.at(std::vector<Index>{3, n / 2}) == doctest::Approx(1 - 1 / std::cosh(0.5)).epsilon(h * h));
      hs.push_back(h);
      errs.push_back(err);
    }
    for (double s : slopes(hs, errs)) CHECK(s == doctest::Approx(2.0).epsilon(0.1));
  }
  SUBCASE("X1-independent data gives equal slices") {
    const Grid g = square(16);
    const auto f = sample(g, [](std::span<const double> x) { return 1 + std::sin(pi * x[1]); });
    const auto u = semilinear_limit(sample_coefficients(g, identity_family(2)), tanh_nonlinearity(), f).u;
    for (Index j = 0; j <= 16; ++j)
      for (Index i = 1; i <= 16; ++i)
        CHECK(u.at(std::vector<Index>{i, j}) == u.at(std::vector<Index>{0, j}));
  }
}

TEST_CASE("semilinear sweep quantities decrease with eps") {
  const Grid g = square(32);
  const auto a = sample_coefficients(g, smooth_family(2));
  const auto f = sample(g, [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
  const auto nl = tanh_nonlinearity();
  const auto u0 = semilinear_limit(a, nl, f).u;
  const auto omega = interior_subdomain(g, 4);
  double pv = 1e9, p1 = 1e9, p2 = 1e9;
  for (double eps : {1.0, 0.5, 0.25, 0.125, 0.0625}) {
    const auto u = picard_solve(scale_coefficients(a, eps), nl, f).u;
    const double v = v12_norm(u - u0);
    const double h1 = eps * eps * hess_x1_seminorm(u, omega);
    const double h12 = eps * hess_x1x2_seminorm(u, omega);
    CHECK(v < pv);
    CHECK(h1 < p1);
    CHECK(h12 < p2);
    pv = v;
    p1 = h1;
    p2 = h12;
  }
}
