#include <cmath>
#include <numbers>
#include <random>

#include "anisolab/errors.hpp"
#include "anisolab/fd_operators.hpp"
#include "anisolab/norms.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anisolab;
using anisolab::test::random_field;
using anisolab::test::square;
using std::numbers::pi;

TEST_CASE("l2 norm") {
  SUBCASE("zero") { CHECK(l2_norm(ScalarField(square(8))) == 0.0); }
  SUBCASE("unit field is within O(h) of 1") {
    double prev = 1;
    for (Index n : {8, 16, 32, 64}) {
      const Grid g = square(n);
      const double h = g.spacing(0);
      const double v = l2_norm(ScalarField(g, 1.0));
      // interior nodes only: (1 - h)^2 of the unit square
      CHECK(v * v == doctest::Approx((1 - h) * (1 - h)).epsilon(1e-13));
      CHECK(std::abs(v - 1) < prev);
      prev = std::abs(v - 1);
    }
  }
  SUBCASE("sin(pi y) squared norm tends to 1/2") {
    for (Index n : {8, 16, 32}) {
      const Grid g = square(n);
      const double h = g.spacing(0);
      const auto u = sample(g, [](std::span<const double> x) { return std::sin(pi * x[1]); });
      // node sums of sin^2 over a full period are exact; the X1 direction
      // loses the two face lines
      const double v = l2_norm(u);
      CHECK(v * v == doctest::Approx(0.5 * (1 - h)).epsilon(1e-12));
    }
  }
  SUBCASE("masks and components") {
    const Grid g = square(8);
    const ScalarField u(g, 2.0);
    const auto m = interior_subdomain(g, 2);
    CHECK(l2_norm(u, m) == doctest::Approx(2.0 * std::sqrt(m.size() * g.cell_volume())));
    const std::vector<ScalarField> comps{u, u};
    CHECK(l2_norm(comps, m) == doctest::Approx(std::sqrt(2.0) * l2_norm(u, m)));
  }
}

TEST_CASE("V12 norm of sin(pi y)") {
  for (Index n : {16, 32, 64, 256}) {
    const Grid g = square(n);
    const double h = g.spacing(0);
    const auto u = sample(g, [](std::span<const double> x) { return std::sin(pi * x[1]); });
    // centered difference of sin is cos(pi y) sin(pi h)/h; node sums of cos^2
    // over the interior give 1/2 - h
    const double d = std::sin(pi * h) / h;
    const double expect = std::sqrt((1 - h) * (0.5 + d * d * (0.5 - h)));
    CHECK(v12_norm(u) == doctest::Approx(expect).epsilon(1e-12));
    if (n == 256) CHECK(v12_norm(u) == doctest::Approx(std::sqrt(0.5 + pi * pi / 2)).epsilon(0.01));
  }
}

TEST_CASE("linear u = y has no X2 curvature") {
  const Grid g = square(16);
  const auto u = sample(g, [](std::span<const double> x) { return x[1]; });
  const auto omega = interior_subdomain(g, 2);
  CHECK(hess_x2_seminorm(u, omega) < 1e-12);
  CHECK(v22_norm(u, omega) == doctest::Approx(v12_norm(u)).epsilon(1e-12));
}

TEST_CASE("seminorm helpers") {
  const Grid g = square(16);
  const auto omega = interior_subdomain(g, 3);
  const double measure = omega.size() * g.cell_volume();
  const auto u = sample(g, [](std::span<const double> x) { return x[0] * x[0] + 3 * x[0] * x[1]; });
  CHECK(hess_x1_seminorm(u, omega) == doctest::Approx(2 * std::sqrt(measure)));
  CHECK(hess_x1x2_seminorm(u, omega) == doctest::Approx(3 * std::sqrt(measure)));
  CHECK(hess_x2_seminorm(u, omega) < 1e-10);
  const auto lin = sample(g, [](std::span<const double> x) { return 2 * x[0]; });
  CHECK(grad_x1_norm(lin) == doctest::Approx(2 * l2_norm(ScalarField(g, 1.0))));
}

TEST_CASE("norm bundle is monotone") {
  std::mt19937_64 rng(1);
  const Grid g = square(16);
  const auto fam = nested_family(g, 4);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_field(g, rng);
    const auto b = norm_bundle(u, fam.masks);
    CHECK(b.v12 >= b.l2);
    for (const auto& [m, v] : b.v22_by_mask) CHECK(v >= b.v12);
    CHECK(b.v22_by_mask.size() == fam.size());
  }
}

TEST_CASE("Frechet distance") {
  std::mt19937_64 rng(2);
  const Grid g = square(16);
  const auto fam = nested_family(g, 20);

  SUBCASE("d(u, u) = 0") {
    const auto u = random_field(g, rng);
    CHECK(frechet_distance(u, u, fam) == 0.0);
  }
  SUBCASE("unit seminorms sum to 1 - 2^-20") {
    const std::vector<double> ones(20, 1.0);
    CHECK(std::abs(frechet_series(ones) - (1 - std::pow(2.0, -20))) <= 1e-12);
  }
  SUBCASE("symmetry and triangle inequality") {
    for (int t = 0; t < 100; ++t) {
      const double s = std::pow(10.0, double(t % 5) - 3);
      const auto u = random_field(g, rng, s), v = random_field(g, rng, s), w = random_field(g, rng, s);
      const double uv = frechet_distance(u, v, fam), vu = frechet_distance(v, u, fam);
      CHECK(std::abs(uv - vu) <= 1e-12);
      CHECK(uv <= frechet_distance(u, w, fam) + frechet_distance(w, v, fam) + 1e-12);
      CHECK(uv < 2.0);
    }
  }
  SUBCASE("truncation tail") {
    const auto u = random_field(g, rng), v = random_field(g, rng);
    const double d20 = frechet_distance(u, v, fam);
    const double d30 = frechet_distance(u, v, nested_family(g, 30));
    CHECK(d30 >= d20);
    CHECK(d30 - d20 <= std::pow(2.0, -19));
  }
  SUBCASE("convergence in d means convergence on every mask") {
    const auto u = random_field(g, rng);
    const auto phi = sample(g, [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); });
    double prev = 1e9;
    for (int m = 1; m <= 6; ++m) {
      const ScalarField um = u + std::pow(10.0, -m) * phi;
      const double d = frechet_distance(um, u, fam);
      CHECK(d < prev);
      prev = d;
    }
    CHECK(prev < 1e-5);

    // a bump living next to the boundary is invisible to the inner masks
    // but never shrinks on the outer ones, so d stays away from 0
    ScalarField bump(g);
    for (Index j = 1; j < 16; ++j) bump.at(std::vector<Index>{1, j}) = std::sin(pi * j / 16.0);
    const double db = frechet_distance(u + bump, u, fam);
    for (std::size_t n = 0; n < fam.size(); ++n) {
      if (fam[n].margin(0) > 2) CHECK(hess_x2_seminorm(bump, fam[n]) == 0.0);
      if (fam[n].margin(0) == 1) CHECK(hess_x2_seminorm(bump, fam[n]) > 1.0);
    }
    CHECK(db > 0.1);
  }
}

TEST_CASE("translation modulus") {
  const Grid g = square(4);
  SUBCASE("constant family") {
    const std::vector<ScalarField> fam{ScalarField(g, 1.0), ScalarField(g, -2.0)};
    const auto m = interior_subdomain(g, 2);
    const std::vector<MultiIndex> shifts{{1, 0}, {0, -1}};
    for (const auto& [h, s] : translation_modulus(fam, m, shifts)) CHECK(s == 0.0);
  }
  SUBCASE("v = x1 shifted by one cell") {
    const std::vector<ScalarField> fam{sample(g, [](std::span<const double> x) { return x[0]; })};
    const auto m = interior_subdomain(g, 2);
    const std::vector<MultiIndex> shifts{{0, 0}, {1, 0}};
    const auto r = translation_modulus(fam, m, shifts);
    CHECK(r[0].second == 0.0);
    CHECK(r[1].second == doctest::Approx(0.25 * std::sqrt(m.size() * g.cell_volume())));
  }
  SUBCASE("inadmissible shift") {
    const std::vector<ScalarField> fam{ScalarField(g, 1.0)};
    const std::vector<MultiIndex> shifts{{2, 0}};
    CHECK_THROWS_AS(translation_modulus(fam, interior_subdomain(g, 2), shifts), ConfigError);
  }
  SUBCASE("multi-component members") {
    const Grid g8 = square(8);
    const auto u = sample(g8, [](std::span<const double> x) { return x[0] * x[0] * x[1]; });
    const std::vector<std::vector<ScalarField>> members{{first_derivative(u, 0), first_derivative(u, 1)}};
    const auto m = interior_subdomain(g8, 3);
    const std::vector<MultiIndex> shifts{{1, 1}};
    const auto r = translation_modulus(std::span<const std::vector<ScalarField>>(members), m, shifts);
    const std::vector<ScalarField> a{members[0][0]}, b{members[0][1]};
    const double sa = translation_modulus(a, m, shifts)[0].second;
    const double sb = translation_modulus(b, m, shifts)[0].second;
    CHECK(r[0].second == doctest::Approx(std::hypot(sa, sb)));
  }
}
