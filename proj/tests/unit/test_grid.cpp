#include <cmath>
#include <random>

#include "anisolab/errors.hpp"
#include "anisolab/field.hpp"
#include "anisolab/grid.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace anisolab;
using anisolab::test::square;

TEST_CASE("unit square with 4x4 cells") {
  const Grid g = square(4);
  CHECK(g.dim() == 2);
  CHECK(g.spacing(0) == doctest::Approx(0.25));
  CHECK(g.spacing(1) == doctest::Approx(0.25));
  CHECK(g.interior_count() == 9);
  CHECK(g.node_count() == 25);
}

TEST_CASE("unit cube with 8 cells per axis") {
  const Grid g = anisolab::test::cube(8);
  CHECK(g.interior_count() == 7 * 7 * 7);
}

TEST_CASE("invalid grids are rejected") {
  const std::vector<double> ext{1.0, 1.0};
  CHECK_THROWS_AS(make_grid(ext, std::vector<Index>{1, 4}, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(ext, std::vector<Index>{4, 4}, 0), ConfigError);
  CHECK_THROWS_AS(make_grid(ext, std::vector<Index>{4, 4}, 2), ConfigError);
  CHECK_THROWS_AS(make_grid(std::vector<double>{1.0, 0.0}, std::vector<Index>{4, 4}, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(std::vector<double>{1.0}, std::vector<Index>{4}, 1), ConfigError);
}

TEST_CASE("node indexing is row-major with the last axis fastest") {
  const Grid g = make_grid(std::vector<double>{1.0, 2.0, 3.0}, std::vector<Index>{3, 4, 5}, 1);
  CHECK(g.stride(2) == 1);
  CHECK(g.stride(1) == 6);
  CHECK(g.stride(0) == 30);
  for (Index k = 0; k < g.node_count(); ++k) {
    const MultiIndex m = g.multi(k);
    REQUIRE(g.linear(m) == k);
    for (int a = 0; a < g.dim(); ++a) CHECK(g.index_of(a, g.coordinate(a, m[a])) == m[a]);
  }
}

TEST_CASE("interior subdomains") {
  SUBCASE("8x8, margin 2") {
    const auto m = interior_subdomain(square(8), 2);
    CHECK(m.lo() == MultiIndex{2, 2});
    CHECK(m.hi() == MultiIndex{6, 6});
    CHECK(m.size() == 25);
  }
  SUBCASE("4x4, margin 2 is a single node") {
    const auto m = interior_subdomain(square(4), 2);
    CHECK(m.size() == 1);
    CHECK(m.lo() == MultiIndex{2, 2});
  }
  SUBCASE("4x4, margin 3 is empty") { CHECK_THROWS_AS(interior_subdomain(square(4), 3), ConfigError); }
  SUBCASE("margin 0 touches the boundary") { CHECK_THROWS_AS(interior_subdomain(square(4), 0), ConfigError); }
  SUBCASE("per-axis margins") {
    const auto m = interior_subdomain(square(8), std::vector<Index>{1, 3});
    CHECK(m.lo() == MultiIndex{1, 3});
    CHECK(m.hi() == MultiIndex{7, 5});
  }
}

namespace {

void check_family(const Grid& g, const NestedFamily& f) {
  CHECK(f.is_nested());
  for (std::size_t n = 0; n + 1 < f.size(); ++n) {
    CHECK(f[n].subset_of(f[n + 1]));
    for (int a = 0; a < g.dim(); ++a) CHECK(f[n].margin(a) >= f[n + 1].margin(a));
  }
  for (const auto& m : f.masks)
    for (int a = 0; a < g.dim(); ++a) {
      CHECK(m.lo(a) >= 1);
      CHECK(m.hi(a) <= g.cells(a) - 1);
    }
}

}  // namespace

TEST_CASE("nested families") {
  SUBCASE("16x16, n_max 3 halves the margin") {
    const Grid g = square(16);
    const auto f = nested_family(g, 3);
    REQUIRE(f.size() == 3);
    CHECK(f[0].margin(0) == 4);
    CHECK(f[1].margin(0) == 2);
    CHECK(f[2].margin(0) == 1);
    check_family(g, f);
  }
  SUBCASE("n_max 1 is a single mask") { CHECK(nested_family(square(16), 1).size() == 1); }
  SUBCASE("4x4, n_max 5 clamps at one cell") {
    const Grid g = square(4);
    const auto f = nested_family(g, 5);
    REQUIRE(f.size() == 5);
    CHECK(f[4].margin(0) == 1);
    CHECK(f[3] == f[4]);
    check_family(g, f);
  }
  SUBCASE("n_max 0 is rejected") { CHECK_THROWS_AS(nested_family(square(4), 0), ConfigError); }
  SUBCASE("rectangular 3-D grid") {
    const Grid g = make_grid(std::vector<double>{1, 1, 2}, std::vector<Index>{8, 16, 32}, 2);
    check_family(g, nested_family(g, 8));
  }
}

TEST_CASE("whole-cell translations") {
  const Grid g = square(12);
  std::mt19937_64 rng(3);
  const ScalarField u = anisolab::test::random_field(g, rng);
  const auto mask = interior_subdomain(g, 3);

  SUBCASE("zero shift is the identity") {
    const auto s = shift_field(u, std::vector<Index>{0, 0}, mask);
    mask.for_each(g, [&](Index k) { CHECK(s[k] == u[k]); });
  }
  SUBCASE("constant field is unchanged") {
    const ScalarField c(g, 2.5);
    const auto s = shift_field(c, std::vector<Index>{2, -3}, mask);
    mask.for_each(g, [&](Index k) { CHECK(s[k] == 2.5); });
  }
  SUBCASE("v = x1 shifted by one cell gains the spacing") {
    const Grid g4 = square(4);
    const auto v = sample(g4, [](std::span<const double> x) { return x[0]; });
    const auto m = interior_subdomain(g4, 1);
    const auto s = shift_field(v, std::vector<Index>{1, 0}, interior_subdomain(g4, 2));
    const auto m2 = interior_subdomain(g4, 2);
    m2.for_each(g4, [&](Index k) { CHECK(s[k] - v[k] == doctest::Approx(0.25)); });
    CHECK_THROWS_AS(shift_field(v, std::vector<Index>{2, 0}, m), ConfigError);
  }
  SUBCASE("shift then unshift recovers u where both are defined") {
    const std::vector<Index> h{1, -2}, mh{-1, 2};
    const auto w = shift_field(shift_field(u, h, mask), mh, mask);
    int checked = 0;
    mask.for_each(g, [&](Index k) {
      MultiIndex m = g.multi(k);
      m[0] -= 1;
      m[1] += 2;
      if (!mask.contains(m)) return;
      CHECK(w[k] == u[k]);
      ++checked;
    });
    CHECK(checked > 0);
  }
  SUBCASE("escaping shifts are errors") {
    CHECK_THROWS_AS(shift_field(u, std::vector<Index>{4, 0}, mask), ConfigError);
    CHECK_THROWS_AS(shift_field(u, std::vector<Index>{0}, mask), ConfigError);
  }
}
