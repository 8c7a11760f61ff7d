#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qwzeta/mahler.hpp"
#include "qwzeta/zeta.hpp"

using namespace qwz;

TEST_CASE("Mahler measure of simple functions") {
  const auto q = QuadratureSpec::periodic(1, 4096);
  CHECK(std::abs(mahler_measure(q, [](std::span<const double>) { return Complex(3.0); }).value - std::log(3.0)) <
        1e-15);
  for (double u : {0.25, 0.5, 0.9, 1.5, 2.0, 3.0}) {
    const auto r = mahler_quadrature(MahlerIntegrand::JensenQuadratic, 1, u, q);
    CHECK(std::abs(r.value - 2.0 * std::log(std::max(1.0, u))) < 1e-8);
    CHECK(r.excluded_points == 0);
  }
}

TEST_CASE("zeros on the grid are excluded") {
  // 1 - 2 cos(t) + 1 vanishes at t = 0, which is a grid node.
  const auto q = QuadratureSpec::periodic(1, 64);
  const auto r = mahler_quadrature(MahlerIntegrand::JensenQuadratic, 1, 1.0, q);
  CHECK(r.excluded_points == 1);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("integrand and quadrature must agree") {
  CHECK_THROWS_AS(mahler_quadrature(MahlerIntegrand::SearchPoly, 2, 0.5, QuadratureSpec::periodic(2, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(mahler_quadrature(MahlerIntegrand::NonsearchPoly, 2, 0.5, QuadratureSpec::half_angle_last(2, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(mahler_quadrature(MahlerIntegrand::NonsearchPoly, 2, 0.5, QuadratureSpec::periodic(1, 64)),
                  std::invalid_argument);
  CHECK_THROWS_AS(mahler_quadrature(MahlerIntegrand::JensenQuadratic, 2, 0.5, QuadratureSpec::periodic(2, 64)),
                  std::invalid_argument);
  CHECK(quadrature_for(MahlerIntegrand::SearchPoly, 2, 64).rules.back() == AngleRule::MidpointHalfAngle);
  CHECK(quadrature_for(MahlerIntegrand::NonsearchPoly, 2, 64).rules.back() == AngleRule::PeriodicEquispaced);
}

TEST_CASE("logarithmic zeta examples") {
  const auto ns1 = log_zeta_nonsearch(1, 0.5);
  CHECK(std::abs(ns1.value - std::log(0.5)) < 1e-9);
  CHECK(std::abs(std::exp(ns1.value) - zeta_nonsearch_limit(1, 0.5).value.real()) < 1e-9);
  CHECK(ns1.imag_residual < 1e-8);
  CHECK(ns1.factor_residual < 1e-12);

  const auto s1 = log_zeta_search(1, 0.5);
  CHECK(std::abs(s1.value - std::log(zeta_case2_limit(1, 0.5).value.real())) < 1e-7);

  const auto q2 = QuadratureSpec::periodic(2, 1024);
  CHECK(std::abs(log_zeta_nonsearch(2, 0.6, q2).value - std::log(zeta_nonsearch_limit(2, 0.6, q2).value.real())) <
        1e-7);
  const auto h2 = QuadratureSpec::half_angle_last(2, 1024);
  const auto s2 = log_zeta_search(2, 0.9, h2);
  CHECK(std::abs(s2.value - std::log(zeta_case2_limit(2, 0.9, h2).value.real())) < 1e-7);
  CHECK(s2.imag_residual < 1e-8);

  // Both vanish as u -> 0+.
  CHECK(std::abs(log_zeta_nonsearch(2, 1e-4, q2).value) < 1e-3);
  CHECK(std::abs(log_zeta_search(2, 1e-4, h2).value) < 1e-3);
}

TEST_CASE("logarithmic zeta domain") {
  const auto q = QuadratureSpec::periodic(1, 64);
  for (double u : {0.0, 1.0, -0.5, 1.5}) {
    CHECK_THROWS_AS(log_zeta_nonsearch(1, u, q), std::invalid_argument);
  }
}

TEST_CASE("figure 1 table") {
  const std::vector<double> grid = {0.05, 0.2, 0.5, 0.8};
  const auto t = figure1_table(2, grid, 256);
  REQUIRE(t.rows.size() == 4);
  CHECK(t.monotone);
  CHECK(std::abs(t.rows[0].diff) < std::abs(t.rows[2].diff));
  CHECK(t.u_at_max == 0.8);
  for (const auto& r : t.rows) CHECK(r.diff == r.nonsearch - r.search);

  // At d = 1 the non-search curve is log(1 - u).
  for (const auto& r : figure1_table(1, grid, 1024).rows) CHECK(std::abs(r.nonsearch - std::log(1 - r.u)) < 1e-9);

  CHECK(figure1_table(2, grid, 256, 3).rows[2].search == t.rows[2].search);
  CHECK_THROWS_AS(figure1_table(2, {0.0, 0.5}, 64), std::invalid_argument);
  CHECK_THROWS_AS(figure1_table(2, {0.5, 1.0}, 64), std::invalid_argument);
  const auto grid99 = default_figure1_grid();
  CHECK(grid99.size() == 99);
  CHECK(grid99.front() == 0.01);
  CHECK(grid99.back() == 0.99);
}
