// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polaron/effpot.hpp"
#include "polaron/landau.hpp"
#include "polaron/sweep.hpp"

using namespace polaron;
using namespace polaron::effpot;

TEST_CASE("upper potential equals the erfcx closed form") {
  for (double B : {2.0, 10.0, 1e6, 1e20})
    for (double t : {0.0, 1e-3, 0.3, 1.0, 4.0, 30.0, 1e3}) {
      const double x = t * std::sqrt(2.0 / B);
      CAPTURE(B);
      CAPTURE(x);
      CHECK(v_upper(B, x) == doctest::Approx(oracle::v_upper(B, x)).epsilon(1e-11));
    }
}

TEST_CASE("values at the origin") {
  CHECK(v_upper(2.0, 0.0) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(v_lower(2.0, 0.0) == 2.0);
  for (double B : {2.0, 1e6, 1e20}) CHECK(std::abs(v_upper(B, 0.0) / std::sqrt(std::numbers::pi * B / 2.0) - 1.0) <= 1e-10);
}

TEST_CASE("potentials are even, positive and below 1/|x| far out") {
  for (double x : {0.01, 0.5, 3.0}) {
    CHECK(v_upper(1e3, x) == v_upper(1e3, -x));
    CHECK(v_lower(1e3, x) == v_lower(1e3, -x));
    CHECK(v_upper(1e3, x) > 0.0);
    CHECK(v_upper(1e3, x) < 1.0 / x);
    CHECK(v_lower(1e3, x) < 2.0 / x);
  }
  // large |x|: both behave like 1/|x|
  CHECK(v_upper(1e3, 50.0) * 50.0 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(v_lower(1e3, 50.0) * 50.0 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(v_upper(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(v_lower(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(v_upper(2.0, std::nan("")), std::invalid_argument);
  CHECK_THROWS(g_const(2.0, 1.0));
  CHECK_THROWS(d_const(2.0, 1.0));
  CHECK_NOTHROW(g_tilde_const(2.0, 1.0));
}

TEST_CASE("integral identities against independent quadrature") {
  for (double B : {1e3, 1e8, 1e20})
    for (double L : {0.05, 1.0 / std::log(1e8), 1.0}) {
      CAPTURE(B);
      CAPTURE(L);
      const double m = mu(B);
      CHECK(std::abs(oracle::integral_v_upper(B, L) - (m + g_const(B, L))) <= 1e-7);
      CHECK(std::abs(integral_v_upper(B, L) - (m + g_const(B, L))) <= 1e-7);
      const double lower = 2.0 * oracle::integrate_tanh_sinh([B](double x) { return 2.0 / (std::sqrt(2.0 / B + x * x) + x); }, 0.0, L);
      CHECK(std::abs(lower - (m + d_const(B, L))) <= 1e-7);
    }
}

TEST_CASE("identity at a moderate field") {
  const double B = std::exp(2.0), L = 1.0;
  const double direct = oracle::integral_v_upper(B, L);
  CHECK(std::isfinite(g_const(B, L)));
  CHECK(direct == doctest::Approx(mu(B) + g_const(B, L)).epsilon(1e-10));
  CHECK(g_tilde_const(B, L) - g_const(B, L) == doctest::Approx(-2.0 * std::log(std::log(B))).epsilon(1e-12));
}

TEST_CASE("cumulative moments match quadrature") {
  const UpperPotential U(1e4);
  const LowerPotential Lp(1e4);
  for (double x : {1e-4, 0.01, 0.2, 2.0}) {
    CAPTURE(x);
    const double m0 = oracle::integrate_tanh_sinh([](double t) { return oracle::v_upper(1e4, t); }, 0.0, x);
    const double m1 = oracle::integrate_tanh_sinh([](double t) { return t * oracle::v_upper(1e4, t); }, 0.0, x);
    CHECK(U.moment0(x) == doctest::Approx(m0).epsilon(1e-11));
    CHECK(U.moment1(x) == doctest::Approx(m1).epsilon(1e-11));
    const double l0 = oracle::integrate_tanh_sinh([&](double t) { return Lp.value(t); }, 0.0, x);
    const double l1 = oracle::integrate_tanh_sinh([&](double t) { return t * Lp.value(t); }, 0.0, x);
    CHECK(Lp.moment0(x) == doctest::Approx(l0).epsilon(1e-12));
    CHECK(Lp.moment1(x) == doctest::Approx(l1).epsilon(1e-12));
  }
  CHECK(U.moment0(-0.3) == doctest::Approx(-U.moment0(0.3)));
}

TEST_CASE("hat masses are a partition of the potential integral") {
  const Grid1D g = make_grid(2.0, 257);
  const UpperPotential U(1e6);
  const auto m = hat_masses(U, g);
  double total = 0.0;
  for (double v : m) total += v;
  CHECK(total == doctest::Approx(2.0 * U.moment0(2.0)).epsilon(1e-12));
  CHECK(m[g.origin() - 5] == doctest::Approx(m[g.origin() + 5]).epsilon(1e-14));
}

TEST_CASE("2D quadrature of the orbital reproduces the upper potential") {
  for (double B : {2.0, 10.0, 1e3})
    for (double t : {0.5, 2.0}) {
      const double x = t * std::sqrt(2.0 / B);
      CAPTURE(B);
      CAPTURE(x);
      const double q = oracle::orbital_average_2d([B](double r) { return gamma_landau(B, r); }, B, x);
      CHECK(q == doctest::Approx(v_upper(B, x)).epsilon(1e-8));
    }
}

TEST_CASE("orbital is normalized") {
  const double B = 7.0;
  const double n = 2.0 * std::numbers::pi *
                   oracle::integrate_half_line([B](double r) { const double g = gamma_landau(B, r); return r * g * g; });
  CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("extraction inequalities on smooth functions") {
  const Grid1D g = make_grid(10.0, 4097);
  std::mt19937_64 rng(11);
  const ExtractionContext ctx(1e5, g);
  for (int k = 0; k < 5; ++k) {
    const GridFn f = random_smooth_function(g, rng);
    for (double L : {0.05, 1.0 / std::log(1e5), 1.0})
      for (auto kind : {ExtractionKind::kUpper, ExtractionKind::kLower, ExtractionKind::kConvolution}) {
        const auto r = ctx.check(L, f, kind);
        CHECK(r.holds);
        CHECK(r.lhs >= 0.0);
      }
  }
  CHECK_THROWS_AS(ctx.check(0.01, random_smooth_function(g, rng), ExtractionKind::kUpper), DiscretizationError);
  CHECK_THROWS_AS(ctx.check(0.0, random_smooth_function(g, rng), ExtractionKind::kUpper), std::invalid_argument);
}

TEST_CASE("one-shot extraction check agrees with the context") {
  const Grid1D g = make_grid(8.0, 2049);
  const GridFn f = GridFn::sample(g, [](double x) { return std::exp(-x * x / 2.0); });
  const auto a = delta_extraction_check(1e6, 0.5, f, ExtractionKind::kLower);
  const auto b = ExtractionContext(1e6, g).check(0.5, f, ExtractionKind::kLower);
  CHECK(a.lhs == b.lhs);
  CHECK(a.rhs == b.rhs);
}

TEST_CASE("small sweep has no violations") {
  SweepSpec s;
  s.functions = 3;
  s.fields = {1e3};
  const auto r = extraction_sweep(s);
  CHECK(r.checks == 3 * 3 * 3);
  CHECK(r.violations == 0);
  CHECK(r.worst_ratio < 1.0);
}

TEST_CASE("lowest Landau projection") {
  const double B = 1.0;
  const SquareGrid grid{6.5, 105};
  const auto f = sample_2d(grid, [B](double x, double y) { return gamma_landau(B, std::hypot(x, y)); });
  const auto p = landau_projection_apply(B, grid, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.n; ++i)
    for (std::size_t j = 0; j < grid.n; ++j)
      if (std::abs(grid.x(i)) <= 1.5 && std::abs(grid.x(j)) <= 1.5)
        worst = std::max(worst, std::abs(p[grid.index(i, j)] - f[grid.index(i, j)]));
  CHECK(worst < 1e-6);
  CHECK(l2_norm_2d(grid, f) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(landau_projection_apply(4.0, grid, f), DiscretizationError);
}
