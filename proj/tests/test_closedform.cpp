// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polaron/closedform.hpp"

using namespace polaron;

namespace {
const std::vector<std::pair<double, double>> kCases{{1.0, 1.0}, {2.0, 0.5}, {4.0, 1.0}, {0.5, 2.0}};
}

TEST_CASE("minimum energy matches quadrature of the exact minimizer") {
  for (auto [a, b] : kCases) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(closedform::pekar_energy_closed(a, b) == doctest::Approx(oracle::pekar_energy_of_phi0(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("published minimum at alpha = beta = 1") {
  CHECK(closedform::pekar_energy_closed(1.0, 1.0) == doctest::Approx(-19.0 / 48.0).epsilon(1e-15));
  CHECK(closedform::pekar_energy_closed(0.0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("minimizer profile agrees with the oracle") {
  for (auto [a, b] : kCases)
    for (double x : {0.0, 0.3, -1.7, 5.0, 20.0}) {
      CAPTURE(x);
      CHECK(closedform::phi0(a, b, x) == doctest::Approx(oracle::phi0(a, b, x)).epsilon(1e-13));
    }
  const auto sol = closedform::sech_solution(1.0, 1.0);
  CHECK(sol.lambda == doctest::Approx(oracle::lambda(1.0, 1.0)).epsilon(1e-14));
  CHECK(sol(0.4) == doctest::Approx(oracle::phi0(1.0, 1.0, 0.4)).epsilon(1e-13));
}

TEST_CASE("quartic integral identity") {
  auto p4 = [](double x) { const double p = closedform::phi0(1.0, 1.0, x); return p * p * p * p; };
  const double q = 2.0 * oracle::integrate_tanh_sinh(p4, 0.0, 80.0);
  CHECK(std::abs(q - 1.0 / 3.0) < 1e-8);
  const double lam = closedform::sech_solution(1.0, 1.0).lambda;
  CHECK(std::abs(q - 2.0 * (lam + closedform::pekar_energy_closed(1.0, 1.0))) < 1e-8);
}

TEST_CASE("small alpha approaches the delta well") {
  for (double x = 0.0; x <= 10.0; x += 0.05)
    CHECK(std::abs(closedform::phi0(1e-6, 1.0, x) - closedform::phi0_limit_alpha0(1.0, x)) <= 1e-3);
  CHECK(closedform::phi0_limit_alpha0(2.0, 0.7) == doctest::Approx(oracle::delta_well(2.0, 0.7)));
  CHECK(closedform::density_limit_alpha0(2.0, 0.7) == doctest::Approx(std::pow(oracle::delta_well(2.0, 0.7), 2)));
}

TEST_CASE("Euler-Lagrange residuals are second order") {
  const double lam = closedform::sech_solution(1.0, 1.0).lambda;
  std::vector<closedform::ElResiduals> r;
  for (std::size_t n : {1025u, 2049u, 4097u})
    r.push_back(closedform::el_residuals(closedform::sample_minimizer(make_grid(40.0, n), 1.0, 1.0), 1.0, 1.0, lam));
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double ri = r[k - 1].interior / r[k].interior;
    const double rj = r[k - 1].jump / r[k].jump;
    CHECK(ri >= 3.5);
    CHECK(ri <= 4.5);
    CHECK(rj >= 3.5);
    CHECK(rj <= 4.5);
  }
  CHECK(r.back().first_integral < 1e-4);
}

TEST_CASE("residuals expose a wrong multiplier") {
  const auto psi = closedform::sample_minimizer(make_grid(40.0, 2049), 1.0, 1.0);
  const auto good = closedform::el_residuals(psi, 1.0, 1.0, 0.5625);
  const auto bad = closedform::el_residuals(psi, 1.0, 1.0, 0.6);
  CHECK(bad.interior > 100.0 * good.interior);
  CHECK_THROWS_AS(closedform::el_residuals(GridFn::sample(make_grid(1.0, 5), [](double) { return 1.0; }), 1, 1, 1),
                  DiscretizationError);
}

TEST_CASE("sampled minimizer is normalized up to the second-order trapezoid error of the kink") {
  for (auto [a, b] : kCases) {
    const double w = 40.0 / ((a + 2.0 * b) / 4.0);
    const double coarse = std::abs(l2_norm(closedform::sample_minimizer(make_grid(w, 4097), a, b)) - 1.0);
    const double fine = std::abs(l2_norm(closedform::sample_minimizer(make_grid(w, 8193), a, b)) - 1.0);
    CHECK(fine <= 1e-4);
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.05));
  }
}
