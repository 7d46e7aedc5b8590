// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polaron/closedform.hpp"
#include "polaron/solver.hpp"

using namespace polaron;
using namespace polaron::solver;

namespace {

GridFn oracle_minimizer(const Grid1D& g, double a, double b) {
  return GridFn::sample(g, [&](double x) { return a > 0.0 ? oracle::phi0(a, b, x) : oracle::delta_well(b, x); });
}

double exact_energy(double a, double b) { return -(a * a + 6.0 * a * b + 12.0 * b * b) / 48.0; }

}  // namespace

TEST_CASE("options are validated") {
  SolveOptions o;
  CHECK_NOTHROW(o.validate());
  o.max_iter = 0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
  o = {};
  o.tol_grad = 0.0;
  CHECK_THROWS_AS(o.validate(), std::invalid_argument);
}

TEST_CASE("gradient agrees with independent central differences") {
  const Grid1D g = make_grid(10.0, 257);
  FunctionalSpec spec = pekar_spec(g, 1.5, 0.7);
  spec.potential = ExternalPotential::from_samples(GridFn::sample(g, [](double x) { return std::exp(-x * x); }), -0.3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  const GridFn f = normalize(GridFn::sample(g, [](double x) { return std::exp(-x * x / 3.0) * (1.0 + 0.2 * x); }));
  const GridFn grad = variational_gradient(f, spec);
  for (int k = 0; k < 20; ++k) {
    GridFn h(g);
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = nd(rng);
    h = normalize(h);
    const double fd = oracle::central_difference([&](double e) { return energy(f + e * h, spec).total; }, 1e-5);
    CHECK(std::abs(inner(grad, h) - fd) <= 1e-7);
  }
  CHECK(fd_gradient_error(f, spec, 1e-5, 20) <= 1e-8);
}

TEST_CASE("closed-form energies on the standard grid") {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {4.0, 1.0}, {0.5, 2.0}}) {
    CAPTURE(a);
    CAPTURE(b);
    const Grid1D g = make_grid(40.0 / ((a + 2.0 * b) / 4.0), 8193);
    const auto ext = minimize_extrapolated([&](const Grid1D& gg) { return pekar_spec(gg, a, b); }, g);
    CHECK(ext.converged);
    CHECK(std::abs(ext.energy - exact_energy(a, b)) <= 1e-6 * std::abs(exact_energy(a, b)));
    CHECK(l2_norm(ext.fine.minimizer - oracle_minimizer(g, a, b)) <= 1e-4);
    CHECK(ext.fine.lambda == doctest::Approx(oracle::lambda(a, b)).epsilon(1e-4));
    CHECK(ext.fine.energy.total >= exact_energy(a, b) - 1e-4);
  }
}

TEST_CASE("delta well without the quartic term") {
  for (double b : {0.5, 1.0, 2.0}) {
    const Grid1D g = make_grid(80.0 / b, 8193);
    const auto ext = minimize_extrapolated([&](const Grid1D& gg) { return pekar_spec(gg, 0.0, b); }, g);
    CHECK(std::abs(ext.energy + b * b / 4.0) <= 1e-6);
    CHECK(l2_norm(ext.fine.minimizer - oracle_minimizer(g, 0.0, b)) <= 1e-4);
  }
}

TEST_CASE("minimizer is nonnegative, normalized and even") {
  const Grid1D g = make_grid(40.0, 2049);
  const auto r = minimize(pekar_spec(g, 1.0, 1.0));
  CHECK(r.converged);
  CHECK(l2_norm(r.minimizer) == doctest::Approx(1.0).epsilon(1e-12));
  double asym = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(r.minimizer[i] >= 0.0);
    asym = std::max(asym, std::abs(r.minimizer[i] - r.minimizer[g.size() - 1 - i]));
  }
  CHECK(asym < 1e-6);
  for (std::size_t k = 1; k < r.energy_trace.size(); ++k) CHECK(r.energy_trace[k] <= r.energy_trace[k - 1]);
}

TEST_CASE("solver is deterministic") {
  const Grid1D g = make_grid(30.0, 1025);
  const auto a = minimize(pekar_spec(g, 2.0, 0.5));
  const auto b = minimize(pekar_spec(g, 2.0, 0.5));
  CHECK(a.energy.total == b.energy.total);
  CHECK(a.iterations == b.iterations);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(a.minimizer[i] == b.minimizer[i]);
}

TEST_CASE("seed choices converge to the same minimum") {
  const Grid1D g = make_grid(40.0, 2049);
  const auto spec = pekar_spec(g, 1.0, 1.0);
  const double ref = minimize(spec).energy.total;
  for (auto seed : {SeedProfile::kSech, SeedProfile::kExponential}) {
    SolveOptions o;
    o.seed = seed;
    CHECK(minimize(spec, o).energy.total == doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("iteration cap reports non-convergence") {
  SolveOptions o;
  o.max_iter = 2;
  const auto r = minimize(pekar_spec(make_grid(40.0, 1025), 1.0, 1.0), o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 2);
}

TEST_CASE("translation-invariant problem") {
  const Grid1D g = make_grid(40.0, 4097);
  const auto r = minimize(pekar_spec(g, 4.0, 0.0));
  CHECK(r.energy.total == doctest::Approx(-1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("binding inequality") {
  const auto bc = binding_inequality_check({1.0, 1.0, 1e6}, make_grid(40.0, 4097));
  CHECK(bc.gap > 0.0);
  CHECK(bc.gap_bound);
  CHECK(bc.e0 == doctest::Approx(-19.0 / 48.0).epsilon(1e-4));
  CHECK(bc.eT == doctest::Approx(-1.0 / 48.0).epsilon(1e-3));
  CHECK_THROWS_AS(binding_inequality_check({0.0, 1.0, 1e6}, make_grid(40.0, 1025)), std::invalid_argument);
}

TEST_CASE("grid coarsening and H1 distance") {
  CHECK(coarsen(make_grid(5.0, 17)).size() == 9);
  CHECK_THROWS_AS(coarsen(make_grid(5.0, 15)), DiscretizationError);
  const Grid1D g = make_grid(10.0, 2049);
  const GridFn f = GridFn::sample(g, [](double x) { return std::exp(-x * x); });
  const GridFn z(g);
  CHECK(h1_distance(f, f) == 0.0);
  // |f|^2 + |f'|^2 = sqrt(pi/2) (1 + 1)
  CHECK(h1_distance(f, z) == doctest::Approx(std::sqrt(2.0 * std::sqrt(std::numbers::pi / 2.0))).epsilon(1e-5));
}
