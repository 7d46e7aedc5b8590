// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "polaron/asymptotics.hpp"
#include "polaron/effpot.hpp"

using namespace polaron;
using namespace polaron::asymptotics;

TEST_CASE("grid policy follows 1/mu") {
  const GridPolicy p;
  const Grid1D g = p.grid_for(1e12);
  CHECK(g.size() == 4097);
  CHECK(g.half_width() == doctest::Approx(40.0 / effpot::mu(1e12)));
}

TEST_CASE("ladder spec validation") {
  LadderSpec s;
  CHECK_NOTHROW(s.validate());
  s.fields = {1e6, 1e3};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.fields = {10.0, 1e6};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("fit recovers exact synthetic coefficients") {
  std::vector<FitPoint> pts;
  for (double B : {1e6, 1e9, 1e12, 1e18, 1e24, 1e36}) {
    const double l = std::log(B);
    pts.push_back({B, -0.25 * l * l + 1.0 * l * std::log(l) - 0.3 * l});
  }
  const auto f = fit_expansion(pts);
  CHECK(f.a == doctest::Approx(-0.25).epsilon(1e-10));
  CHECK(f.b == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.c == doctest::Approx(-0.3).epsilon(1e-8));
  CHECK(f.residual < 1e-9);
  pts.resize(3);
  CHECK_THROWS_AS(fit_expansion(pts), std::invalid_argument);
}

TEST_CASE("fit of the hydrogen expansion leads with -beta^2/4") {
  std::vector<FitPoint> pts;
  // B is part of the expansion, so fields stay where B - e remains representable
  for (double B : {1e6, 1e7, 1e8, 1e9, 1e10, 1e12}) pts.push_back({B, hydrogenic_expansion(B, 1.0) - B});
  const auto f = fit_expansion(pts);
  CHECK(f.a == doctest::Approx(-0.25).epsilon(0.03));
}

TEST_CASE("classical functional guards") {
  const ModelParams p{1.0, 1.0, 1e6};
  CHECK_THROWS_AS(classical_1d_spec(10.0, p, make_grid(1.0, 1025)), std::invalid_argument);
  CHECK_THROWS(classical_1d_spec(1e6, p, make_grid(40.0, 65)));
  const Grid1D g = GridPolicy{}.grid_for(1e6);
  const auto spec = classical_1d_spec(1e6, p, g);
  CHECK(spec.convolution.has_value());
  CHECK(spec.potential.has_value());
}

TEST_CASE("trial state and variational upper bound") {
  const ModelParams p{1.0, 1.0, 1e9};
  const Grid1D g = GridPolicy{}.grid_for(1e9);
  CHECK(l2_norm(trial_state(1e9, p, g)) == doctest::Approx(1.0).epsilon(1e-6));
  const auto t = trial_upper_bound(1e9, p, g);
  CHECK(t.holds);
  CHECK(t.reference == doctest::Approx(std::pow(effpot::mu(1e9), 2) * (-19.0 / 48.0)));
  CHECK(t.upper == doctest::Approx(t.reference + t.bracket));
}

TEST_CASE("short ladder: sandwich and parallel order") {
  LadderSpec s;
  s.fields = {1e6, 1e12, 1e24, 1e36};
  s.grid_policy.n = 2049;
  const auto pts = ladder_energies(s);
  REQUIRE(pts.size() == 4);
  const double e0 = -19.0 / 48.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(pts[k].B == s.fields[k]);
    CHECK(pts[k].ok);
    CHECK(pts[k].trial >= pts[k].e_eff);
    CHECK(std::abs(pts[k].e_eff - pts[k].mu * pts[k].mu * e0) <= pts[k].bracket);
  }
  for (std::size_t k = 1; k < pts.size(); ++k)
    CHECK(std::abs(pts[k].e_eff / std::pow(pts[k].mu, 2) - e0) < std::abs(pts[k - 1].e_eff / std::pow(pts[k - 1].mu, 2) - e0));
}

TEST_CASE("hydrogenic ladder point sits near -mu^2/4") {
  LadderSpec s;
  s.model = Model::kHydrogenic;
  s.fields = {1e12, 1e18, 1e24, 1e36};
  s.grid_policy.n = 2049;
  const auto pts = ladder_energies(s);
  for (const auto& pt : pts) {
    CHECK(pt.ok);
    CHECK(pt.e_eff / (pt.mu * pt.mu) == doctest::Approx(-0.25).epsilon(0.1));
  }
}
