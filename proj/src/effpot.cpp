// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#include "polaron/effpot.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace polaron::effpot {

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

constexpr double kSMax = 9.0;  // e^{-81} tail in u = s^2
constexpr double kQuadTol = 1e-13;
constexpr unsigned kQuadDepth = 18;
const double kEulerGamma = boost::math::constants::euler<double>();

template <class F>
double integrate_s(F f, double split) {
  if (split > 0.0 && split < kSMax) {
    // s = split u^2 smooths the s ln s behaviour of the moment integrands at 0
    auto g = [&](double u) { return 2.0 * split * u * f(split * u * u); };
    return gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, kQuadDepth, kQuadTol) +
           gauss_kronrod<double, 31>::integrate(f, split, kSMax, kQuadDepth, kQuadTol);
  }
  return gauss_kronrod<double, 31>::integrate(f, 0.0, kSMax, kQuadDepth, kQuadTol);
}

void require_field(double B, double min, const char* where) {
  if (!(B > min) || !std::isfinite(B))
    throw std::invalid_argument(std::string(where) + ": field B out of range");
}

void require_finite(double x, const char* where) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(where) + ": non-finite argument");
}

// u-integral of ln(sqrt(1/u + c) + sqrt(1/u)) against e^{-u}; the -ln s part
// of the integrand integrates to gamma/2 in closed form.
double log_u_integral(double c) {
  auto f = [c](double s) { return 2.0 * s * std::exp(-s * s) * std::log(std::sqrt(1.0 + c * s * s) + 1.0); };
  return gauss_kronrod<double, 31>::integrate(f, 0.0, kSMax, kQuadDepth, kQuadTol) + 0.5 * kEulerGamma;
}

struct CellIntegrals {
  std::vector<double> left;   // weight ((c+1) d - x) / d
  std::vector<double> right;  // weight (x - c d) / d
};

// Cells [c d, (c+1) d] on the half line. The cell touching the origin uses the
// exact moments; all others are resolved by Gauss-Legendre on the smooth tail.
CellIntegrals half_line_cells(const EffectivePotential& v, double d, std::size_t ncells) {
  CellIntegrals out;
  out.left.resize(ncells);
  out.right.resize(ncells);
  if (ncells == 0) return out;
  const double f0 = v.moment0(d);
  const double f1 = v.moment1(d);
  out.left[0] = f0 - f1 / d;
  out.right[0] = f1 / d;

  using Rule = gauss<double, 16>;
  const auto& xs = Rule::abscissa();
  const auto& ws = Rule::weights();
  for (std::size_t c = 1; c < ncells; ++c) {
    const double a = static_cast<double>(c) * d;
    const double mid = a + 0.5 * d;
    double il = 0.0, ir = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      for (double sgn : {-1.0, 1.0}) {
        const double t = sgn * xs[k];  // in [-1, 1]
        const double x = mid + 0.5 * d * t;
        const double fx = v.value(x) * ws[k] * 0.5 * d;
        il += fx * 0.5 * (1.0 - t);
        ir += fx * 0.5 * (1.0 + t);
      }
    }
    out.left[c] = il;
    out.right[c] = ir;
  }
  return out;
}

}  // namespace

double v_upper(double B, double x3) {
  require_field(B, 1.0, "v_upper");
  require_finite(x3, "v_upper");
  const double x2 = x3 * x3;
  const double c = 2.0 / B;
  auto f = [x2, c](double s) {
    if (s == 0.0) return x2 == 0.0 ? 2.0 / std::sqrt(c) : 0.0;
    return 2.0 * std::exp(-s * s) / std::sqrt(x2 / (s * s) + c);
  };
  return integrate_s(f, std::abs(x3) * std::sqrt(0.5 * B));
}

double v_lower(double B, double x3) {
  require_field(B, 1.0, "v_lower");
  require_finite(x3, "v_lower");
  return 2.0 / (std::sqrt(2.0 / B + x3 * x3) + std::abs(x3));
}

double self_interaction_kernel(double B, double lag) {
  return v_upper(B, lag / std::sqrt(2.0)) / std::sqrt(2.0);
}

double mu(double B) {
  require_field(B, 1.0, "mu");
  return std::log(B) - 2.0 * std::log(std::log(B));
}

double integral_v_upper(double B, double L) { return 2.0 * UpperPotential(B).moment0(L); }

double integral_v_lower(double B, double L) { return 2.0 * LowerPotential(B).moment0(L); }

namespace {

template <class F>
double integrate_even_by_x(F f, double core, double L) {
  // panel edges core * 4^k up to L
  double total = 0.0;
  double a = 0.0;
  double b = std::min(core, L);
  while (a < L) {
    // unit-interval form keeps the quadrature's error floor relative to the panel
    const double w = b - a;
    auto g = [&](double t) { return w * f(a + w * t); };
    total += gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 12, 1e-13);
    a = b;
    b = std::min(4.0 * b, L);
  }
  return 2.0 * total;
}

}  // namespace

double integral_v_upper_by_x(double B, double L) {
  require_field(B, 1.0, "integral_v_upper_by_x");
  return integrate_even_by_x([B](double x) { return v_upper(B, x); }, 0.1 * std::sqrt(2.0 / B), L);
}

double integral_v_lower_by_x(double B, double L) {
  require_field(B, 1.0, "integral_v_lower_by_x");
  return integrate_even_by_x([B](double x) { return v_lower(B, x); }, 0.1 * std::sqrt(2.0 / B), L);
}

double g_tilde_const(double B, double L) {
  require_field(B, 1.0, "g_tilde_const");
  if (!(L > 0.0)) throw std::invalid_argument("g_tilde_const: L must be > 0");
  const double c = 2.0 / (B * L * L);
  return 2.0 * std::log(L) + 2.0 * log_u_integral(c) - std::log(2.0);
}

double g_const(double B, double L) {
  require_field(B, std::exp(1.0), "g_const");
  return g_tilde_const(B, L) + 2.0 * std::log(std::log(B));
}

double d_const(double B, double L) {
  require_field(B, std::exp(1.0), "d_const");
  if (!(L > 0.0)) throw std::invalid_argument("d_const: L must be > 0");
  const double c = 2.0 / (B * L * L);
  const double r = std::sqrt(1.0 + c);
  return 2.0 * std::log(L) + 2.0 * std::log(std::log(B)) + 2.0 / (r + 1.0) + 2.0 * std::log(r + 1.0) -
         std::log(2.0);
}

UpperPotential::UpperPotential(double B) : B_(B) { require_field(B, 1.0, "UpperPotential"); }

double UpperPotential::value(double x) const { return v_upper(B_, x); }

double UpperPotential::moment0(double x) const {
  require_finite(x, "UpperPotential::moment0");
  const double ax = std::abs(x);
  const double X = ax * std::sqrt(0.5 * B_);
  auto f = [X](double s) {
    if (s == 0.0) return 0.0;
    return 2.0 * s * std::exp(-s * s) * std::asinh(X / s);
  };
  const double v = integrate_s(f, X);
  return x < 0.0 ? -v : v;
}

double UpperPotential::moment1(double x) const {
  require_finite(x, "UpperPotential::moment1");
  const double x2 = x * x;
  const double r = std::sqrt(2.0 / B_);
  auto f = [x2, r](double s) {
    return 2.0 * s * std::exp(-s * s) * x2 / (std::sqrt(x2 + r * r * s * s) + r * s);
  };
  return integrate_s(f, std::abs(x) / r);
}

LowerPotential::LowerPotential(double B) : B_(B) { require_field(B, 1.0, "LowerPotential"); }

double LowerPotential::value(double x) const { return v_lower(B_, x); }

double LowerPotential::moment0(double x) const {
  const double a = std::sqrt(2.0 / B_);
  const double ax = std::abs(x);
  const double v = ax / (std::sqrt(a * a + ax * ax) + ax) + std::asinh(ax / a);
  return x < 0.0 ? -v : v;
}

double LowerPotential::moment1(double x) const {
  const double a = std::sqrt(2.0 / B_);
  const double q = std::abs(x);
  const double p = std::sqrt(a * a + q * q);
  return (2.0 / 3.0) * ((p * p + p * q + q * q) / (p + q) - a);
}

std::vector<double> hat_masses(const EffectivePotential& v, const Grid1D& grid) {
  const std::size_t o = grid.origin();
  const auto cells = half_line_cells(v, grid.spacing(), o);
  std::vector<double> m(grid.size(), 0.0);
  m[o] = 2.0 * cells.left[0];
  for (std::size_t k = 1; k < o; ++k) m[o + k] = cells.right[k - 1] + cells.left[k];
  m[o + o] = cells.right[o - 1];
  for (std::size_t k = 1; k <= o; ++k) m[o - k] = m[o + k];
  return m;
}

std::vector<double> kernel_row(const EffectivePotential& v, const Grid1D& grid) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const auto cells = half_line_cells(v, h / std::sqrt(2.0), n);
  std::vector<double> row(n);
  row[0] = 2.0 * cells.left[0] / h;
  for (std::size_t m = 1; m < n; ++m) row[m] = (cells.right[m - 1] + cells.left[m]) / h;
  return row;
}

ExtractionContext::ExtractionContext(double B, const Grid1D& grid)
    : B_(B), grid_(grid) {
  require_field(B, std::exp(1.0), "ExtractionContext");
  const UpperPotential up(B);
  upper_ = hat_masses(up, grid);
  lower_ = hat_masses(LowerPotential(B), grid);
  self_ = ToeplitzKernel(kernel_row(up, grid), grid.spacing());
}

double ExtractionContext::pair_upper(const GridFn& phi) const {
  require_same_grid(phi.grid(), grid_, "pair_upper");
  double s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += upper_[i] * phi[i] * phi[i];
  return s;
}

double ExtractionContext::pair_lower(const GridFn& phi) const {
  require_same_grid(phi.grid(), grid_, "pair_lower");
  double s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += lower_[i] * phi[i] * phi[i];
  return s;
}

double ExtractionContext::pair_self(const GridFn& phi) const {
  require_same_grid(phi.grid(), grid_, "pair_self");
  std::vector<double> rho(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) rho[i] = phi[i] * phi[i];
  const auto k = self_.apply(rho);
  double s = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += grid_.weight(i) * rho[i] * k[i];
  return s;
}

ExtractionCheck ExtractionContext::check(double L, const GridFn& phi, ExtractionKind which) const {
  if (!(L > 0.0)) throw std::invalid_argument("delta_extraction_check: L must be > 0");
  if (grid_.spacing() > L / 8.0)
    throw DiscretizationError("delta_extraction_check: spacing exceeds L/8, derivative norm unreliable");
  const double n2 = l2_norm(phi);
  const double d = derivative_norm(phi);
  const double m = mu(B_);
  const double phi0 = phi[grid_.origin()];
  ExtractionCheck r;
  switch (which) {
    case ExtractionKind::kUpper:
      r.lhs = std::abs(pair_upper(phi) - m * phi0 * phi0);
      r.rhs = n2 * n2 / L + 8.0 * std::sqrt(L) * std::pow(d, 1.5) * std::sqrt(n2) +
              std::abs(g_const(B_, L)) * d * n2;
      break;
    case ExtractionKind::kLower:
      r.lhs = std::abs(pair_lower(phi) - m * phi0 * phi0);
      r.rhs = n2 * n2 / L + 8.0 * std::sqrt(L) * std::pow(d, 1.5) * std::sqrt(n2) +
              std::abs(d_const(B_, L)) * d * n2;
      break;
    case ExtractionKind::kConvolution:
      r.lhs = std::abs(pair_self(phi) - m * lp_norm_pow(phi, 4.0));
      r.rhs = std::pow(n2, 4) / L + 8.0 * std::sqrt(L) * std::pow(d, 1.5) * std::pow(n2, 2.5) +
              std::abs(g_const(B_, L / std::sqrt(2.0))) * d * std::pow(n2, 3);
      break;
  }
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
  return r;
}

ExtractionCheck delta_extraction_check(double B, double L, const GridFn& phi, ExtractionKind which) {
  return ExtractionContext(B, phi.grid()).check(L, phi, which);
}

}  // namespace polaron::effpot
