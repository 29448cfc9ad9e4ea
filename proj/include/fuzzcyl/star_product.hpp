#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzcyl/check_report.hpp"
#include "fuzzcyl/crossed_product.hpp"

namespace fuzzcyl {

// f(x, phi) = sum_n f_n(x) e^{i n phi}
struct CylinderFunction {
  AlgebraPtr alg;
  std::map<int, SupportedFunction> coeffs;

  cplx operator()(double x, double phi) const;
  int max_abs_n() const;
};

CylinderFunction psi(const Element& x);

// trapezoidal rule with K = 4 max_n + 1 nodes; frequencies in
// (max_n, 2 max_n] are measured on a grid and must stay below alias_tol
Element psi_inv(const CylinderFunction& f, int max_n, double alias_tol = 1e-9, const GridOptions& opt = {});

// Psi(Psi^{-1} f . Psi^{-1} g)
CylinderFunction star(const CylinderFunction& f, const CylinderFunction& g);

// plain pointwise product on the cylinder
CylinderFunction pointwise(const CylinderFunction& f, const CylinderFunction& g);

CylinderFunction add(const CylinderFunction& f, const CylinderFunction& g);
CylinderFunction scale(const CylinderFunction& f, cplx c);

// beta(x) = d alpha_h(x)/dh at h = 0
struct PoissonCoefficient {
  RealMap beta;
  static PoissonCoefficient of(const BijectionFamily& family);
  // centered difference in hbar, independent of any closed form
  static PoissonCoefficient finite_difference(const BijectionFamily& family, double step = 1e-4);
};

// beta (d_x f d_phi g - d_phi f d_x g)
CylinderFunction poisson_bracket(const CylinderFunction& f, const CylinderFunction& g, const PoissonCoefficient& beta);

// i n f_n, i.e. d/dphi on the Fourier side
CylinderFunction d_phi(const CylinderFunction& f);
CylinderFunction d_x(const CylinderFunction& f);

using Coefficients = std::map<int, SupportedFunction>;

// the same hbar-independent coefficients seen in one cylinder, clipped to I_n
CylinderFunction on_cylinder(const AlgebraPtr& alg, const Coefficients& c);

struct LimitRow {
  double hbar = 0.0;
  double residual = 0.0;
  double commutator_error = 0.0;  // relative, against the bracket
};

struct LimitReport {
  std::vector<LimitRow> rows;
  std::optional<double> order;  // empty when every residual is zero
  bool exact = false;
  bool pass = false;
  std::string detail;
};

struct LimitOptions {
  int x_points = 41;
  int phi_points = 16;
  double margin_factor = 2.0;  // interior margin, in units of hbar
  bool common_grid = true;     // every row on the grid of the largest hbar
  double min_order = 0.9;
  double max_order = 1.1;
  std::optional<PoissonCoefficient> beta;  // default: the family's
};

// R(h) = max |(f*g - fg)/h - i beta d_phi f d_x g| on interior grids, plus a
// log-log fit of R against h
LimitReport classical_limit_check(const Coefficients& f, const Coefficients& g, const BijectionFamily& family,
                                  const std::vector<double>& hbars, const LimitOptions& opt = {});

// the first-order term as written with the opposite sign, kept for comparison
double first_order_residual(const CylinderFunction& f, const CylinderFunction& g, const PoissonCoefficient& beta,
                            double hbar, double sign, const std::vector<double>& xs, const std::vector<double>& phis);

// interior grid of the common support of all coefficients
std::vector<double> interior_grid(const Coefficients& f, const Coefficients& g, const Interval& carrier, double margin,
                                  int points, const Interval& window = Interval::closed(-8.0, 8.0));

}  // namespace fuzzcyl
