#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzcyl/check_report.hpp"
#include "fuzzcyl/crossed_product.hpp"

namespace fuzzcyl {

// [A, A*] = hbar C(R^2)
struct CommutatorProfile {
  std::string label;
  RealMap C;
  std::optional<FamilyKind> closed_form;  // built-ins solve for alpha exactly

  static CommutatorProfile plane_plus();
  static CommutatorProfile plane_minus();
  static CommutatorProfile poincare();
  static CommutatorProfile custom(const std::string& expr);
  static CommutatorProfile named(const std::string& name, const std::string& expr = {});
};

// alpha_h from  x + h/2 C(x) = u - h/2 C(u). Built-in profiles use closed
// forms; a custom C is solved by bisection on both sides.
BijectionFamily profile_family(const CommutatorProfile& profile, const Interval& interval);
PartialBijection solve_alpha_from_C(const CommutatorProfile& profile, const Interval& interval, double hbar);

// max |x + h/2 C(x) - u + h/2 C(u)| with x = alpha(u), over a grid of I_{-1}
double x_u_residual(const CommutatorProfile& profile, const PartialBijection& alpha, double hbar, int grid = 101);

// rho : J -> I, a monotone bijection; identity by default
struct Reparametrization {
  Interval J;
  RealMap rho;
  RealMap rho_inv;
  bool increasing = true;
  bool trivial = false;

  static Reparametrization identity(const Interval& I);
};

// rho^{-1} o alpha o rho as a partial bijection of J
PartialBijection conjugate(const PartialBijection& alpha, const Reparametrization& r);

struct TwoGenSetup {
  CommutatorProfile profile;
  double hbar = 0.1;
  Interval I;
  std::optional<Reparametrization> rho;  // identity on I when empty
};

// everything the crossed-product computation produced, in J coordinates
struct TwoGenModel {
  TwoGenSetup setup;
  Reparametrization rho;
  PartialBijection alpha;      // on I
  PartialBijection alpha_rho;  // on J
  AlgebraPtr alg;              // Cyl(J, alpha_rho)
  SupportedFunction phi;       // rho + h/2 C(rho)
  Element A, As, AAs, AsA, commutator, anti_half;

  double C_of_rho(double u) const;
  double rho_at(double u) const { return rho.rho(u); }
};

TwoGenModel build_two_gen(const TwoGenSetup& setup);

// J1\J-1, J1nJ-1, J-1\J1; set differences of intervals can split in two
struct Regions {
  std::vector<Interval> j1_only;
  Interval both;
  std::vector<Interval> jm1_only;
};
Regions regions(const TwoGenModel& m);
std::vector<Interval> difference(const Interval& a, const Interval& b);

struct TwoGenReport {
  std::vector<CheckResult> checks;
  double min_phi = 0.0;
  bool phi_nonneg = true;
  // which sign of the J-1\J1 commutator entry the computation supports:
  // "printed" (-rho + h/2 C), "opposite", or "vacuous"
  std::string jm1_commutator_sign;
  // as computed: which product vanishes on J1\J-1 and J-1\J1
  std::string j1_only_vanishing;
  std::string jm1_only_vanishing;
};

TwoGenReport two_gen_relations(const TwoGenModel& m, double tol = 1e-9, int grid = 101);

// residual of  R^2 o a + h/2 C(R^2) o a - R^2 + h/2 C(R^2)  on I_{-1}
// with R^2 = rho, and again with R^2 read off the crossed product where
// both u and alpha(u) sit in J1nJ-1
std::vector<CheckResult> two_gen_equation_check(const TwoGenModel& m, double tol = 1e-10, int grid = 101);

// [A, g] = A (g - (p1 g) o alpha) for diagonal g
CheckResult commutator_with_diagonal(const TwoGenModel& m, const SupportedFunction& g, double tol = 1e-9);

struct BoundaryReport {
  bool vacuous = true;
  int which = 0;  // 1: J1\J-1 nonempty, 2: J-1\J1 nonempty
  double u0 = 0.0, u1 = 0.0;
  double map_residual = 0.0;  // |u0 - a(u1)| or |u1 - a(u0)|
  double comm_at_u0 = 0.0, anti_at_u0 = 0.0;
  double comm_jump = 0.0, anti_jump = 0.0;  // one-sided limit difference at u1
  bool zero_at_u0 = false;
  bool continuous_at_u1 = false;
  bool iff_holds = false;
  double phi_at_u0 = 0.0;  // rho(u0) + h/2 C(rho(u0))
  bool phi_condition = false;
  std::string detail;
};

BoundaryReport boundary_continuity_check(const TwoGenModel& m, int steps = 30);

struct PoincareConstants {
  double hbar = 0.0;
  double rho0 = 0.0;
  double v = 0.0;
  double alpha_at_0 = 0.0;
  double a_inv = 0.0;  // alpha^{-1}(rho0)
  double alpha_at_1 = 0.0;
  double alpha_at_v = 0.0;
  std::vector<CheckResult> checks;
};

PoincareConstants poincare_constants(double hbar);

}  // namespace fuzzcyl
