#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/star_product.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

namespace {
const Interval kUnit = Interval::closed(0, 1);

std::vector<double> phis() {
  std::vector<double> v;
  for (int k = 0; k < 12; ++k) v.push_back(-std::numbers::pi + k * std::numbers::pi / 6);
  return v;
}

double cyl_diff(const CylinderFunction& a, const CylinderFunction& b, const std::vector<double>& xs) {
  double m = 0;
  for (double x : xs)
    for (double p : phis()) m = std::max(m, std::abs(a(x, p) - b(x, p)));
  return m;
}
}  // namespace

TEST_CASE("psi and its inverse") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto pU = psi(generator_U(alg));
  for (double x : {0.1, 0.3, 0.9})
    for (double p : phis()) CHECK(std::abs(pU(x, p) - (x >= 0.25 ? std::polar(1.0, p) : 0.0)) < 1e-15);

  auto d = psi(diagonal(alg, polynomial({1, 1}, kUnit, kUnit)));
  CHECK(d(0.4, 0.0) == d(0.4, 2.0));

  gen::Gen g(6);
  for (int i = 0; i < 10; ++i) {
    auto x = g.element(alg, 3, 3);
    auto back = psi_inv(psi(x), 3);
    CHECK(residual(back, x) < 1e-13);
  }
  // a frequency past the cutoff is reported
  auto x3 = Element::single(alg, 3, polynomial({1}, kUnit, alg->I(3)));
  CHECK_THROWS_AS(psi_inv(psi(x3), 1), AliasingError);
}

TEST_CASE("star products") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto xs = sample_grid(kUnit, 41);
  auto f = psi(diagonal(alg, polynomial({1, 2}, kUnit, kUnit)));
  auto g = psi(diagonal(alg, polynomial({0, 0, 3}, kUnit, kUnit)));
  CHECK(cyl_diff(star(f, g), pointwise(f, g), xs) == 0.0);

  auto uu = star(psi(generator_U(alg)), psi(generator_U_star(alg)));
  CHECK(cyl_diff(uu, psi(projector(alg, 1)), xs) <= 1e-15);
  CHECK(uu.max_abs_n() == 0);

  gen::Gen r(13);
  for (int i = 0; i < 10; ++i) {
    auto a = psi(r.element(alg)), b = psi(r.element(alg)), c = psi(r.element(alg));
    CHECK(cyl_diff(star(star(a, b), c), star(a, star(b, c)), xs) <= 1e-9);
  }
}

TEST_CASE("poisson bracket") {
  auto line = Interval::real_line();
  auto alg = make_cylinder(CylinderKind::Infinite, line, 0.1);
  auto fam = make_family(FamilyKind::Shift, line);
  auto beta = PoissonCoefficient::of(fam);
  Coefficients fc{{1, polynomial({0, 1}, line, line)}};  // x e^{i phi}
  Coefficients gc{{0, polynomial({0, 1}, line, line)}};  // x
  auto f = on_cylinder(alg, fc), g = on_cylinder(alg, gc);
  auto br = poisson_bracket(f, g, beta);
  // by hand: d_x f d_phi g - d_phi f d_x g = 0 - i x e^{i phi} . 1
  for (double x : {-1.0, 0.3, 2.0})
    for (double p : phis()) CHECK(std::abs(br(x, p) - cplx(0, -1) * x * std::polar(1.0, p)) < 1e-10);

  auto xs = sample_grid(Interval::closed(-2, 2), 21);
  CHECK(cyl_diff(poisson_bracket(f, f, beta), scale(f, 0.0), xs) == 0.0);

  gen::Gen r(1);
  Coefficients hc{{-1, r.poly(line, line)}, {2, r.poly(line, line)}};
  auto h = on_cylinder(alg, hc);
  auto lhs = poisson_bracket(f, pointwise(g, h), beta);
  auto rhs = add(pointwise(poisson_bracket(f, g, beta), h), pointwise(g, poisson_bracket(f, h, beta)));
  CHECK(cyl_diff(lhs, rhs, xs) < 1e-8);
}

TEST_CASE("first order term: the sign") {
  // f = e^{i phi}, g = x on the shift family. f*g - fg = -h e^{i phi} exactly, so
  // (f*g - fg)/h = -e^{i phi} = +i beta d_phi f d_x g.
  auto line = Interval::real_line();
  auto alg = make_cylinder(CylinderKind::Infinite, line, 0.1);
  auto beta = PoissonCoefficient::of(make_family(FamilyKind::Shift, line));
  auto f = on_cylinder(alg, {{1, constant(1.0, line, line)}});
  auto g = on_cylinder(alg, {{0, polynomial({0, 1}, line, line)}});
  auto xs = sample_grid(Interval::closed(-1, 1), 11);
  CHECK(first_order_residual(f, g, beta, 0.1, +1.0, xs, phis()) < 1e-12);
  // the other sign leaves an O(1) residual of exactly 2
  CHECK(first_order_residual(f, g, beta, 0.1, -1.0, xs, phis()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("classical limit") {
  Interval line = kUnit;
  std::vector<double> hs{1e-1, 1e-2, 1e-3};
  auto shift = make_family(FamilyKind::Shift, kUnit);
  Coefficients eiphi{{1, constant(1.0, line, line)}};
  Coefficients x{{0, polynomial({0, 1}, line, line)}};
  Coefficients x2{{0, polynomial({0, 0, 1}, line, line)}};

  // e^{i phi} and x: no second order term at all
  auto exact = classical_limit_check(eiphi, x, shift, hs);
  CHECK(exact.pass);
  CHECK(exact.exact);

  // e^{i phi} and x^2: R = h exactly
  auto r = classical_limit_check(eiphi, x2, shift, hs);
  CHECK(r.pass);
  REQUIRE(r.order);
  CHECK(*r.order == doctest::Approx(1.0).epsilon(1e-6));
  for (auto& row : r.rows) CHECK(row.residual == doctest::Approx(row.hbar).epsilon(1e-6));
  CHECK(r.rows.back().commutator_error <= 0.1);

  auto pc = make_family(FamilyKind::Poincare, kUnit);
  auto rp = classical_limit_check(eiphi, x2, pc, hs);
  CHECK(rp.pass);
  REQUIRE(rp.order);
  CHECK(*rp.order >= 0.9);
  CHECK(*rp.order <= 1.1);
  CHECK(rp.rows.back().commutator_error <= 0.1);

  // measured on a grid that moves with h, the poincare slope is polluted by
  // the part of the support each row happens to see
  LimitOptions moving;
  moving.common_grid = false;
  auto rm = classical_limit_check(eiphi, x2, pc, hs, moving);
  REQUIRE(rm.order);
  CHECK(*rm.order < 0.9);

  // same check fed by a finite-difference beta
  LimitOptions fd;
  fd.beta = PoissonCoefficient::finite_difference(pc);
  CHECK(classical_limit_check(eiphi, x2, pc, hs, fd).pass);

  // phi independent pair
  auto flat = classical_limit_check(x, x2, shift, hs);
  CHECK(flat.exact);
  for (auto& row : flat.rows) CHECK(row.residual == 0.0);

  CHECK_THROWS_AS(classical_limit_check(eiphi, x2, shift, {1e-3, 1e-2}), DomainError);
}

TEST_CASE("beta against the commutator profile") {
  auto pc = make_family(FamilyKind::Poincare, kUnit);
  auto fd = PoissonCoefficient::finite_difference(pc, 1e-4);
  for (double u : sample_grid(Interval::closed(0, 0.95), 20)) {
    double C = 0.5 * (1 - u) * (1 - u);
    CHECK(fd.beta(u) == doctest::Approx(-C).epsilon(0.05));
  }
}
