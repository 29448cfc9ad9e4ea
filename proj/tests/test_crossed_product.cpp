#include <doctest.h>

#include "fuzzcyl/crossed_product.hpp"
#include "fuzzcyl/error.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

namespace {
const Interval kUnit = Interval::closed(0, 1);
const Interval kHalf = Interval::make(0, kInf, true, false);
}

TEST_CASE("finite, half finite and infinite cylinders") {
  auto fin = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  REQUIRE(fin->order_N());
  CHECK(*fin->order_N() == 5);
  CHECK(fin->I(4) == Interval::point(1));
  CHECK(fin->I(-4) == Interval::point(0));
  for (int n : {5, 6, -5, -6}) CHECK(fin->I(n).is_empty());
  CHECK(*fin->empty_index() == 5);

  double h = 0.3;
  auto half = make_cylinder(CylinderKind::HalfFinite, kHalf, h);
  CHECK(half->I(3).lo() == doctest::Approx(3 * h));
  CHECK(half->I(3).hi_infinite());
  CHECK(half->I(-3) == kHalf);
  CHECK_FALSE(half->empty_index(64));

  auto inf = make_cylinder(CylinderKind::Infinite, Interval::real_line(), h);
  for (int n : {-7, 0, 9}) CHECK(inf->I(n) == Interval::real_line());

  CHECK_THROWS_AS(make_cylinder(CylinderKind::Finite, kUnit, 0.0), DomainError);
  CHECK_THROWS_AS(make_cylinder(CylinderKind::Finite, kUnit, -1.0), DomainError);
  CHECK_THROWS_AS(make_cylinder(CylinderKind::HalfFinite, kUnit, 0.1), DomainError);
}

TEST_CASE("generator products") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto U = generator_U(alg), Us = generator_U_star(alg);
  CHECK(residual(U * Us, projector(alg, 1)) == 0.0);
  CHECK(residual(Us * U, projector(alg, -1)) == 0.0);
  CHECK(residual(involution(U), Us) == 0.0);
  CHECK(residual(U * Us * U, U) == 0.0);

  auto f = polynomial({1, 2}, kUnit, kUnit), g = polynomial({0, 0, 1}, kUnit, kUnit);
  CHECK(residual(diagonal(alg, f) * diagonal(alg, g), diagonal(alg, multiply(f, g))) == 0.0);
  CHECK(residual(involution(diagonal(alg, polynomial({cplx(0, 1)}, kUnit, kUnit))),
                 diagonal(alg, polynomial({cplx(0, -1)}, kUnit, kUnit))) == 0.0);

  auto alg4 = make_cylinder(CylinderKind::Finite, kUnit, 1.0 / 4.5);
  CHECK(*alg4->order_N() == 5);
  auto alg_n4 = make_cylinder(CylinderKind::Finite, kUnit, 1.0 / 3.5);
  REQUIRE(*alg_n4->order_N() == 4);
  CHECK(power(generator_U(alg_n4), 4).is_zero());
  CHECK_FALSE(power(generator_U(alg_n4), 3).is_zero());
  CHECK(*u_nilpotency(alg_n4) == 4);
  CHECK(*u_nilpotency(alg) == 5);
}

TEST_CASE("U f = ((p_-1 f) o alpha^-1) U on the order-N cylinder") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto f = polynomial({0.5, -1, 3}, kUnit, kUnit);
  auto lhs = generator_U(alg) * diagonal(alg, f);
  for (double x : sample_grid(kUnit, 101)) {
    cplx want = (x >= 0.25 && x - 0.25 <= 0.75) ? f(x - 0.25) : 0.0;
    CHECK(std::abs(lhs.eval(1, x) - want) < 1e-15);
  }
  auto checks = u_relations_check(alg, {f, polynomial({cplx(0, 1), 2}, kUnit, kUnit)});
  for (auto& c : checks) CHECK_MESSAGE(c.pass, c.relation << " " << c.residual);

  auto inf = make_cylinder(CylinderKind::Infinite, Interval::real_line(), 0.25);
  auto one = diagonal(inf, constant(1.0, Interval::real_line(), Interval::real_line()));
  CHECK(residual(generator_U(inf) * generator_U_star(inf), one) == 0.0);
  CHECK(residual(generator_U_star(inf) * generator_U(inf), one) == 0.0);
}

TEST_CASE("terms outside their ideal") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto f = polynomial({1}, kUnit, kUnit);
  CHECK_THROWS_AS(Element::single(alg, 1, f, TermMode::Strict), DomainError);
  auto clipped = Element::single(alg, 1, f);
  CHECK(clipped.term(1).support() == Interval::closed(0.25, 1));
  CHECK(supports_sound(clipped));

  auto other = make_cylinder(CylinderKind::Finite, kUnit, 0.125);
  CHECK_THROWS_AS(generator_U(alg) * generator_U(other), GeneratorMismatch);
}

TEST_CASE("algebra axioms on random elements") {
  gen::Gen g(3);
  std::vector<AlgebraPtr> algs{
      make_cylinder(CylinderKind::Finite, kUnit, 0.25),
      make_cylinder(CylinderKind::HalfFinite, kHalf, 0.2),
      make_cylinder(CylinderKind::Infinite, Interval::real_line(), 0.3),
      make_algebra(make_family(FamilyKind::Poincare, kUnit).at(0.1)),
  };
  for (auto& alg : algs) {
    for (int i = 0; i < 15; ++i) {
      auto x = g.element(alg), y = g.element(alg), z = g.element(alg);
      CHECK(residual((x * y) * z, x * (y * z)) < 1e-9);
      CHECK(residual(involution(x * y), involution(y) * involution(x)) < 1e-9);
      CHECK(residual(involution(involution(x)), x) < 1e-12);
      CHECK(residual(x * (y + z), x * y + x * z) < 1e-9);
      CHECK(supports_sound(x * y));
    }
  }
}

TEST_CASE("the inverse map gives the same algebra") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto inv = make_algebra(alg->alpha().inverted());
  CHECK(equal_as_cyl(generator_U(alg), generator_U_star(inv)).pass);
  CHECK_FALSE(equal_as_cyl(generator_U(alg), generator_U(inv)).pass);
  // a second element of the same algebra is not a presentation over the inverse
  CHECK_FALSE(equal_as_cyl(generator_U(alg), generator_U(alg)).pass);
  gen::Gen g(8);
  for (int i = 0; i < 10; ++i) {
    auto x = g.element(alg, 2);
    CHECK(equal_as_cyl(x, reindex(x, inv)).pass);
    CHECK(residual(reindex(reindex(x, inv), alg), x) == 0.0);
    auto y = g.element(alg, 2);
    CHECK(residual(reindex(x * y, inv), reindex(x, inv) * reindex(y, inv)) < 1e-12);
    CHECK(residual(reindex(involution(x), inv), involution(reindex(x, inv))) < 1e-12);
  }
  auto d = diagonal(alg, polynomial({1, 1}, kUnit, kUnit));
  CHECK(equal_as_cyl(d, diagonal(inv, polynomial({1, 1}, kUnit, kUnit))).pass);
}

TEST_CASE("fixed points form a commuting subalgebra") {
  FamilyParams p;
  p.forward_expr = "x + h*max(0,x-1/2) - h*max(0,1/4-x)";
  p.inverse_expr = "x - h*max(0,x-1/2)/(1+h) + h*max(0,1/4-x)/(1+h)";
  auto alg = make_algebra(make_family(FamilyKind::Custom, kUnit, p).at(0.2));
  Interval S = Interval::closed(0.25, 0.5);
  gen::Gen g(4);
  std::vector<Element> elems;
  for (int i = 0; i < 4; ++i) {
    Element e(alg);
    for (int n = -2; n <= 2; ++n) e = e + Element::single(alg, n, g.poly(kUnit, S));
    elems.push_back(e);
  }
  CHECK(fixed_point_subalgebra_check(alg, S, elems).pass);
  CHECK(fixed_point_subalgebra_check(alg, Interval::empty(), {}).pass);
  auto shift = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  CHECK_FALSE(fixed_point_subalgebra_check(shift, S, {}).pass);
}
