#include <doctest.h>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/function_algebra.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

namespace {
const Interval kUnit = Interval::closed(0, 1);
}

TEST_CASE("pointwise products and partial identities") {
  auto S = make_family(FamilyKind::Shift, kUnit).at(0.25);
  auto p1 = partial_identity(power(S, 1).range(), kUnit);
  auto pm1 = partial_identity(power(S, -1).range(), kUnit);
  auto both = multiply(p1, pm1);
  CHECK(both.support() == Interval::closed(0.25, 0.75));
  CHECK(max_abs_diff(both, partial_identity(Interval::closed(0.25, 0.75), kUnit)) == 0.0);

  auto x = polynomial({0, 1}, kUnit, kUnit);
  CHECK(multiply(x, x)(0.3) == cplx(0.09 + 0 * 0.3));
  CHECK(std::abs(multiply(x, x)(0.3) - 0.09) < 1e-16);
  CHECK(max_abs_diff(multiply(x, partial_identity(kUnit, kUnit)), x) == 0.0);

  auto p = partial_identity(Interval::closed(0.25, 1), kUnit);
  CHECK(p(0.5) == cplx(1));
  CHECK(p(0.1) == cplx(0));
}

TEST_CASE("pullback and restrict") {
  auto S = make_family(FamilyKind::Shift, kUnit).at(0.25);
  auto x = polynomial({0, 1}, kUnit, Interval::closed(0, 0.75));
  auto moved = pullback(x, S);
  CHECK(std::abs(moved(0.5) - 0.25) < 1e-15);
  CHECK(moved.support() == Interval::closed(0.25, 1));
  CHECK(moved(0.1) == cplx(0));

  auto pI = partial_identity(S.domain(), kUnit);
  CHECK(max_abs_diff(pullback(pI, S), partial_identity(S.range(), kUnit)) == 0.0);
  CHECK(max_abs_diff(pullback(x, PartialBijection::identity(kUnit)), x) == 0.0);

  // support outside the domain of the map
  CHECK_THROWS_AS(pullback(polynomial({0, 1}, kUnit, kUnit), S), DomainError);

  auto one = constant(1.0, kUnit, kUnit);
  auto r = restrict(one, Interval::closed(0.25, 0.5));
  CHECK(r(0.3) == cplx(1));
  CHECK(r(0.6) == cplx(0));
}

TEST_CASE("grid comparison") {
  auto x = polynomial({0, 1}, kUnit, kUnit);
  CHECK(approx_equal(x, x, 101, 0));
  auto xs = polynomial({1e-6, 1}, kUnit, kUnit);
  CHECK_FALSE(approx_equal(x, xs, 101, 1e-9));
  // 100 points on [0,1] never land on 1/2, so closedness there is invisible
  auto a = partial_identity(Interval::closed(0, 0.5), kUnit);
  auto b = partial_identity(Interval::closed_open(0, 0.5), kUnit);
  CHECK(approx_equal(a, b, 100, 0));
  CHECK_FALSE(approx_equal(a, b, 101, 0));
}

TEST_CASE("flavors") {
  auto step = partial_identity(Interval::closed(0.25, 1), kUnit);
  CHECK_FALSE(flavor_violation(step, Flavor::F));
  CHECK(flavor_violation(step, Flavor::C));
  auto smooth = from_real([](double x) { return x * (1 - x); }, kUnit, kUnit);
  CHECK_FALSE(flavor_violation(smooth, Flavor::C0));
  CHECK(flavor_violation(constant(1.0, kUnit, kUnit), Flavor::C0));
}

TEST_CASE("pullback is multiplicative and respects conjugation") {
  gen::Gen g(21);
  auto a = make_family(FamilyKind::Poincare, kUnit).at(0.1);
  for (int i = 0; i < 50; ++i) {
    auto f = g.poly(kUnit, a.domain()), h = g.poly(kUnit, a.domain());
    auto lhs = pullback(multiply(f, h), a);
    auto rhs = multiply(pullback(f, a), pullback(h, a));
    CHECK(max_abs_diff(lhs, rhs) < 1e-13);
    CHECK(max_abs_diff(pullback(conj(f), a), conj(pullback(f, a))) == 0.0);
    CHECK(max_abs_diff(pullback(pullback(f, a), a.inverted()), f) < 1e-13);
  }
}
