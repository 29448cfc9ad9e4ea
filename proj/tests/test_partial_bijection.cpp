#include <doctest.h>

#include <cmath>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/finite_oracle.hpp"
#include "fuzzcyl/partial_bijection.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

namespace {

const Interval kUnit = Interval::closed(0, 1);

double grid_diff(const PartialBijection& a, const PartialBijection& b) {
  double m = 0;
  for (double x : sample_grid(a.domain(), 101)) m = std::max(m, std::abs(a.forward(x) - b.forward(x)));
  return m;
}

}  // namespace

TEST_CASE("shift composition and powers") {
  auto S = make_family(FamilyKind::Shift, kUnit).at(0.25);
  auto SS = compose(S, S);
  CHECK(SS.domain() == Interval::closed(0, 0.5));
  CHECK(SS.range() == Interval::closed(0.5, 1));
  auto P2 = power(S, 2);
  CHECK(P2.domain() == Interval::closed(0, 0.5));
  CHECK(P2.range() == Interval::closed(0.5, 1));
  CHECK(power(S, 0).is_identity_map());
  CHECK(power(S, 0).domain() == kUnit);
  CHECK(power(S, 5).is_empty());
  CHECK(power(S, 4).range() == Interval::point(1));
  CHECK(power(S, -4).range() == Interval::point(0));

  auto id = PartialBijection::identity(kUnit);
  auto idS = compose(id, S);
  CHECK(idS.domain() == S.domain());
  CHECK(idS.range() == S.range());
  CHECK(grid_diff(idS, S) == 0.0);

  auto back = compose(S, S.inverted());
  CHECK(back.domain() == S.range());
  CHECK(back.range() == S.range());
  CHECK(grid_diff(back, PartialBijection::identity(kUnit)) < 1e-15);
}

TEST_CASE("restricted shift action") {
  auto r = restricted_shift_action(kUnit, 0.25, -2);
  CHECK(r.domain() == Interval::closed(0.5, 1));
  CHECK(r.range() == Interval::closed(0, 0.5));
  auto half = restricted_shift_action(Interval::make(0, kInf, true, false), 0.3, 3);
  CHECK(half.domain() == Interval::make(0, kInf, true, false));
  CHECK(half.range().lo() == doctest::Approx(0.9));
  CHECK(half.range().hi_infinite());
  auto line = restricted_shift_action(Interval::real_line(), 0.3, -7);
  CHECK(line.domain() == Interval::real_line());
  CHECK(line.range() == Interval::real_line());
}

TEST_CASE("canonical triples") {
  CHECK(canonicalize({1, -1}) == SemigroupElement{1, 0, 0});
  CHECK(canonicalize({3}) == SemigroupElement{3, 0, 3});
  CHECK(canonicalize({-1, 1}) == SemigroupElement{0, -1, 0});
  CHECK(canonicalize({}) == SemigroupElement{});

  auto S = make_family(FamilyKind::Shift, kUnit).at(0.125);
  std::vector<int> w{2, -3, 1};
  auto direct = compose_word(w, S);
  auto via = to_bijection(canonicalize(w), S);
  CHECK(direct.domain().approx_equal(via.domain(), 1e-12));
  CHECK(direct.range().approx_equal(via.range(), 1e-12));
  CHECK(grid_diff(direct, via) < 1e-12);

  // the same word on the exact oracle
  auto fa = oracle::FinitePartialBijection::shift(8);
  CHECK(oracle::compose_word(w, fa) == oracle::bijection_of(oracle::key_of_word(w), fa));
}

TEST_CASE("semigroup product against word concatenation") {
  gen::Gen g(5);
  for (int i = 0; i < 300; ++i) {
    auto a = g.word(g.integer(0, 4), 3), b = g.word(g.integer(0, 4), 3);
    auto ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    auto s = canonicalize(a), t = canonicalize(b);
    CHECK(s.valid());
    CHECK(s * t == canonicalize(ab));
    CHECK((s * t).star() == t.star() * s.star());
    CHECK(s * s.star() * s == s);
    CHECK(s.star().star() == s);
  }
}

TEST_CASE("partial action laws on the shift and poincare families") {
  gen::Gen g(9);
  for (auto kind : {FamilyKind::Shift, FamilyKind::Poincare}) {
    auto a = make_family(kind, kUnit).at(kind == FamilyKind::Shift ? 0.125 : 0.1);
    for (int i = 0; i < 30; ++i) {
      int n = g.integer(-4, 4), m = g.integer(-4, 4);
      auto nm = compose(power(a, n), power(a, m));
      auto whole = power(a, n + m);
      // alpha^n alpha^m is a restriction of alpha^{n+m}
      CHECK(nm.domain().is_subset_of(whole.domain(), 1e-12));
      for (double x : sample_grid(nm.domain(), 21)) CHECK(std::abs(nm.forward(x) - whole.forward(x)) < 1e-12);
      // idempotents commute
      auto en = compose(power(a, n), power(a, -n)), em = compose(power(a, m), power(a, -m));
      CHECK(compose(en, em).domain().approx_equal(compose(em, en).domain(), 1e-12));
    }
    for (int n = 1; n < 8; ++n) {
      CHECK(power(a, n + 1).range().is_subset_of(power(a, n).range(), 1e-12));
      CHECK(power(a, -n - 1).range().is_subset_of(power(a, -n).range(), 1e-12));
      CHECK(power(a, n).range().approx_equal(power_range_closed_form(a, n), 1e-12));
    }
  }
}

TEST_CASE("poincare closed form") {
  for (double h : {0.2, 0.1, 0.05, 0.01}) {
    CHECK(std::abs(poincare_alpha(h, 1.0) - 1.0) < 1e-9);
    CHECK(std::abs(poincare_alpha(h, 0.0) + h / 2) <= h * h);
    for (double u : sample_grid(kUnit, 21)) CHECK(std::abs(poincare_alpha_inv(h, poincare_alpha(h, u)) - u) < 1e-12);
  }
  // by hand at h = 0.1: 1 - 20 + 10 sqrt(4 - 0.4 - 0.01)/... evaluated to 15 digits
  CHECK(poincare_alpha(0.1, 0.0) == doctest::Approx(-0.0527046785035833).epsilon(1e-13));
  CHECK_THROWS_AS(make_family(FamilyKind::Poincare, kUnit).at(0.9), DomainError);
  auto a = make_family(FamilyKind::Poincare, kUnit).at(0.1);
  double prev = -1;
  for (double u : sample_grid(a.domain(), 101)) {
    CHECK(a.forward(u) > prev);
    prev = a.forward(u);
  }
}

TEST_CASE("family derivatives by finite differences") {
  double h = 1e-3;
  auto pm = make_family(FamilyKind::PlaneMinus, Interval::make(0, kInf, true, false));
  auto pp = make_family(FamilyKind::PlanePlus, Interval::make(0, kInf, true, false));
  auto pc = make_family(FamilyKind::Poincare, kUnit);
  for (double u : sample_grid(Interval::closed(0.05, 0.95), 19)) {
    CHECK((pp.forward_at(h, u) - u) / h == doctest::Approx(-1.0).epsilon(0.05));
    // plane_minus moves up; see the notes on the sign
    CHECK((pm.forward_at(h, u) - u) / h == doctest::Approx(1.0).epsilon(0.05));
    double want = -(1 - u) * (1 - u) / 2;
    CHECK((pc.forward_at(h, u) - u) / h == doctest::Approx(want).epsilon(0.05));
    CHECK(pc.beta(u) == doctest::Approx(want).epsilon(1e-6));
  }
  CHECK(make_family(FamilyKind::Shift, kUnit).at(0.0).roundtrip_residual() == 0.0);
}

TEST_CASE("conjugation keeps fixed points") {
  FamilyParams p;
  p.forward_expr = "x + h*max(0,x-1/2) - h*max(0,1/4-x)";
  p.inverse_expr = "x - h*max(0,x-1/2)/(1+h) + h*max(0,1/4-x)/(1+h)";
  auto a = make_family(FamilyKind::Custom, kUnit, p).at(0.2);
  // beta(x) = x^3 + x, alpha conjugated
  auto b = [](double x) { return x * x * x + x; };
  for (double x : sample_grid(Interval::closed(0.25, 0.5), 11)) {
    CHECK(a.forward(x) == doctest::Approx(x));
    // beta alpha beta^{-1} at beta(x) is beta(alpha(x)) = beta(x)
    CHECK(b(a.forward(x)) == doctest::Approx(b(x)));
  }
  CHECK(a.roundtrip_residual() < 1e-14);
}
