#include <doctest.h>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/interval.hpp"
#include "fuzzcyl/partial_bijection.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

TEST_CASE("contains respects closedness and tolerance") {
  CHECK(Interval::closed(0, 1).contains(0.5));
  CHECK_FALSE(Interval::closed_open(0, 1).contains(1.0));
  CHECK(Interval::closed(0, 1).contains(1 + 1e-13, 1e-12));
  CHECK_FALSE(Interval::closed(0, 1).contains(1 + 1e-11, 1e-12));
  CHECK_FALSE(Interval::empty().contains(0.0, 1.0));
  CHECK(Interval::real_line().contains(1e300));
}

TEST_CASE("intersect examples") {
  CHECK(intersect(Interval::closed(0, 0.75), Interval::closed(0.25, 1)) == Interval::closed(0.25, 0.75));
  CHECK(intersect(Interval::closed(0, 1), Interval::empty()).is_empty());
  CHECK(intersect(Interval::closed_open(0, 1), Interval::open_closed(1, 2)).is_empty());
  CHECK(intersect(Interval::closed(0, 1), Interval::closed(1, 2)) == Interval::point(1));
}

TEST_CASE("image under monotone maps") {
  MonotoneMap shift{[](double x) { return x + 0.25; }, true, {}, {}};
  CHECK(image_monotone(Interval::closed(0, 1), shift) == Interval::closed(0.25, 1.25));
  MonotoneMap refl{[](double x) { return -x; }, false, {}, {}};
  CHECK(image_monotone(Interval::closed(0, 1), refl) == Interval::closed(-1, 0));
  CHECK(image_monotone(Interval::closed_open(0, 1), refl) == Interval::open_closed(-1, 0));

  MonotoneMap pc{[](double u) { return poincare_alpha(0.1, u); }, true, {}, {}};
  auto im = image_monotone(Interval::closed(0, 1), pc);
  CHECK(im.lo() == doctest::Approx(-0.0527046785035833).epsilon(1e-12));
  CHECK(im.hi() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(im.lo() + 0.05) < 0.01);

  MonotoneMap bad{[](double x) { return std::sin(8 * x); }, true, {}, {}};
  CHECK_THROWS_AS(image_monotone(Interval::closed(0, 3), bad), MonotonicityError);
}

TEST_CASE("parse round trip and errors") {
  CHECK(Interval::parse("[0,1)") == Interval::closed_open(0, 1));
  CHECK(Interval::parse("(-inf, 2]") == Interval::make(-kInf, 2, false, true));
  CHECK(Interval::parse("[0,inf)").hi_infinite());
  CHECK_THROWS_AS(Interval::parse("[0;1]"), ParseError);
  CHECK_THROWS_AS(Interval::parse("0,1"), ParseError);
}

TEST_CASE("intersection laws on random intervals") {
  gen::Gen g(11);
  for (int i = 0; i < 400; ++i) {
    Interval a = g.interval(), b = g.interval(), c = g.interval();
    CHECK(intersect(a, b) == intersect(b, a));
    CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    CHECK(intersect(a, a) == a);
    Interval h = hull(a, b);
    CHECK(a.is_subset_of(h));
    CHECK(b.is_subset_of(h));
    for (int k = 0; k < 5; ++k) {
      double x = g.integer(-10, 10) / 4.0 + (g.coin() ? 0.0 : g.uniform(-0.2, 0.2));
      CHECK(intersect(a, b).contains(x) == (a.contains(x) && b.contains(x)));
    }
  }
}

TEST_CASE("sample grid stays inside and uses the window on infinite sides") {
  auto pts = sample_grid(Interval::closed(0, 1), 5);
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == 0.0);
  CHECK(pts.back() == 1.0);
  auto half = sample_grid(Interval::make(0, kInf, true, false), 17);
  CHECK(half.front() == 0.0);
  CHECK(half.back() <= 8.0);
  CHECK(shrink(Interval::closed(0, 1), 0.25) == Interval::closed(0.25, 0.75));
}
