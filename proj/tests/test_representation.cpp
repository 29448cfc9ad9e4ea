#include <doctest.h>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/representation.hpp"
#include "gen.hpp"

using namespace fuzzcyl;

namespace {
const Interval kUnit = Interval::closed(0, 1);

Eigen::MatrixXcd diag(std::initializer_list<double> v) {
  Eigen::VectorXcd d(v.size());
  int i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}
}  // namespace

TEST_CASE("orbits") {
  auto S = make_family(FamilyKind::Shift, kUnit).at(0.25);
  auto o = build_orbit(S, 0.125);
  REQUIRE(o.size() == 4);
  std::vector<double> want{0.125, 0.375, 0.625, 0.875};
  for (int k = 0; k < 4; ++k) CHECK(o.points[k] == doctest::Approx(want[k]).epsilon(1e-15));
  CHECK_FALSE(o.truncated_minus);
  CHECK_FALSE(o.truncated_plus);
  CHECK(orbit_residual(S, o) == 0.0);

  // commensurate base point picks up the endpoint too
  CHECK(build_orbit(S, 0.0).size() == 5);

  double h = 0.2;
  auto half = make_family(FamilyKind::Shift, Interval::make(0, kInf, true, false)).at(h);
  auto oh = build_orbit(half, h / 2, 32);
  CHECK(oh.n_minus == 0);
  CHECK(oh.truncated_plus);
  CHECK_FALSE(oh.truncated_minus);
  CHECK(oh.size() == 32);

  CHECK_THROWS_AS(build_orbit(S, 1.5), DomainError);
}

TEST_CASE("order-4 matrices") {
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.25);
  auto rep = make_rep(alg->alpha(), 0.125);
  REQUIRE(rep.dim() == 4);
  Eigen::MatrixXcd sub = Eigen::MatrixXcd::Zero(4, 4);
  for (int k = 0; k < 3; ++k) sub(k + 1, k) = 1;
  CHECK((rep.V - sub).norm() == 0.0);
  CHECK((represent(generator_U(alg), rep) - rep.V).norm() == 0.0);
  CHECK((rep.Vstar * rep.V - diag({1, 1, 1, 0})).norm() == 0.0);
  CHECK((represent(projector(alg, -1), rep) - rep.Vstar * rep.V).norm() == 0.0);
  CHECK((represent(projector(alg, 1), rep) - rep.V * rep.Vstar).norm() == 0.0);
  CHECK(rep.V_pow(4).norm() == 0.0);
  CHECK(rep.V_pow(3).norm() != 0.0);

  auto f = polynomial({1, 2}, kUnit, kUnit);
  Eigen::MatrixXcd d = represent(diagonal(alg, f), rep);
  for (int k = 0; k < 4; ++k) CHECK(d(k, k) == f(rep.points[k]));
  CHECK((d - d.diagonal().asDiagonal().toDenseMatrix()).norm() == 0.0);
}

TEST_CASE("homomorphism and star on random pairs") {
  gen::Gen g(17);
  for (double h : {0.25, 0.125, 1.0 / 64}) {
    auto alg = make_cylinder(CylinderKind::Finite, kUnit, h);
    auto rep = make_rep(alg->alpha(), h / 2);
    for (int i = 0; i < 20; ++i) {
      auto x = g.element(alg), y = g.element(alg);
      double r = (represent(x * y, rep) - represent(x, rep) * represent(y, rep)).norm();
      CHECK(r <= 1e-9 * rep.dim());
      CHECK((represent(involution(x), rep) - represent(x, rep).adjoint()).norm() <= 1e-10);
      CHECK((represent(x + y, rep) - represent(x, rep) - represent(y, rep)).norm() <= 1e-13);
    }
  }
}

TEST_CASE("covariance on finite and truncated orbits") {
  gen::Gen g(2);
  auto alg = make_cylinder(CylinderKind::Finite, kUnit, 0.125);
  auto rep = make_rep(alg->alpha(), 0.0625);
  std::vector<SupportedFunction> fs{g.poly(kUnit, kUnit), g.poly(kUnit, kUnit, 3)};
  for (auto& c : covariance_check(alg, rep, fs)) CHECK_MESSAGE(c.pass, c.relation << " " << c.residual);

  auto line = Interval::real_line();
  auto inf = make_cylinder(CylinderKind::Infinite, line, 0.1);
  auto irep = make_rep(inf->alpha(), 0.05, 64);
  REQUIRE(irep.dim() == 64);
  auto smooth = from_real([](double x) { return std::cos(x) + x * x / 10; }, line, line);
  for (auto& c : covariance_check(inf, irep, {smooth})) CHECK_MESSAGE(c.pass, c.relation << " " << c.residual);

  auto pc = make_algebra(make_family(FamilyKind::Poincare, kUnit).at(0.1));
  auto prep = make_rep(pc->alpha(), 0.5);
  for (auto& c : covariance_check(pc, prep, {g.poly(kUnit, kUnit)})) CHECK(c.pass);
}

TEST_CASE("direct sums merge shared points") {
  auto S = make_family(FamilyKind::Shift, kUnit).at(0.25);
  auto a = build_orbit(S, 0.125), b = build_orbit(S, 0.375), c = build_orbit(S, 0.2);
  CHECK(make_rep(S, {a, b}).dim() == 4);
  CHECK(make_rep(S, {a, c}).dim() == 8);
}

TEST_CASE("finite reps are projections of the infinite one") {
  for (int N : {4, 8}) {
    double h = 1.0 / N;
    auto fin = make_rep(make_cylinder(CylinderKind::Finite, kUnit, h)->alpha(), h / 2);
    auto inf = make_rep(make_cylinder(CylinderKind::Infinite, Interval::real_line(), h)->alpha(), h / 2, 4 * N);
    REQUIRE(fin.dim() == N);
    auto pv = project_to(inf.V, inf, fin);
    CHECK((pv - fin.V).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((project_to(inf.Vstar, inf, fin) - fin.Vstar).cwiseAbs().maxCoeff() <= 1e-12);
  }
}
