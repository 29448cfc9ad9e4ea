#include "fuzzcyl/subalgebra.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/expression.hpp"

namespace fuzzcyl {

CommutatorProfile CommutatorProfile::plane_plus() {
  return {"plane_plus", [](double) { return 1.0; }, FamilyKind::PlanePlus};
}

CommutatorProfile CommutatorProfile::plane_minus() {
  return {"plane_minus", [](double) { return -1.0; }, FamilyKind::PlaneMinus};
}

CommutatorProfile CommutatorProfile::poincare() {
  return {"poincare", [](double u) { return 0.5 * (1.0 - u) * (1.0 - u); }, FamilyKind::Poincare};
}

CommutatorProfile CommutatorProfile::custom(const std::string& expr) {
  auto e = Expression::parse(expr);
  return {"custom:" + expr, [e](double u) { return e(u); }, std::nullopt};
}

CommutatorProfile CommutatorProfile::named(const std::string& name, const std::string& expr) {
  if (name == "plane_plus") return plane_plus();
  if (name == "plane_minus") return plane_minus();
  if (name == "poincare") return poincare();
  if (name == "custom") {
    if (expr.empty()) throw ParseError("custom profile needs an expression for C");
    return custom(expr);
  }
  throw ParseError("unknown commutator profile '" + name + "'");
}

namespace {

// root of g on a bracket grown around `guess`
double solve_monotone(const std::function<double(double)>& g, double guess, double span) {
  double d = span;
  double lo = guess - d, hi = guess + d;
  double glo = g(lo), ghi = g(hi);
  int grow = 0;
  while (!(glo <= 0.0 && ghi >= 0.0)) {
    if (++grow > 60 || std::isnan(glo) || std::isnan(ghi))
      throw BracketingError("cannot bracket a root near " + std::to_string(guess));
    d *= 2.0;
    lo = guess - d;
    hi = guess + d;
    glo = g(lo);
    ghi = g(hi);
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = g(mid);
    if (gm == 0.0) return mid;
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BijectionFamily profile_family(const CommutatorProfile& profile, const Interval& interval) {
  if (profile.closed_form) return make_family(*profile.closed_form, interval);
  auto C = profile.C;
  auto fwd = [C](double h, double u) {
    double c = u - 0.5 * h * C(u);
    return solve_monotone([&](double x) { return x + 0.5 * h * C(x) - c; }, u, std::max(h, 1e-6));
  };
  auto inv = [C](double h, double x) {
    double c = x + 0.5 * h * C(x);
    return solve_monotone([&](double u) { return u - 0.5 * h * C(u) - c; }, x, std::max(h, 1e-6));
  };
  FamilyParams p;
  p.forward_expr = profile.label;
  return BijectionFamily(FamilyKind::Custom, interval, fwd, inv, [](double) { return Interval::real_line(); },
                         std::nullopt, std::nullopt, p);
}

PartialBijection solve_alpha_from_C(const CommutatorProfile& profile, const Interval& interval, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("solve_alpha_from_C needs hbar > 0");
  PartialBijection a = profile_family(profile, interval).at(hbar);
  if (a.is_empty()) throw DomainError("alpha has empty domain on " + interval.to_string());
  return a;
}

double x_u_residual(const CommutatorProfile& profile, const PartialBijection& alpha, double hbar, int grid) {
  double worst = 0.0;
  for (double u : sample_grid(alpha.domain(), grid)) {
    double x = alpha.forward(u);
    worst = std::max(worst, std::abs(x + 0.5 * hbar * profile.C(x) - u + 0.5 * hbar * profile.C(u)));
  }
  return worst;
}

Reparametrization Reparametrization::identity(const Interval& I) {
  return {I, [](double u) { return u; }, [](double x) { return x; }, true, true};
}

PartialBijection conjugate(const PartialBijection& alpha, const Reparametrization& r) {
  if (r.trivial) return alpha;
  MonotoneMap back{r.rho_inv, r.increasing, {}, {}};
  Interval dom = alpha.domain().is_empty() ? alpha.domain() : image_monotone(alpha.domain(), back);
  Interval ran = alpha.range().is_empty() ? alpha.range() : image_monotone(alpha.range(), back);
  auto a = alpha;
  auto rho = r.rho, rinv = r.rho_inv;
  return PartialBijection(
      r.J, dom, ran, [a, rho, rinv](double u) { return rinv(a.forward(rho(u))); },
      [a, rho, rinv](double y) { return rinv(a.inverse(rho(y))); }, alpha.increasing());
}

double TwoGenModel::C_of_rho(double u) const { return setup.profile.C(rho.rho(u)); }

TwoGenModel build_two_gen(const TwoGenSetup& setup) {
  TwoGenModel m;
  m.setup = setup;
  m.rho = setup.rho ? *setup.rho : Reparametrization::identity(setup.I);
  m.alpha = solve_alpha_from_C(setup.profile, setup.I, setup.hbar);
  m.alpha_rho = conjugate(m.alpha, m.rho);
  m.alg = make_algebra(m.alpha_rho, CylinderKind::General, setup.hbar);
  const Interval& J = m.rho.J;
  auto C = setup.profile.C;
  auto rho = m.rho.rho;
  double h = setup.hbar;
  RealMap phi = [C, rho, h](double u) {
    double r = rho(u);
    return r + 0.5 * h * C(r);
  };
  m.phi = from_real(phi, J, J, "phi_rho");
  // principal root, hard zero where phi_rho dips below zero
  SupportedFunction root(J, J, [phi](double u) { return cplx{std::sqrt(std::max(0.0, phi(u))), 0.0}; },
                         "sqrt(phi_rho)");
  m.A = diagonal(m.alg, root) * generator_U(m.alg);
  m.As = involution(m.A);
  m.AAs = m.A * m.As;
  m.AsA = m.As * m.A;
  m.commutator = m.AAs - m.AsA;
  m.anti_half = scale(m.AAs + m.AsA, 0.5);
  return m;
}

std::vector<Interval> difference(const Interval& a, const Interval& b) {
  if (a.is_empty()) return {};
  if (b.is_empty()) return {a};
  std::vector<Interval> out;
  Interval left = intersect(a, Interval::make(-kInf, b.lo(), false, !b.lo_closed()));
  Interval right = intersect(a, Interval::make(b.hi(), kInf, !b.hi_closed(), false));
  if (!left.is_empty()) out.push_back(left);
  if (!right.is_empty()) out.push_back(right);
  return out;
}

Regions regions(const TwoGenModel& m) {
  const Interval& j1 = m.alg->I(1);
  const Interval& jm1 = m.alg->I(-1);
  return {difference(j1, jm1), intersect(j1, jm1), difference(jm1, j1)};
}

namespace {

std::vector<double> region_grid(const Interval& r, int grid) {
  std::vector<double> out;
  for (double x : sample_grid(r, grid))
    if (r.contains(x, kBoundaryTol)) out.push_back(x);
  return out;
}

std::vector<double> region_grid(const std::vector<Interval>& rs, int grid) {
  std::vector<double> out;
  for (const auto& r : rs) {
    auto g = region_grid(r, grid);
    out.insert(out.end(), g.begin(), g.end());
  }
  return out;
}

double max_dev(const std::vector<double>& xs, const std::function<double(double)>& f) {
  double w = 0.0;
  for (double x : xs) w = std::max(w, std::abs(f(x)));
  return w;
}

}  // namespace

TwoGenReport two_gen_relations(const TwoGenModel& m, double tol, int grid) {
  TwoGenReport rep;
  Regions R = regions(m);
  double h = m.setup.hbar;
  const auto& comm = m.commutator;
  const auto& anti = m.anti_half;
  auto rho = [&](double u) { return m.rho.rho(u); };
  auto Cr = [&](double u) { return m.C_of_rho(u); };

  auto g1 = region_grid(R.j1_only, grid);
  auto gb = region_grid(R.both, grid);
  auto gm = region_grid(R.jm1_only, grid);

  auto region_check = [&](const std::string& name, const std::vector<double>& xs, const Element& e,
                          const std::function<double(double)>& closed) {
    if (xs.empty()) return make_check(name, 0.0, tol, "vacuous: region empty");
    return make_check(name, max_dev(xs, [&](double u) { return std::abs(e.eval(0, u) - closed(u)); }), tol,
                      std::to_string(xs.size()) + " points");
  };

  rep.checks.push_back(region_check("[A,A*] on J1\\J-1 = rho + h/2 C(rho)", g1, comm,
                                    [&](double u) { return rho(u) + 0.5 * h * Cr(u); }));
  rep.checks.push_back(region_check("[A,A*] on J1nJ-1 = h C(rho)", gb, comm, [&](double u) { return h * Cr(u); }));
  rep.checks.push_back(region_check("[A,A*] on J-1\\J1 = -rho + h/2 C(rho)", gm, comm,
                                    [&](double u) { return -rho(u) + 0.5 * h * Cr(u); }));
  rep.checks.push_back(region_check("(AA*+A*A)/2 on J1\\J-1 = (rho + h/2 C(rho))/2", g1, anti,
                                    [&](double u) { return 0.5 * (rho(u) + 0.5 * h * Cr(u)); }));
  rep.checks.push_back(region_check("(AA*+A*A)/2 on J1nJ-1 = rho", gb, anti, [&](double u) { return rho(u); }));
  rep.checks.push_back(region_check("(AA*+A*A)/2 on J-1\\J1 = (rho - h/2 C(rho))/2", gm, anti,
                                    [&](double u) { return 0.5 * (rho(u) - 0.5 * h * Cr(u)); }));

  // no stray delta_n terms
  auto all = region_grid(m.rho.J, grid);
  double stray = 0.0;
  for (const auto* e : {&comm, &anti})
    for (const auto& [n, f] : e->terms())
      if (n != 0) stray = std::max(stray, max_dev(all, [&](double u) { return std::abs(f(u)); }));
  rep.checks.push_back(make_check("commutator and anticommutator are diagonal", stray, tol));

  // middle relation: [A,A*] = h C((AA*+A*A)/2) on J1nJ-1
  const auto& C = m.setup.profile.C;
  rep.checks.push_back(region_check("[A,A*] = h C((AA*+A*A)/2) on J1nJ-1", gb, comm,
                                    [&](double u) { return h * C(anti.eval(0, u).real()); }));

  // which product vanishes on the one-sided regions
  auto vanishing = [&](const std::vector<double>& xs) -> std::string {
    if (xs.empty()) return "vacuous";
    double aas = max_dev(xs, [&](double u) { return std::abs(m.AAs.eval(0, u)); });
    double asa = max_dev(xs, [&](double u) { return std::abs(m.AsA.eval(0, u)); });
    if (asa <= tol && aas > tol) return "A*A";
    if (aas <= tol && asa > tol) return "AA*";
    if (aas <= tol && asa <= tol) return "both";
    return "neither";
  };
  rep.j1_only_vanishing = vanishing(g1);
  rep.jm1_only_vanishing = vanishing(gm);
  if (!g1.empty())
    rep.checks.push_back(make_check("A*A = 0 on J1\\J-1", max_dev(g1, [&](double u) { return std::abs(m.AsA.eval(0, u)); }),
                                    tol, "as computed; the other product is the nonzero one"));
  if (!gm.empty())
    rep.checks.push_back(make_check("AA* = 0 on J-1\\J1", max_dev(gm, [&](double u) { return std::abs(m.AAs.eval(0, u)); }),
                                    tol, "as computed; the other product is the nonzero one"));

  if (gm.empty()) {
    rep.jm1_commutator_sign = "vacuous";
  } else {
    double printed = max_dev(gm, [&](double u) { return std::abs(comm.eval(0, u) - (-rho(u) + 0.5 * h * Cr(u))); });
    double opposite = max_dev(gm, [&](double u) { return std::abs(comm.eval(0, u) - (rho(u) - 0.5 * h * Cr(u))); });
    rep.jm1_commutator_sign = printed <= opposite ? "printed" : "opposite";
  }

  rep.min_phi = INFINITY;
  for (double u : all) rep.min_phi = std::min(rep.min_phi, m.phi(u).real());
  // endpoints of J are where the obstruction shows up
  for (double u : {m.rho.J.lo(), m.rho.J.hi()})
    if (std::isfinite(u) && m.rho.J.contains(u)) rep.min_phi = std::min(rep.min_phi, m.phi(u).real());
  rep.phi_nonneg = rep.min_phi >= -1e-12;
  rep.checks.push_back({"phi_rho >= 0 on J", rep.phi_nonneg ? 0.0 : -rep.min_phi, 0.0, rep.phi_nonneg,
                        "min phi_rho = " + std::to_string(rep.min_phi)});
  return rep;
}

std::vector<CheckResult> two_gen_equation_check(const TwoGenModel& m, double tol, int grid) {
  std::vector<CheckResult> out;
  double h = m.setup.hbar;
  const auto& C = m.setup.profile.C;
  const PartialBijection& a = m.alpha_rho;
  auto lhs_rhs = [&](double r_at_au, double r_at_u) {
    return std::abs(r_at_au + 0.5 * h * C(r_at_au) - r_at_u + 0.5 * h * C(r_at_u));
  };

  double w = 0.0;
  auto dom = region_grid(a.domain(), grid);
  for (double u : dom) w = std::max(w, lhs_rhs(m.rho.rho(a.forward(u)), m.rho.rho(u)));
  out.push_back(make_check("2gen_eq with R^2 = rho on J-1", w, tol, std::to_string(dom.size()) + " points"));

  Regions R = regions(m);
  double w2 = 0.0;
  int used = 0;
  for (double u : dom) {
    double au = a.forward(u);
    if (!R.both.contains(u, kBoundaryTol) || !R.both.contains(au, kBoundaryTol)) continue;
    ++used;
    w2 = std::max(w2, lhs_rhs(m.anti_half.eval(0, au).real(), m.anti_half.eval(0, u).real()));
  }
  out.push_back(make_check("2gen_eq with computed R^2 on J1nJ-1", w2, tol, std::to_string(used) + " points"));
  return out;
}

CheckResult commutator_with_diagonal(const TwoGenModel& m, const SupportedFunction& g, double tol) {
  Element G = diagonal(m.alg, g);
  Element lhs = m.A * G - G * m.A;
  SupportedFunction p1 = partial_identity(m.alg->I(1), m.alg->carrier());
  SupportedFunction shifted = pullback(multiply(p1, g), m.alg->power(-1));
  Element rhs = m.A * diagonal(m.alg, subtract(g, shifted));
  return make_check("[A,g] = A(g - (p1 g) o alpha)", residual(lhs, rhs), tol);
}

BoundaryReport boundary_continuity_check(const TwoGenModel& m, int steps) {
  BoundaryReport br;
  Regions R = regions(m);
  const Interval& J = m.rho.J;
  const PartialBijection& a = m.alpha_rho;
  double h = m.setup.hbar;

  Interval r;
  if (!R.j1_only.empty()) {
    br.which = 1;
    r = R.j1_only.front();
  } else if (!R.jm1_only.empty()) {
    br.which = 2;
    r = R.jm1_only.front();
  } else {
    br.detail = "vacuous: J1 and J-1 coincide";
    return br;
  }
  br.vacuous = false;
  bool at_lo = !J.lo_infinite() && std::abs(r.lo() - J.lo()) <= 1e-12 * (1.0 + std::abs(J.lo()));
  br.u0 = at_lo ? r.lo() : r.hi();
  br.u1 = at_lo ? r.hi() : r.lo();
  br.map_residual = br.which == 1 ? std::abs(br.u0 - a.forward(br.u1)) : std::abs(br.u1 - a.forward(br.u0));

  br.comm_at_u0 = std::abs(m.commutator.eval(0, br.u0));
  br.anti_at_u0 = std::abs(m.anti_half.eval(0, br.u0));

  // approach u1 from inside the region and from the other side
  double width = std::isfinite(r.length()) && r.length() > 0 ? r.length() : h;
  double inward = at_lo ? -1.0 : 1.0;
  auto limit = [&](const Element& e, double dir) {
    double v = 0.0;
    for (int k = 1; k <= steps; ++k) v = e.eval(0, br.u1 + dir * std::ldexp(width, -k)).real();
    return v;
  };
  double ci = limit(m.commutator, inward), co = limit(m.commutator, -inward);
  double ai = limit(m.anti_half, inward), ao = limit(m.anti_half, -inward);
  br.comm_jump = std::abs(ci - co);
  br.anti_jump = std::abs(ai - ao);
  bool cont_c = br.comm_jump <= 1e-6 * (1.0 + std::abs(co));
  bool cont_a = br.anti_jump <= 1e-6 * (1.0 + std::abs(ao));
  br.continuous_at_u1 = cont_c && cont_a;
  br.zero_at_u0 = br.comm_at_u0 <= 1e-6 && br.anti_at_u0 <= 1e-6;
  br.iff_holds = br.zero_at_u0 == br.continuous_at_u1;
  double r0 = m.rho.rho(br.u0);
  br.phi_at_u0 = r0 + 0.5 * h * m.setup.profile.C(r0);
  br.phi_condition = std::abs(br.phi_at_u0) <= 1e-9;
  return br;
}

PoincareConstants poincare_constants(double h) {
  if (!(h > 0.0 && h < kPoincareMaxHbar))
    throw DomainError("poincare constants need 0 < hbar < 2 sqrt 2 - 2, got " + std::to_string(h));
  PoincareConstants pc;
  pc.hbar = h;
  pc.rho0 = 1.0 - 2.0 / h + (2.0 / h) * std::sqrt(1.0 - h);
  pc.v = 1.0 + 2.0 / h - (1.0 / h) * std::sqrt(4.0 + 4.0 * h - h * h);
  pc.alpha_at_0 = poincare_alpha(h, 0.0);
  pc.a_inv = poincare_alpha_inv(h, pc.rho0);
  pc.alpha_at_1 = poincare_alpha(h, 1.0);
  pc.alpha_at_v = poincare_alpha(h, pc.v);
  double printed0 = 1.0 - 2.0 / h + (1.0 / h) * std::sqrt(4.0 - 4.0 * h - h * h);
  double h2 = h * h;
  pc.checks.push_back(make_check("alpha(1) = 1", std::abs(pc.alpha_at_1 - 1.0), 1e-9));
  pc.checks.push_back(make_check("|alpha(0) + h/2| <= h^2", std::abs(pc.alpha_at_0 + 0.5 * h), h2));
  pc.checks.push_back(make_check("|rho0 + h/4| <= h^2", std::abs(pc.rho0 + 0.25 * h), h2));
  pc.checks.push_back(make_check("|v - h/2| <= h^2", std::abs(pc.v - 0.5 * h), h2));
  pc.checks.push_back(make_check("alpha(v) = 0", std::abs(pc.alpha_at_v), 1e-9));
  pc.checks.push_back(make_check("alpha(0) matches the short closed form", std::abs(printed0 - pc.alpha_at_0), 1e-12));
  pc.checks.push_back(make_check("phi(rho0) = 0", std::abs(pc.rho0 + 0.25 * h * (1 - pc.rho0) * (1 - pc.rho0)), 1e-12));
  return pc;
}

}  // namespace fuzzcyl
