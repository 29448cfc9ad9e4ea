#include "fuzzcyl/star_product.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

cplx CylinderFunction::operator()(double x, double phi) const {
  cplx s{};
  for (const auto& [n, f] : coeffs) s += f(x) * std::polar(1.0, n * phi);
  return s;
}

int CylinderFunction::max_abs_n() const {
  int m = 0;
  for (const auto& [n, f] : coeffs) m = std::max(m, std::abs(n));
  return m;
}

CylinderFunction psi(const Element& x) { return {x.algebra(), x.terms()}; }

namespace {

// coefficient n of f by the K-node trapezoidal rule on [-pi, pi)
cplx fourier_coeff(const CylinderFunction& f, int n, int K, double x) {
  cplx s{};
  for (int k = 0; k < K; ++k) {
    double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / K;
    s += f(x, phi) * std::polar(1.0, -n * phi);
  }
  return s / static_cast<double>(K);
}

Interval support_hull(const CylinderFunction& f) {
  Interval h = Interval::empty();
  for (const auto& [n, c] : f.coeffs) h = hull(h, c.support());
  return h;
}

}  // namespace

Element psi_inv(const CylinderFunction& f, int max_n, double alias_tol, const GridOptions& opt) {
  if (!f.alg) throw DomainError("psi_inv: cylinder function without algebra");
  if (max_n < 0) throw DomainError("psi_inv: max_n must be >= 0");
  const int K = 4 * max_n + 1;
  const Interval& carrier = f.alg->carrier();
  Interval hullsupp = support_hull(f);

  // anything living in (max_n, 2 max_n] means the cutoff was too small
  const auto grid = carrier_grid(carrier, opt);
  for (int n = max_n + 1; n <= 2 * max_n; ++n) {
    for (int sgn : {-1, 1}) {
      for (double x : grid) {
        double a = std::abs(fourier_coeff(f, sgn * n, K, x));
        if (a > alias_tol)
          throw AliasingError("psi_inv: coefficient " + std::to_string(sgn * n) + " is " + std::to_string(a) +
                              " at x=" + std::to_string(x) + ", beyond max_n=" + std::to_string(max_n));
      }
    }
  }

  Element out(f.alg);
  if (hullsupp.is_empty()) return out;
  double scale = 0.0;
  for (const auto& [m, fm] : f.coeffs)
    for (double x : grid) scale = std::max(scale, std::abs(fm(x)));
  for (int n = -max_n; n <= max_n; ++n) {
    auto coeff = [f, n, K](double x) { return fourier_coeff(f, n, K, x); };
    SupportedFunction c(carrier, hullsupp, coeff, "psi^-1[" + std::to_string(n) + "]");
    // frequencies f never had and that come out at roundoff level are dropped
    double peak = 0.0;
    for (double x : grid) peak = std::max(peak, std::abs(c(x)));
    if (!f.coeffs.count(n) && peak <= 1e-13 * scale) continue;
    out.add_term(n, c, TermMode::Clip);
  }
  return out;
}

CylinderFunction star(const CylinderFunction& f, const CylinderFunction& g) {
  if (f.alg != g.alg) throw GeneratorMismatch("star: different cylinders");
  int mf = f.max_abs_n(), mg = g.max_abs_n();
  return psi(multiply(psi_inv(f, mf), psi_inv(g, mg)));
}

CylinderFunction pointwise(const CylinderFunction& f, const CylinderFunction& g) {
  CylinderFunction out{f.alg, {}};
  for (const auto& [a, fa] : f.coeffs)
    for (const auto& [b, gb] : g.coeffs) {
      SupportedFunction p = multiply(fa, gb);
      if (p.is_zero()) continue;
      auto it = out.coeffs.find(a + b);
      if (it == out.coeffs.end())
        out.coeffs.emplace(a + b, p);
      else
        it->second = add(it->second, p);
    }
  return out;
}

CylinderFunction add(const CylinderFunction& f, const CylinderFunction& g) {
  CylinderFunction out = f;
  for (const auto& [n, c] : g.coeffs) {
    auto it = out.coeffs.find(n);
    if (it == out.coeffs.end())
      out.coeffs.emplace(n, c);
    else
      it->second = add(it->second, c);
  }
  return out;
}

CylinderFunction scale(const CylinderFunction& f, cplx c) {
  CylinderFunction out{f.alg, {}};
  for (const auto& [n, fn] : f.coeffs) out.coeffs.emplace(n, scale(fn, c));
  return out;
}

PoissonCoefficient PoissonCoefficient::of(const BijectionFamily& family) {
  return {[family](double x) { return family.beta(x); }};
}

PoissonCoefficient PoissonCoefficient::finite_difference(const BijectionFamily& family, double step) {
  return {[family, step](double x) {
    return (family.forward_at(step, x) - family.forward_at(-step, x)) / (2.0 * step);
  }};
}

CylinderFunction d_phi(const CylinderFunction& f) {
  CylinderFunction out{f.alg, {}};
  for (const auto& [n, c] : f.coeffs)
    if (n != 0) out.coeffs.emplace(n, scale(c, cplx{0.0, static_cast<double>(n)}));
  return out;
}

CylinderFunction d_x(const CylinderFunction& f) {
  CylinderFunction out{f.alg, {}};
  for (const auto& [n, c] : f.coeffs)
    out.coeffs.emplace(n, SupportedFunction(c.carrier(), c.support(), [c](double x) { return c.derivative(x); },
                                            "d(" + c.label() + ")"));
  return out;
}

CylinderFunction poisson_bracket(const CylinderFunction& f, const CylinderFunction& g, const PoissonCoefficient& beta) {
  CylinderFunction lhs = pointwise(d_x(f), d_phi(g));
  CylinderFunction rhs = pointwise(d_phi(f), d_x(g));
  CylinderFunction diff = add(lhs, scale(rhs, -1.0));
  const Interval carrier = f.alg ? f.alg->carrier() : Interval::real_line();
  auto b = beta.beta;
  SupportedFunction bf(carrier, carrier, [b](double x) { return cplx{b(x), 0.0}; }, "beta");
  CylinderFunction out{f.alg, {}};
  for (const auto& [n, c] : diff.coeffs) out.coeffs.emplace(n, multiply(bf, c));
  return out;
}

CylinderFunction on_cylinder(const AlgebraPtr& alg, const Coefficients& c) {
  CylinderFunction out{alg, {}};
  for (const auto& [n, f] : c) {
    SupportedFunction g = restrict(f, alg->I(n));
    if (!g.is_zero()) out.coeffs.emplace(n, g);
  }
  return out;
}

std::vector<double> interior_grid(const Coefficients& f, const Coefficients& g, const Interval& carrier, double margin,
                                  int points, const Interval& window) {
  Interval common = carrier;
  for (const auto* c : {&f, &g})
    for (const auto& [n, fn] : *c) common = intersect(common, fn.support());
  Interval inner = shrink(common, margin);
  return sample_grid(inner, points, window);
}

double first_order_residual(const CylinderFunction& f, const CylinderFunction& g, const PoissonCoefficient& beta,
                            double hbar, double sign, const std::vector<double>& xs, const std::vector<double>& phis) {
  CylinderFunction s = star(f, g);
  CylinderFunction p = pointwise(f, g);
  CylinderFunction df = d_phi(f);
  CylinderFunction dg = d_x(g);
  double worst = 0.0;
  for (double x : xs) {
    double b = beta.beta(x);
    for (double phi : phis) {
      cplx first = (s(x, phi) - p(x, phi)) / hbar;
      cplx pred = sign * cplx{0.0, b} * df(x, phi) * dg(x, phi);
      worst = std::max(worst, std::abs(first - pred));
    }
  }
  return worst;
}

LimitReport classical_limit_check(const Coefficients& f, const Coefficients& g, const BijectionFamily& family,
                                  const std::vector<double>& hbars, const LimitOptions& opt) {
  LimitReport rep;
  for (size_t i = 1; i < hbars.size(); ++i)
    if (!(hbars[i] < hbars[i - 1])) throw DomainError("classical_limit_check: hbars must decrease");
  PoissonCoefficient beta = opt.beta ? *opt.beta : PoissonCoefficient::of(family);
  std::vector<double> phis;
  for (int k = 0; k < opt.phi_points; ++k) phis.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * k / opt.phi_points);

  // one grid for every row, cut with the widest margin; otherwise the rows see
  // different parts of the support and the slope mixes in the grid change
  std::vector<double> common;
  if (opt.common_grid && !hbars.empty())
    common = interior_grid(f, g, family.carrier(), opt.margin_factor * hbars.front(), opt.x_points);

  for (double h : hbars) {
    AlgebraPtr alg = make_algebra(family.at(h), CylinderKind::General, h);
    CylinderFunction F = on_cylinder(alg, f);
    CylinderFunction G = on_cylinder(alg, g);
    auto xs = opt.common_grid ? common : interior_grid(f, g, alg->carrier(), opt.margin_factor * h, opt.x_points);
    if (xs.empty()) throw DomainError("classical_limit_check: interior is empty at hbar=" + std::to_string(h));
    LimitRow row;
    row.hbar = h;
    row.residual = first_order_residual(F, G, beta, h, +1.0, xs, phis);

    CylinderFunction fg = star(F, G);
    CylinderFunction gf = star(G, F);
    CylinderFunction br = poisson_bracket(F, G, beta);
    double err = 0.0, scale_b = 0.0;
    for (double x : xs)
      for (double phi : phis) {
        cplx c = (fg(x, phi) - gf(x, phi)) / cplx{0.0, -h};
        cplx b = br(x, phi);
        err = std::max(err, std::abs(c - b));
        scale_b = std::max(scale_b, std::abs(b));
      }
    row.commutator_error = scale_b > 0.0 ? err / scale_b : err;
    rep.rows.push_back(row);
  }

  // least squares slope of log R against log h
  std::vector<std::pair<double, double>> pts;
  double rmax = 0.0;
  for (const auto& r : rep.rows) {
    rmax = std::max(rmax, r.residual);
    if (r.residual > 0.0) pts.emplace_back(std::log(r.hbar), std::log(r.residual));
  }
  if (rmax <= 1e-10) {
    rep.exact = true;
    rep.pass = true;
    rep.detail = "first-order expansion exact (max residual " + std::to_string(rmax) + ")";
    return rep;
  }
  if (pts.size() < 2) {
    rep.detail = "not enough nonzero residuals to fit an order";
    return rep;
  }
  double mx = 0, my = 0;
  for (auto [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= pts.size();
  my /= pts.size();
  double sxy = 0, sxx = 0;
  for (auto [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  rep.order = sxx > 0 ? sxy / sxx : 0.0;
  rep.pass = *rep.order >= opt.min_order && *rep.order <= opt.max_order;
  if (!rep.pass) rep.detail = "fitted order " + std::to_string(*rep.order) + " outside range";
  return rep;
}

}  // namespace fuzzcyl
