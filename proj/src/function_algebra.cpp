#include "fuzzcyl/function_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

SupportedFunction::SupportedFunction(Interval carrier, Interval support, ComplexMap f, std::string label,
                                     std::optional<ComplexMap> derivative)
    : carrier_(std::move(carrier)),
      support_(intersect(support, carrier_)),
      fn_(std::make_shared<const ComplexMap>(std::move(f))),
      label_(std::move(label)) {
  if (derivative) deriv_ = std::make_shared<const ComplexMap>(std::move(*derivative));
}

SupportedFunction SupportedFunction::zero(const Interval& carrier) {
  SupportedFunction z;
  z.carrier_ = carrier;
  z.label_ = "0";
  return z;
}

cplx SupportedFunction::operator()(double x) const {
  if (!fn_ || !support_.contains(x, kBoundaryTol)) return {};
  return (*fn_)(x);
}

cplx SupportedFunction::derivative(double x, double step) const {
  if (!fn_ || !support_.contains(x, kBoundaryTol)) return {};
  if (deriv_) return (*deriv_)(x);
  return ((*this)(x + step) - (*this)(x - step)) / (2.0 * step);
}

SupportedFunction SupportedFunction::with_label(std::string label) const {
  SupportedFunction f = *this;
  f.label_ = std::move(label);
  return f;
}

namespace {

void same_carrier(const SupportedFunction& f, const SupportedFunction& g, const char* op) {
  if (!f.carrier().approx_equal(g.carrier(), kBoundaryTol))
    throw DomainError(std::string(op) + ": carriers differ (" + f.carrier().to_string() + " vs " +
                      g.carrier().to_string() + ")");
}

std::optional<ComplexMap> deriv_of(const SupportedFunction& f) {
  if (!f.has_analytic_derivative()) return std::nullopt;
  return ComplexMap([f](double x) { return f.derivative(x); });
}

}  // namespace

SupportedFunction multiply(const SupportedFunction& f, const SupportedFunction& g) {
  same_carrier(f, g, "multiply");
  Interval s = intersect(f.support(), g.support());
  if (s.is_empty() || f.is_zero() || g.is_zero()) return SupportedFunction::zero(f.carrier());
  std::optional<ComplexMap> d;
  if (f.has_analytic_derivative() && g.has_analytic_derivative())
    d = [f, g](double x) { return f.derivative(x) * g.raw(x) + f.raw(x) * g.derivative(x); };
  return SupportedFunction(
      f.carrier(), s, [f, g](double x) { return f.raw(x) * g.raw(x); }, "(" + f.label() + ")*(" + g.label() + ")",
      d);
}

SupportedFunction add(const SupportedFunction& f, const SupportedFunction& g) {
  same_carrier(f, g, "add");
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  std::optional<ComplexMap> d;
  if (f.has_analytic_derivative() && g.has_analytic_derivative())
    d = [f, g](double x) { return f.derivative(x) + g.derivative(x); };
  // masked evaluation, the supports may differ
  return SupportedFunction(f.carrier(), hull(f.support(), g.support()), [f, g](double x) { return f(x) + g(x); },
                           f.label() + "+" + g.label(), d);
}

SupportedFunction scale(const SupportedFunction& f, cplx c) {
  if (f.is_zero() || c == cplx{}) return SupportedFunction::zero(f.carrier());
  std::optional<ComplexMap> d;
  if (f.has_analytic_derivative()) d = [f, c](double x) { return c * f.derivative(x); };
  std::ostringstream os;
  os << c;
  return SupportedFunction(f.carrier(), f.support(), [f, c](double x) { return c * f.raw(x); },
                           os.str() + "*" + f.label(), d);
}

SupportedFunction subtract(const SupportedFunction& f, const SupportedFunction& g) {
  return add(f, scale(g, -1.0));
}

SupportedFunction conj(const SupportedFunction& f) {
  if (f.is_zero()) return f;
  std::optional<ComplexMap> d;
  if (f.has_analytic_derivative()) d = [f](double x) { return std::conj(f.derivative(x)); };
  return SupportedFunction(f.carrier(), f.support(), [f](double x) { return std::conj(f.raw(x)); },
                           "conj(" + f.label() + ")", d);
}

SupportedFunction partial_identity(const Interval& iv, const Interval& carrier) {
  if (!iv.is_subset_of(carrier, kBoundaryTol))
    throw DomainError("partial identity " + iv.to_string() + " not inside " + carrier.to_string());
  Interval s = intersect(iv, carrier);
  if (s.is_empty()) return SupportedFunction::zero(carrier);
  return SupportedFunction(carrier, s, [](double) { return cplx{1.0, 0.0}; }, "p" + s.to_string(),
                           ComplexMap([](double) { return cplx{}; }));
}

SupportedFunction indicator(const Interval& iv, const Interval& carrier) {
  return partial_identity(intersect(iv, carrier), carrier);
}

SupportedFunction pullback(const SupportedFunction& f, const PartialBijection& alpha) {
  if (f.is_zero()) return SupportedFunction::zero(f.carrier());
  if (!f.support().is_subset_of(alpha.domain(), kBoundaryTol))
    throw DomainError("pullback: support " + f.support().to_string() + " not inside domain " +
                      alpha.domain().to_string());
  if (alpha.is_identity_map()) return f;
  Interval s = intersect(f.support(), alpha.domain());
  if (s.is_empty()) return SupportedFunction::zero(f.carrier());
  Interval img = image_monotone(s, alpha.forward_map());
  return SupportedFunction(f.carrier(), img, [f, alpha](double x) { return f.raw(alpha.inverse(x)); },
                           f.label() + "oa^-1");
}

SupportedFunction restrict(const SupportedFunction& f, const Interval& iv) {
  Interval s = intersect(f.support(), iv);
  if (s.is_empty() || f.is_zero()) return SupportedFunction::zero(f.carrier());
  if (s == f.support()) return f;
  return SupportedFunction(f.carrier(), s, [f](double x) { return f.raw(x); }, f.label() + "|" + s.to_string(),
                           deriv_of(f));
}

SupportedFunction compose_real(const SupportedFunction& f, const RealMap& map, const Interval& support,
                               std::string label) {
  if (f.is_zero() || support.is_empty()) return SupportedFunction::zero(f.carrier());
  return SupportedFunction(f.carrier(), support, [f, map](double x) { return f(map(x)); },
                           label.empty() ? f.label() + "o?" : std::move(label));
}

std::vector<double> carrier_grid(const Interval& carrier, const GridOptions& opt) {
  return sample_grid(carrier, opt.grid_size, opt.window);
}

double max_abs_diff(const SupportedFunction& f, const SupportedFunction& g, const std::vector<double>& points) {
  double worst = 0.0;
  for (double x : points) worst = std::max(worst, std::abs(f(x) - g(x)));
  return worst;
}

double max_abs_diff(const SupportedFunction& f, const SupportedFunction& g, const GridOptions& opt) {
  return max_abs_diff(f, g, carrier_grid(f.carrier(), opt));
}

bool approx_equal(const SupportedFunction& f, const SupportedFunction& g, int grid_size, double tol,
                  const Interval& window) {
  same_carrier(f, g, "approx_equal");
  return max_abs_diff(f, g, GridOptions{grid_size, window}) <= tol;
}

std::optional<std::string> flavor_violation(const SupportedFunction& f, Flavor flavor, double tol) {
  if (flavor == Flavor::F || f.is_zero()) return std::nullopt;
  const Interval& s = f.support();
  const Interval& c = f.carrier();
  auto edge_value = [&](double x, double inward) { return std::abs(f.raw(x + inward)); };
  double eps = 1e-9 * (1.0 + std::max(std::abs(s.is_bounded() ? s.lo() : 0.0), std::abs(s.is_bounded() ? s.hi() : 0.0)));
  // a support edge strictly inside the carrier is a jump unless f vanishes there
  if (!s.lo_infinite() && (c.lo_infinite() || s.lo() > c.lo() + kBoundaryTol) && edge_value(s.lo(), eps) > tol)
    return "jump at support edge " + std::to_string(s.lo());
  if (!s.hi_infinite() && (c.hi_infinite() || s.hi() < c.hi() - kBoundaryTol) && edge_value(s.hi(), -eps) > tol)
    return "jump at support edge " + std::to_string(s.hi());
  if (flavor == Flavor::C0) {
    double lo = c.lo_infinite() ? -8.0 : c.lo();
    double hi = c.hi_infinite() ? 8.0 : c.hi();
    if (std::abs(f(lo)) > tol) return "no decay at " + std::to_string(lo);
    if (std::abs(f(hi)) > tol) return "no decay at " + std::to_string(hi);
  }
  return std::nullopt;
}

SupportedFunction constant(cplx c, const Interval& carrier, const Interval& support) {
  std::ostringstream os;
  os << c;
  return SupportedFunction(carrier, support, [c](double) { return c; }, os.str(),
                           ComplexMap([](double) { return cplx{}; }));
}

SupportedFunction polynomial(const std::vector<cplx>& coeffs, const Interval& carrier, const Interval& support) {
  auto eval = [coeffs](double x) {
    cplx r{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
    return r;
  };
  auto deriv = [coeffs](double x) {
    cplx r{};
    for (size_t k = coeffs.size(); k-- > 1;) r = r * x + static_cast<double>(k) * coeffs[k];
    return r;
  };
  std::ostringstream os;
  os << "poly[";
  for (size_t k = 0; k < coeffs.size(); ++k) os << (k ? "," : "") << coeffs[k].real();
  os << "]";
  return SupportedFunction(carrier, support, eval, os.str(), ComplexMap(deriv));
}

SupportedFunction exp_i(double k, const Interval& carrier, const Interval& support) {
  return SupportedFunction(
      carrier, support, [k](double x) { return std::polar(1.0, k * x); }, "exp(i" + std::to_string(k) + "x)",
      ComplexMap([k](double x) { return cplx{0.0, k} * std::polar(1.0, k * x); }));
}

SupportedFunction sqrt_affine(double a, double b, const Interval& carrier, const Interval& support) {
  return SupportedFunction(
      carrier, support, [a, b](double x) { return cplx{std::sqrt(std::max(0.0, a * x + b)), 0.0}; },
      "sqrt(" + std::to_string(a) + "x+" + std::to_string(b) + ")",
      ComplexMap([a, b](double x) { return cplx{0.5 * a / std::sqrt(a * x + b), 0.0}; }));
}

SupportedFunction from_real(const RealMap& f, const Interval& carrier, const Interval& support, std::string label) {
  return SupportedFunction(carrier, support, [f](double x) { return cplx{f(x), 0.0}; }, std::move(label));
}

}  // namespace fuzzcyl
