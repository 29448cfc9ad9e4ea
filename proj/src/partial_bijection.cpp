#include "fuzzcyl/partial_bijection.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fuzzcyl/error.hpp"
#include "fuzzcyl/expression.hpp"

namespace fuzzcyl {

PartialBijection::PartialBijection(Interval carrier, Interval domain, Interval range, RealMap forward,
                                   RealMap inverse, bool increasing)
    : carrier_(std::move(carrier)),
      domain_(std::move(domain)),
      range_(std::move(range)),
      fwd_(std::make_shared<const RealMap>(std::move(forward))),
      inv_(std::make_shared<const RealMap>(std::move(inverse))),
      increasing_(increasing) {
  if (domain_.is_empty() != range_.is_empty()) {
    domain_ = Interval::empty();
    range_ = Interval::empty();
  }
}

PartialBijection PartialBijection::identity(const Interval& carrier) {
  return identity_on(carrier, carrier);
}

PartialBijection PartialBijection::identity_on(const Interval& carrier, const Interval& set) {
  PartialBijection b;
  b.carrier_ = carrier;
  b.domain_ = intersect(carrier, set);
  b.range_ = b.domain_;
  b.identity_ = true;
  return b;
}

PartialBijection PartialBijection::empty(const Interval& carrier) {
  return identity_on(carrier, Interval::empty());
}

std::optional<double> PartialBijection::apply(double x, double tol) const {
  if (!domain_.contains(x, tol)) return std::nullopt;
  return forward(x);
}

std::optional<double> PartialBijection::apply_inverse(double y, double tol) const {
  if (!range_.contains(y, tol)) return std::nullopt;
  return inverse(y);
}

PartialBijection PartialBijection::inverted() const {
  PartialBijection b = *this;
  std::swap(b.domain_, b.range_);
  std::swap(b.fwd_, b.inv_);
  return b;
}

MonotoneMap PartialBijection::forward_map() const {
  auto self = *this;
  return {[self](double x) { return self.forward(x); }, increasing_, {}, {}};
}

MonotoneMap PartialBijection::inverse_map() const {
  auto self = *this;
  return {[self](double y) { return self.inverse(y); }, increasing_, {}, {}};
}

double PartialBijection::roundtrip_residual(int grid) const {
  double worst = 0.0;
  for (double x : sample_grid(domain_, grid)) {
    double back = inverse(forward(x));
    worst = std::max(worst, std::abs(back - x) / (1.0 + std::abs(x)));
  }
  return worst;
}

PartialBijection compose(const PartialBijection& outer, const PartialBijection& inner) {
  const Interval& carrier = inner.carrier();
  if (outer.is_empty() || inner.is_empty()) return PartialBijection::empty(carrier);
  Interval mid = intersect(inner.range(), outer.domain());
  if (mid.is_empty()) return PartialBijection::empty(carrier);

  if (outer.is_identity_map() && inner.is_identity_map()) return PartialBijection::identity_on(carrier, mid);

  Interval dom = inner.is_identity_map() ? mid : image_monotone(mid, inner.inverse_map());
  Interval ran = outer.is_identity_map() ? mid : image_monotone(mid, outer.forward_map());
  if (dom.is_empty() || ran.is_empty()) return PartialBijection::empty(carrier);

  if (inner.is_identity_map()) {
    auto o = outer;
    return PartialBijection(carrier, dom, ran, [o](double x) { return o.forward(x); },
                            [o](double y) { return o.inverse(y); }, o.increasing());
  }
  if (outer.is_identity_map()) {
    auto i = inner;
    return PartialBijection(carrier, dom, ran, [i](double x) { return i.forward(x); },
                            [i](double y) { return i.inverse(y); }, i.increasing());
  }
  auto o = outer;
  auto i = inner;
  return PartialBijection(
      carrier, dom, ran, [o, i](double x) { return o.forward(i.forward(x)); },
      [o, i](double y) { return i.inverse(o.inverse(y)); }, o.increasing() == i.increasing());
}

Interval power_range_closed_form(const PartialBijection& alpha, int n) {
  if (n == 0) return alpha.carrier();
  if (n < 0) return power_range_closed_form(alpha.inverted(), -n);
  if (n == 1) return alpha.range();
  Interval cap = intersect(alpha.domain(), alpha.range());
  if (cap.is_empty()) return cap;
  auto image = [&](const Interval& s) {
    Interval t = intersect(s, alpha.domain());
    if (t.is_empty()) return t;
    return alpha.is_identity_map() ? t : image_monotone(t, alpha.forward_map());
  };
  // T_k = alpha^k(X_cap), intersected for k = 1..n-1
  Interval t = image(cap);
  Interval out = t;
  for (int k = 2; k <= n - 1 && !out.is_empty(); ++k) {
    t = image(t);
    out = intersect(out, t);
  }
  return out;
}

PartialBijection power(const PartialBijection& alpha, int n) {
  if (n == 0) return PartialBijection::identity(alpha.carrier());
  if (n < 0) return power(alpha.inverted(), -n);
  PartialBijection r = alpha;
  for (int k = 2; k <= n && !r.is_empty(); ++k) r = compose(alpha, r);
  if (r.is_empty()) r = PartialBijection::empty(alpha.carrier());

  if (n >= 2) {
    Interval expect = power_range_closed_form(alpha, n);
    double scale = 1e-9 * (1.0 + std::abs(r.range().lo()) + std::abs(r.range().hi()));
    bool same = expect.is_empty() ? r.range().is_empty() || r.range().is_degenerate()
                                  : (r.range().is_empty() ? expect.is_degenerate()
                                                          : r.range().approx_equal(expect, scale));
    if (!same)
      throw Error("power " + std::to_string(n) + ": iterated range " + r.range().to_string() +
                  " disagrees with intersection formula " + expect.to_string());
  }
  return r;
}

std::string SemigroupElement::to_string() const {
  return "(" + std::to_string(n_plus) + "," + std::to_string(n_minus) + "," + std::to_string(m) + ")";
}

SemigroupElement operator*(const SemigroupElement& s, const SemigroupElement& t) {
  return {std::max(s.n_plus, s.m + t.n_plus), std::min(s.n_minus, s.m + t.n_minus), s.m + t.m};
}

SemigroupElement canonicalize(const std::vector<int>& word) {
  SemigroupElement s;
  int sum = 0;
  for (int w : word) {
    sum += w;
    s.n_plus = std::max(s.n_plus, sum);
    s.n_minus = std::min(s.n_minus, sum);
  }
  s.m = sum;
  return s;
}

PartialBijection to_bijection(const SemigroupElement& s, const PartialBijection& alpha) {
  Interval where = intersect(power_range_closed_form(alpha, s.n_plus), power_range_closed_form(alpha, s.n_minus));
  return compose(PartialBijection::identity_on(alpha.carrier(), where), power(alpha, s.m));
}

PartialBijection compose_word(const std::vector<int>& word, const PartialBijection& alpha) {
  PartialBijection r = PartialBijection::identity(alpha.carrier());
  for (int w : word) r = compose(r, power(alpha, w));
  return r;
}

std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::Shift: return "shift";
    case FamilyKind::PlanePlus: return "plane_plus";
    case FamilyKind::PlaneMinus: return "plane_minus";
    case FamilyKind::Poincare: return "poincare";
    case FamilyKind::Custom: return "custom";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& s) {
  if (s == "shift") return FamilyKind::Shift;
  if (s == "plane_plus") return FamilyKind::PlanePlus;
  if (s == "plane_minus") return FamilyKind::PlaneMinus;
  if (s == "poincare") return FamilyKind::Poincare;
  if (s == "custom") return FamilyKind::Custom;
  throw ParseError("unknown family kind '" + s + "'");
}

BijectionFamily::BijectionFamily(FamilyKind kind, Interval carrier, std::function<double(double, double)> fwd,
                                 std::function<double(double, double)> inv,
                                 std::function<Interval(double)> natural_domain, std::optional<RealMap> beta,
                                 std::optional<double> max_hbar, FamilyParams params)
    : kind_(kind),
      carrier_(std::move(carrier)),
      fwd_(std::move(fwd)),
      inv_(std::move(inv)),
      natural_domain_(std::move(natural_domain)),
      beta_(std::move(beta)),
      max_hbar_(max_hbar),
      params_(std::move(params)) {}

double BijectionFamily::forward_at(double hbar, double x) const { return hbar == 0.0 ? x : fwd_(hbar, x); }

double BijectionFamily::inverse_at(double hbar, double x) const { return hbar == 0.0 ? x : inv_(hbar, x); }

double BijectionFamily::beta(double x, double step) const {
  if (beta_) return (*beta_)(x);
  return (fwd_(step, x) - fwd_(-step, x)) / (2.0 * step);
}

PartialBijection BijectionFamily::at(double hbar) const {
  if (hbar == 0.0) return PartialBijection::identity(carrier_);
  if (!(hbar > 0.0)) throw DomainError("hbar must be >= 0, got " + std::to_string(hbar));
  if (max_hbar_ && hbar >= *max_hbar_)
    throw DomainError(to_string(kind_) + " family needs hbar < " + std::to_string(*max_hbar_));
  Interval d0 = intersect(carrier_, natural_domain_(hbar));
  if (d0.is_empty()) return PartialBijection::empty(carrier_);
  auto f = fwd_;
  auto g = inv_;
  RealMap fw = [f, hbar](double x) { return f(hbar, x); };
  RealMap iv = [g, hbar](double y) { return g(hbar, y); };
  Interval r0 = image_monotone(d0, {fw, true, {}, {}});
  Interval range = intersect(r0, carrier_);
  if (range.is_empty()) return PartialBijection::empty(carrier_);
  Interval domain = intersect(image_monotone(range, {iv, true, {}, {}}), d0);
  if (domain.is_empty()) return PartialBijection::empty(carrier_);
  return PartialBijection(carrier_, domain, range, fw, iv, true);
}

double poincare_alpha(double hbar, double u) {
  if (hbar == 0.0) return u;
  double w = u - 1.0;
  double rad = 1.0 + hbar * w - 0.25 * hbar * hbar * w * w;
  return 1.0 - 2.0 / hbar + (2.0 / hbar) * std::sqrt(rad);
}

double poincare_alpha_inv(double hbar, double x) {
  if (hbar == 0.0) return x;
  double c = x + 0.25 * hbar * (1.0 - x) * (1.0 - x);
  return 1.0 - (2.0 / hbar) * (std::sqrt(1.0 + hbar * (1.0 - c)) - 1.0);
}

namespace {

Interval translate(const Interval& iv, double t) {
  if (iv.is_empty()) return iv;
  return Interval::make(iv.lo() + t, iv.hi() + t, iv.lo_closed(), iv.hi_closed());
}

}  // namespace

BijectionFamily make_family(FamilyKind kind, const Interval& carrier, const FamilyParams& params) {
  if (carrier.is_empty()) throw DomainError("family carrier must be nonempty");
  auto everywhere = [](double) { return Interval::real_line(); };
  switch (kind) {
    case FamilyKind::Shift:
    case FamilyKind::PlaneMinus: {
      auto f = [](double h, double x) { return x + h; };
      auto g = [](double h, double y) { return y - h; };
      return BijectionFamily(kind, carrier, f, g, everywhere, RealMap([](double) { return 1.0; }), {}, params);
    }
    case FamilyKind::PlanePlus: {
      auto f = [](double h, double x) { return x - h; };
      auto g = [](double h, double y) { return y + h; };
      return BijectionFamily(kind, carrier, f, g, everywhere, RealMap([](double) { return -1.0; }), {}, params);
    }
    case FamilyKind::Poincare: {
      // radicand >= 0 on the left, monotone up to the vertex on the right
      auto dom = [](double h) {
        return Interval::closed(1.0 - (2.0 * std::sqrt(2.0) - 2.0) / h, 1.0 + 2.0 / h);
      };
      RealMap beta = [](double u) { return -0.5 * (1.0 - u) * (1.0 - u); };
      return BijectionFamily(kind, carrier, poincare_alpha, poincare_alpha_inv, dom, beta, kPoincareMaxHbar,
                             params);
    }
    case FamilyKind::Custom: {
      if (params.forward_expr.empty() || params.inverse_expr.empty())
        throw ParseError("custom family needs forward and inverse expressions");
      auto fe = Expression::parse(params.forward_expr);
      auto ie = Expression::parse(params.inverse_expr);
      auto nat = params.natural_domain;
      return BijectionFamily(kind, carrier, [fe](double h, double x) { return fe(x, h); },
                             [ie](double h, double y) { return ie(y, h); },
                             [nat](double) { return nat; }, std::nullopt, {}, params);
    }
  }
  throw ParseError("unknown family kind");
}

PartialBijection restricted_shift_action(const Interval& carrier, double hbar, int n) {
  if (!(hbar > 0.0)) throw DomainError("restricted shift needs hbar > 0");
  if (n == 0) return PartialBijection::identity(carrier);
  double t = n * hbar;
  Interval dom = intersect(carrier, translate(carrier, -t));
  Interval ran = intersect(carrier, translate(carrier, t));
  if (dom.is_empty() || ran.is_empty()) return PartialBijection::empty(carrier);
  return PartialBijection(carrier, dom, ran, [t](double x) { return x + t; }, [t](double y) { return y - t; });
}

}  // namespace fuzzcyl
