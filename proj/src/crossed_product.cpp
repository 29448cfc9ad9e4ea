#include "fuzzcyl/crossed_product.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

std::string to_string(CylinderKind k) {
  switch (k) {
    case CylinderKind::Finite: return "finite";
    case CylinderKind::HalfFinite: return "half_finite";
    case CylinderKind::Infinite: return "infinite";
    case CylinderKind::General: return "general";
  }
  return "?";
}

CylinderKind parse_cylinder_kind(const std::string& s) {
  if (s == "finite") return CylinderKind::Finite;
  if (s == "half_finite" || s == "half-finite") return CylinderKind::HalfFinite;
  if (s == "infinite") return CylinderKind::Infinite;
  if (s == "general") return CylinderKind::General;
  throw ParseError("unknown cylinder kind '" + s + "'");
}

CylinderAlgebra::CylinderAlgebra(PartialBijection alpha, CylinderKind kind, std::optional<double> hbar)
    : alpha_(std::move(alpha)), kind_(kind), hbar_(hbar) {}

const PartialBijection& CylinderAlgebra::power(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = powers_.find(n);
  if (it != powers_.end()) return it->second;
  // the ideals are nested, once empty always empty
  int prev = n > 0 ? n - 1 : n + 1;
  auto p = powers_.find(prev);
  if (n != 0 && p != powers_.end() && p->second.is_empty() && prev != 0)
    return powers_.emplace(n, PartialBijection::empty(alpha_.carrier())).first->second;
  return powers_.emplace(n, fuzzcyl::power(alpha_, n)).first->second;
}

std::optional<int> CylinderAlgebra::empty_index(int cap) const {
  if (kind_ == CylinderKind::Infinite || kind_ == CylinderKind::HalfFinite) return std::nullopt;
  for (int n = 1; n <= cap; ++n)
    if (I(n).is_empty()) return n;
  return std::nullopt;
}

std::optional<int> CylinderAlgebra::order_N() const {
  if (kind_ != CylinderKind::Finite || !hbar_) return std::nullopt;
  const Interval& c = carrier();
  return static_cast<int>(std::floor((c.hi() - c.lo()) / *hbar_)) + 1;
}

AlgebraPtr make_algebra(const PartialBijection& alpha, CylinderKind kind, std::optional<double> hbar) {
  return std::make_shared<const CylinderAlgebra>(alpha, kind, hbar);
}

AlgebraPtr make_cylinder(CylinderKind kind, const Interval& interval, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("cylinder needs hbar > 0");
  switch (kind) {
    case CylinderKind::Finite:
      if (!interval.is_bounded() || !interval.lo_closed() || !interval.hi_closed())
        throw DomainError("finite cylinder needs a closed bounded interval, got " + interval.to_string());
      break;
    case CylinderKind::HalfFinite:
      if (interval.is_empty() || interval.lo_infinite() || !interval.hi_infinite() || !interval.lo_closed())
        throw DomainError("half-finite cylinder needs [a,inf), got " + interval.to_string());
      break;
    case CylinderKind::Infinite:
      if (!(interval == Interval::real_line()))
        throw DomainError("infinite cylinder lives on R, got " + interval.to_string());
      break;
    case CylinderKind::General:
      break;
  }
  return make_algebra(make_family(FamilyKind::Shift, interval).at(hbar), kind, hbar);
}

Element Element::single(const AlgebraPtr& alg, int n, const SupportedFunction& f, TermMode mode) {
  Element e(alg);
  e.add_term(n, f, mode);
  return e;
}

SupportedFunction Element::term(int n) const {
  auto it = terms_.find(n);
  if (it == terms_.end()) return SupportedFunction::zero(alg_ ? alg_->carrier() : Interval::empty());
  return it->second;
}

cplx Element::eval(int n, double x) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? cplx{} : it->second(x);
}

std::vector<int> Element::keys() const {
  std::vector<int> k;
  for (const auto& [n, f] : terms_) k.push_back(n);
  return k;
}

Element& Element::add_term(int n, const SupportedFunction& f, TermMode mode) {
  if (!alg_) throw GeneratorMismatch("element has no algebra");
  if (f.is_zero()) return *this;
  if (!f.carrier().approx_equal(alg_->carrier(), kBoundaryTol))
    throw DomainError("term carrier " + f.carrier().to_string() + " differs from " + alg_->carrier().to_string());
  const Interval& ideal = alg_->I(n);
  SupportedFunction g = f;
  if (!f.support().is_subset_of(ideal, kBoundaryTol)) {
    if (mode == TermMode::Strict)
      throw DomainError("term " + std::to_string(n) + ": support " + f.support().to_string() + " not inside I_" +
                        std::to_string(n) + " = " + ideal.to_string());
    g = restrict(f, ideal);
  }
  if (g.is_zero()) return *this;
  auto it = terms_.find(n);
  if (it == terms_.end()) {
    terms_.emplace(n, g);
  } else {
    it->second = fuzzcyl::add(it->second, g);
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

namespace {

void same_algebra(const Element& x, const Element& y) {
  if (!x.algebra() || !y.algebra() || x.algebra() != y.algebra())
    throw GeneratorMismatch("elements belong to different cylinder algebras");
}

}  // namespace

Element multiply(const Element& x, const Element& y) {
  same_algebra(x, y);
  const auto& alg = x.algebra();
  Element out(alg);
  for (const auto& [n, f] : x.terms()) {
    for (const auto& [m, g] : y.terms()) {
      // f_n (g_m restricted to I_{-n}, then o alpha^{-n})
      SupportedFunction moved = pullback(restrict(g, alg->I(-n)), alg->power(n));
      SupportedFunction prod = fuzzcyl::multiply(f, moved);
      if (prod.is_zero()) continue;
      // supports are exact by construction; Clip only shaves rounding
      out.add_term(n + m, prod, TermMode::Clip);
    }
  }
  return out;
}

Element involution(const Element& x) {
  Element out(x.algebra());
  if (!x.algebra()) return out;
  for (const auto& [n, f] : x.terms())
    out.add_term(-n, pullback(conj(f), x.algebra()->power(-n)), TermMode::Clip);
  return out;
}

Element add(const Element& x, const Element& y) {
  same_algebra(x, y);
  Element out = x;
  for (const auto& [m, g] : y.terms()) out.add_term(m, g);
  return out;
}

Element scale(const Element& x, cplx c) {
  Element out(x.algebra());
  for (const auto& [n, f] : x.terms()) out.add_term(n, fuzzcyl::scale(f, c));
  return out;
}

Element subtract(const Element& x, const Element& y) { return add(x, scale(y, -1.0)); }

Element projector(const AlgebraPtr& alg, int n) {
  return Element::single(alg, 0, partial_identity(alg->I(n), alg->carrier()));
}

Element generator_U(const AlgebraPtr& alg) {
  return Element::single(alg, 1, partial_identity(alg->I(1), alg->carrier()), TermMode::Strict);
}

Element generator_U_star(const AlgebraPtr& alg) {
  return Element::single(alg, -1, partial_identity(alg->I(-1), alg->carrier()), TermMode::Strict);
}

Element diagonal(const AlgebraPtr& alg, const SupportedFunction& f) { return Element::single(alg, 0, f); }

Element power(const Element& x, int k) {
  if (k < 1) throw DomainError("element power needs k >= 1");
  Element r = x;
  for (int i = 1; i < k; ++i) r = multiply(r, x);
  return r;
}

double residual_on(const Element& x, const Element& y, const std::vector<double>& points) {
  std::set<int> keys;
  for (const auto& [n, f] : x.terms()) keys.insert(n);
  for (const auto& [n, f] : y.terms()) keys.insert(n);
  double worst = 0.0;
  for (int n : keys)
    for (double p : points) worst = std::max(worst, std::abs(x.eval(n, p) - y.eval(n, p)));
  return worst;
}

double residual(const Element& x, const Element& y, const GridOptions& opt) {
  const AlgebraPtr& alg = x.algebra() ? x.algebra() : y.algebra();
  if (!alg) return 0.0;
  return residual_on(x, y, carrier_grid(alg->carrier(), opt));
}

bool supports_sound(const Element& x, double tol) {
  if (!x.algebra()) return x.is_zero();
  for (const auto& [n, f] : x.terms())
    if (!f.support().is_subset_of(x.algebra()->I(n), tol)) return false;
  return true;
}

std::vector<CheckResult> u_relations_check(const AlgebraPtr& alg, const std::vector<SupportedFunction>& probes,
                                           double tol, const GridOptions& opt) {
  std::vector<CheckResult> out;
  Element U = generator_U(alg);
  Element Us = generator_U_star(alg);
  const Interval& c = alg->carrier();
  out.push_back(make_check("UU*=p1", residual(U * Us, projector(alg, 1), opt), tol));
  out.push_back(make_check("U*U=p-1", residual(Us * U, projector(alg, -1), opt), tol));
  out.push_back(make_check("UU*U=U", residual(U * Us * U, U, opt), tol));
  out.push_back(make_check("U*UU*=U*", residual(Us * U * Us, Us, opt), tol));
  SupportedFunction pm1 = partial_identity(alg->I(-1), c);
  SupportedFunction p1 = partial_identity(alg->I(1), c);
  double rf = 0.0, rfs = 0.0;
  for (const auto& f : probes) {
    Element F = diagonal(alg, f);
    Element rhs = diagonal(alg, pullback(fuzzcyl::multiply(pm1, f), alg->power(1))) * U;
    rf = std::max(rf, residual(U * F, rhs, opt));
    Element rhs2 = diagonal(alg, pullback(fuzzcyl::multiply(p1, f), alg->power(-1))) * Us;
    rfs = std::max(rfs, residual(Us * F, rhs2, opt));
  }
  out.push_back(make_check("Uf=((p-1 f)oa^-1)U", rf, tol, std::to_string(probes.size()) + " probes"));
  out.push_back(make_check("U*f=((p1 f)oa)U*", rfs, tol, std::to_string(probes.size()) + " probes"));
  return out;
}

std::optional<int> u_nilpotency(const AlgebraPtr& alg, int cap) {
  Element U = generator_U(alg);
  Element Uk = U;
  for (int k = 1; k <= cap; ++k) {
    if (Uk.is_zero()) return k;
    Uk = Uk * U;
  }
  return std::nullopt;
}

Element reindex(const Element& x, const AlgebraPtr& inverse_alg) {
  Element out(inverse_alg);
  for (const auto& [n, f] : x.terms()) out.add_term(-n, f, TermMode::Strict);
  return out;
}

CheckResult equal_as_cyl(const Element& x, const Element& y, double tol, const GridOptions& opt) {
  if (!x.algebra() || !y.algebra()) return make_check("Cyl(a)=Cyl(a^-1)", 0.0, tol, "zero elements");
  const PartialBijection& a = x.algebra()->alpha();
  const PartialBijection& b = y.algebra()->alpha();
  bool inverse_pair = a.domain().approx_equal(b.range(), 1e-12) && a.range().approx_equal(b.domain(), 1e-12);
  double inv_res = 0.0;
  for (double t : sample_grid(a.domain(), 33, opt.window)) inv_res = std::max(inv_res, std::abs(b.forward(a.forward(t)) - t));
  if (!inverse_pair || inv_res > 1e-10)
    return {"Cyl(a)=Cyl(a^-1)", inv_res, tol, false, "second generator is not the inverse of the first"};
  std::set<int> keys;
  for (const auto& [n, f] : x.terms()) keys.insert(n);
  for (const auto& [n, f] : y.terms()) keys.insert(-n);
  double worst = 0.0;
  for (int n : keys)
    for (double p : carrier_grid(x.algebra()->carrier(), opt))
      worst = std::max(worst, std::abs(x.eval(n, p) - y.eval(-n, p)));
  return make_check("Cyl(a)=Cyl(a^-1)", worst, tol);
}

CheckResult fixed_point_subalgebra_check(const AlgebraPtr& alg, const Interval& fixed,
                                         const std::vector<Element>& elems, double tol, const GridOptions& opt) {
  const std::string name = "fixed-point subalgebra commutes";
  if (fixed.is_empty()) return make_check(name, 0.0, tol, "vacuous: no fixed points");
  const PartialBijection& a = alg->alpha();
  double fix_res = 0.0;
  for (double t : sample_grid(fixed, 33, opt.window)) {
    auto y = a.apply(t);
    fix_res = std::max(fix_res, y ? std::abs(*y - t) : INFINITY);
  }
  if (!(fix_res <= 1e-12))
    return {name, fix_res, tol, false, "precondition: alpha does not fix " + fixed.to_string()};
  for (const auto& e : elems)
    for (const auto& [n, f] : e.terms())
      if (!f.support().is_subset_of(fixed, kBoundaryTol))
        return {name, INFINITY, tol, false, "precondition: a term is supported outside " + fixed.to_string()};
  double worst = 0.0;
  std::string detail;
  for (size_t i = 0; i < elems.size(); ++i) {
    for (size_t j = i; j < elems.size(); ++j) {
      Element xy = elems[i] * elems[j];
      Element yx = elems[j] * elems[i];
      for (const auto& [n, f] : xy.terms())
        if (!f.support().is_subset_of(fixed, kBoundaryTol))
          return {name, INFINITY, tol, false, "product leaves the fixed set"};
      double r = residual(xy, yx, opt);
      if (r > worst) {
        worst = r;
        if (r > tol && detail.empty()) detail = "pair (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  return make_check(name, worst, tol, detail);
}

}  // namespace fuzzcyl
