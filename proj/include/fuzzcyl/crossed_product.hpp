#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fuzzcyl/check_report.hpp"
#include "fuzzcyl/function_algebra.hpp"
#include "fuzzcyl/partial_bijection.hpp"

namespace fuzzcyl {

enum class CylinderKind { Finite, HalfFinite, Infinite, General };

std::string to_string(CylinderKind k);
CylinderKind parse_cylinder_kind(const std::string& s);

// Cyl(I, alpha). Shared by every element built over it; powers of alpha are
// computed once.
class CylinderAlgebra {
 public:
  CylinderAlgebra(PartialBijection alpha, CylinderKind kind = CylinderKind::General,
                  std::optional<double> hbar = std::nullopt);

  const PartialBijection& alpha() const { return alpha_; }
  const Interval& carrier() const { return alpha_.carrier(); }
  CylinderKind kind() const { return kind_; }
  std::optional<double> hbar() const { return hbar_; }

  // alpha^n : I_{-n} -> I_n
  const PartialBijection& power(int n) const;
  const Interval& I(int n) const { return power(n).range(); }

  // smallest n >= 1 with I_n empty, searching up to cap; nullopt if none
  std::optional<int> empty_index(int cap = 4096) const;

  // finite kind: smallest natural N with N hbar > b - a
  std::optional<int> order_N() const;

 private:
  PartialBijection alpha_;
  CylinderKind kind_;
  std::optional<double> hbar_;
  mutable std::mutex mu_;
  mutable std::map<int, PartialBijection> powers_;
};

using AlgebraPtr = std::shared_ptr<const CylinderAlgebra>;

AlgebraPtr make_algebra(const PartialBijection& alpha, CylinderKind kind = CylinderKind::General,
                        std::optional<double> hbar = std::nullopt);

// shift cylinders: finite [a,b], half_finite [a,inf), infinite R
AlgebraPtr make_cylinder(CylinderKind kind, const Interval& interval, double hbar);

enum class TermMode { Clip, Strict };

// finite sum  sum_n f_n delta_n  with supp f_n inside I_n
class Element {
 public:
  Element() = default;
  explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Element zero(const AlgebraPtr& alg) { return Element(alg); }
  static Element single(const AlgebraPtr& alg, int n, const SupportedFunction& f, TermMode mode = TermMode::Clip);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<int, SupportedFunction>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  SupportedFunction term(int n) const;
  cplx eval(int n, double x) const;

  // adds f delta_n; Clip restricts to I_n, Strict throws DomainError
  Element& add_term(int n, const SupportedFunction& f, TermMode mode = TermMode::Clip);

  std::vector<int> keys() const;

 private:
  AlgebraPtr alg_;
  std::map<int, SupportedFunction> terms_;
};

Element multiply(const Element& x, const Element& y);
Element involution(const Element& x);
Element add(const Element& x, const Element& y);
Element subtract(const Element& x, const Element& y);
Element scale(const Element& x, cplx c);

inline Element operator*(const Element& x, const Element& y) { return multiply(x, y); }
inline Element operator+(const Element& x, const Element& y) { return add(x, y); }
inline Element operator-(const Element& x, const Element& y) { return subtract(x, y); }

// U = p_1 delta_1, U* = p_{-1} delta_{-1}, p_n delta_0
Element generator_U(const AlgebraPtr& alg);
Element generator_U_star(const AlgebraPtr& alg);
Element projector(const AlgebraPtr& alg, int n);
Element diagonal(const AlgebraPtr& alg, const SupportedFunction& f);
Element power(const Element& x, int k);

// max over all keys and grid points of |x_n - y_n|
double residual(const Element& x, const Element& y, const GridOptions& opt = {});
double residual_on(const Element& x, const Element& y, const std::vector<double>& points);

// does every term sit inside its ideal (within tol)
bool supports_sound(const Element& x, double tol = kBoundaryTol);

std::vector<CheckResult> u_relations_check(const AlgebraPtr& alg, const std::vector<SupportedFunction>& probes,
                                           double tol = 1e-12, const GridOptions& opt = {});

// smallest k >= 1 with U^k = 0, up to cap
std::optional<int> u_nilpotency(const AlgebraPtr& alg, int cap = 256);

// the same element seen in Cyl(alpha^{-1}): keys flipped n -> -n
Element reindex(const Element& x, const AlgebraPtr& inverse_alg);

CheckResult equal_as_cyl(const Element& x, const Element& y, double tol = 1e-12, const GridOptions& opt = {});

CheckResult fixed_point_subalgebra_check(const AlgebraPtr& alg, const Interval& fixed,
                                         const std::vector<Element>& elems, double tol = 1e-12,
                                         const GridOptions& opt = {});

}  // namespace fuzzcyl
