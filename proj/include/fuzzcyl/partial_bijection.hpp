#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuzzcyl/interval.hpp"

namespace fuzzcyl {

using RealMap = std::function<double(double)>;

// Monotone continuous bijection domain -> range inside a carrier interval.
// Forward and inverse are both explicit; nothing here inverts numerically.
class PartialBijection {
 public:
  PartialBijection() = default;
  PartialBijection(Interval carrier, Interval domain, Interval range, RealMap forward, RealMap inverse,
                   bool increasing = true);

  static PartialBijection identity(const Interval& carrier);
  static PartialBijection identity_on(const Interval& carrier, const Interval& set);
  static PartialBijection empty(const Interval& carrier);

  const Interval& carrier() const { return carrier_; }
  const Interval& domain() const { return domain_; }
  const Interval& range() const { return range_; }
  bool is_empty() const { return domain_.is_empty(); }
  bool increasing() const { return increasing_; }
  bool is_identity_map() const { return identity_; }

  // raw evaluation, no domain test
  double forward(double x) const { return identity_ ? x : (*fwd_)(x); }
  double inverse(double y) const { return identity_ ? y : (*inv_)(y); }

  std::optional<double> apply(double x, double tol = kBoundaryTol) const;
  std::optional<double> apply_inverse(double y, double tol = kBoundaryTol) const;

  PartialBijection inverted() const;
  MonotoneMap forward_map() const;
  MonotoneMap inverse_map() const;

  // max |inverse(forward(x)) - x| / (1 + |x|) over a grid of the domain
  double roundtrip_residual(int grid = 101) const;

 private:
  Interval carrier_;
  Interval domain_;
  Interval range_;
  std::shared_ptr<const RealMap> fwd_;
  std::shared_ptr<const RealMap> inv_;
  bool increasing_ = true;
  bool identity_ = false;
};

// outer after inner on the largest domain where it makes sense
PartialBijection compose(const PartialBijection& outer, const PartialBijection& inner);

// n-fold composition; throws Error if the iterated domain disagrees with the
// intersection formula X_n = a^{n-1}(X_cap) n ... n a(X_cap)
PartialBijection power(const PartialBijection& alpha, int n);

// the range I_n of alpha^n, by the intersection formula only
Interval power_range_closed_form(const PartialBijection& alpha, int n);

// eps_{n+} eps_{n-} alpha^m
struct SemigroupElement {
  int n_plus = 0;
  int n_minus = 0;
  int m = 0;

  bool operator==(const SemigroupElement&) const = default;
  auto operator<=>(const SemigroupElement&) const = default;

  SemigroupElement star() const { return {n_plus - m, n_minus - m, -m}; }
  bool is_idempotent() const { return m == 0; }
  bool valid() const { return n_plus >= 0 && n_minus <= 0 && n_plus >= m && n_minus <= m; }
  std::string to_string() const;
};

SemigroupElement operator*(const SemigroupElement& s, const SemigroupElement& t);

// The word lists exponents left to right; the leftmost factor acts last.
SemigroupElement canonicalize(const std::vector<int>& word);

PartialBijection to_bijection(const SemigroupElement& s, const PartialBijection& alpha);
PartialBijection compose_word(const std::vector<int>& word, const PartialBijection& alpha);

enum class FamilyKind { Shift, PlanePlus, PlaneMinus, Poincare, Custom };

std::string to_string(FamilyKind k);
FamilyKind parse_family_kind(const std::string& s);

struct FamilyParams {
  // custom only: forward and inverse expressions in x and h
  std::string forward_expr;
  std::string inverse_expr;
  // custom only: where the expressions are valid and monotone
  Interval natural_domain = Interval::real_line();
};

// hbar -> partial bijection of a fixed carrier, identity at hbar = 0
class BijectionFamily {
 public:
  BijectionFamily() = default;
  BijectionFamily(FamilyKind kind, Interval carrier, std::function<double(double, double)> fwd,
                  std::function<double(double, double)> inv,
                  std::function<Interval(double)> natural_domain,
                  std::optional<RealMap> beta, std::optional<double> max_hbar, FamilyParams params);

  FamilyKind kind() const { return kind_; }
  const Interval& carrier() const { return carrier_; }
  const FamilyParams& params() const { return params_; }
  std::optional<double> max_hbar() const { return max_hbar_; }

  PartialBijection at(double hbar) const;

  // closed form evaluation at any hbar, hbar = 0 giving x
  double forward_at(double hbar, double x) const;
  double inverse_at(double hbar, double x) const;

  // d alpha_h(x) / dh at h = 0: closed form if known, else centered difference
  double beta(double x, double step = 1e-4) const;
  bool has_exact_beta() const { return beta_.has_value(); }

 private:
  FamilyKind kind_ = FamilyKind::Shift;
  Interval carrier_;
  std::function<double(double, double)> fwd_;
  std::function<double(double, double)> inv_;
  std::function<Interval(double)> natural_domain_;
  std::optional<RealMap> beta_;
  std::optional<double> max_hbar_;
  FamilyParams params_;
};

BijectionFamily make_family(FamilyKind kind, const Interval& carrier, const FamilyParams& params = {});

// Poincare "+" branch in closed form
double poincare_alpha(double hbar, double u);
double poincare_alpha_inv(double hbar, double x);
inline constexpr double kPoincareMaxHbar = 0.82842712474619009760;  // 2 sqrt 2 - 2

// translate by n*hbar on the real line, then intersect with the carrier
PartialBijection restricted_shift_action(const Interval& carrier, double hbar, int n);

}  // namespace fuzzcyl
