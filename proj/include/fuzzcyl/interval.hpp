#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzcyl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Membership tolerance used wherever a composed map may land on a boundary.
inline constexpr double kBoundaryTol = 1e-12;

/// A real interval whose endpoints are independently open, closed or
/// infinite. Emptiness is an explicit state; an empty interval never stores
/// lo > hi. Infinite endpoints are always open, and a degenerate interval
/// [x,x] is closed at both ends.
class Interval {
 public:
  /// The empty interval.
  Interval() = default;

  /// Builds an interval; returns the empty interval when the endpoints do not
  /// describe a nonempty set (lo > hi, or lo == hi without both ends closed).
  /// Infinite endpoints are forced open.
  static Interval make(double lo, double hi, bool lo_closed, bool hi_closed);

  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval closed_open(double lo, double hi) { return make(lo, hi, true, false); }
  static Interval open_closed(double lo, double hi) { return make(lo, hi, false, true); }
  static Interval point(double x) { return make(x, x, true, true); }
  static Interval real_line() { return make(-kInf, kInf, false, false); }
  static Interval empty() { return {}; }

  /// Parses "[a,b]", "[a,b)", "(-inf,b]", "(a,+inf)", "R" or "empty".
  static Interval parse(std::string_view text);

  bool is_empty() const { return empty_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool lo_closed() const { return lo_closed_; }
  bool hi_closed() const { return hi_closed_; }
  bool lo_infinite() const { return !empty_ && lo_ == -kInf; }
  bool hi_infinite() const { return !empty_ && hi_ == kInf; }
  bool is_bounded() const { return !empty_ && !lo_infinite() && !hi_infinite(); }
  bool is_degenerate() const { return !empty_ && lo_ == hi_; }
  double length() const { return empty_ ? 0.0 : hi_ - lo_; }

  /// Membership. With tol > 0 closed ends are widened by tol and open ends
  /// require the point to clear the endpoint by more than tol.
  bool contains(double x, double tol = 0.0) const;

  /// True when this interval lies inside `other` up to tol at the endpoints.
  bool is_subset_of(const Interval& other, double tol = 0.0) const;

  /// Exact endpoint and closedness equality; all empty intervals are equal.
  bool operator==(const Interval& other) const;

  /// Endpoint-wise comparison with tolerance (closedness ignored).
  bool approx_equal(const Interval& other, double tol) const;

  std::string to_string() const;

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
  bool lo_closed_ = false;
  bool hi_closed_ = false;
  bool empty_ = true;
};

/// Set-theoretic intersection. At a shared endpoint the result is closed only
/// when both operands are closed there.
Interval intersect(const Interval& a, const Interval& b);

/// Smallest interval containing both operands.
Interval hull(const Interval& a, const Interval& b);

/// A strictly monotone continuous real map together with its limits at
/// +-infinity, used to carry intervals through partial bijections.
struct MonotoneMap {
  std::function<double(double)> fn;
  bool increasing = true;
  /// Value approached as x -> -inf and x -> +inf. Defaults suit maps that
  /// are unbounded in the direction of monotonicity.
  std::optional<double> limit_at_neg_inf;
  std::optional<double> limit_at_pos_inf;
};

/// Image of an interval under a strictly monotone map. Closedness follows
/// the endpoints and is swapped for decreasing maps. The map is sampled at 33
/// interior points; an ordering violation raises MonotonicityError.
Interval image_monotone(const Interval& iv, const MonotoneMap& map);

/// Uniformly spaced sample points. Finite intervals are sampled end to end;
/// infinite sides are replaced by the corresponding side of `window`.
std::vector<double> sample_grid(const Interval& iv, int count,
                                const Interval& window = Interval::closed(-8.0, 8.0));

/// Interior of `iv` shrunk by `margin` on every finite side.
Interval shrink(const Interval& iv, double margin);

}  // namespace fuzzcyl
