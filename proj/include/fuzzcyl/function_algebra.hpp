#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fuzzcyl/interval.hpp"
#include "fuzzcyl/partial_bijection.hpp"

namespace fuzzcyl {

using cplx = std::complex<double>;
using ComplexMap = std::function<cplx(double)>;

/// Complex function on a carrier, hard-zeroed outside its support.
class SupportedFunction {
 public:
  /// zero function on the empty carrier
  SupportedFunction() = default;
  SupportedFunction(Interval carrier, Interval support, ComplexMap f, std::string label = {},
                    std::optional<ComplexMap> derivative = std::nullopt);

  static SupportedFunction zero(const Interval& carrier);

  cplx operator()(double x) const;
  /// analytic derivative when one was supplied, else a centered difference
  cplx derivative(double x, double step = 1e-5) const;
  bool has_analytic_derivative() const { return static_cast<bool>(deriv_); }

  const Interval& carrier() const { return carrier_; }
  const Interval& support() const { return support_; }
  const std::string& label() const { return label_; }
  bool is_zero() const { return support_.is_empty() || !fn_; }

  /// evaluates the wrapped callable without the support mask
  cplx raw(double x) const { return fn_ ? (*fn_)(x) : cplx{}; }

  SupportedFunction with_label(std::string label) const;

 private:
  Interval carrier_;
  Interval support_;
  std::shared_ptr<const ComplexMap> fn_;
  std::shared_ptr<const ComplexMap> deriv_;
  std::string label_;
};

SupportedFunction multiply(const SupportedFunction& f, const SupportedFunction& g);
SupportedFunction add(const SupportedFunction& f, const SupportedFunction& g);
SupportedFunction subtract(const SupportedFunction& f, const SupportedFunction& g);
SupportedFunction scale(const SupportedFunction& f, cplx c);
SupportedFunction conj(const SupportedFunction& f);

SupportedFunction partial_identity(const Interval& iv, const Interval& carrier);

/// x -> f(alpha^{-1}(x)) on alpha(support f); DomainError if support f
/// is not inside domain(alpha)
SupportedFunction pullback(const SupportedFunction& f, const PartialBijection& alpha);

SupportedFunction restrict(const SupportedFunction& f, const Interval& iv);

/// x -> f(x) composed with an arbitrary real map, support given by the caller
SupportedFunction compose_real(const SupportedFunction& f, const RealMap& map, const Interval& support,
                               std::string label = {});

struct GridOptions {
  int grid_size = 101;
  Interval window = Interval::closed(-8.0, 8.0);
};

std::vector<double> carrier_grid(const Interval& carrier, const GridOptions& opt = {});

double max_abs_diff(const SupportedFunction& f, const SupportedFunction& g, const std::vector<double>& points);
double max_abs_diff(const SupportedFunction& f, const SupportedFunction& g, const GridOptions& opt = {});

bool approx_equal(const SupportedFunction& f, const SupportedFunction& g, int grid_size, double tol,
                  const Interval& window = Interval::closed(-8.0, 8.0));

enum class Flavor { F, C, C0 };

/// F accepts everything; C rejects jumps at support edges inside the
/// carrier; C0 also wants decay at the carrier ends. Returns the failure text.
std::optional<std::string> flavor_violation(const SupportedFunction& f, Flavor flavor, double tol = 1e-9);

// builtins
SupportedFunction constant(cplx c, const Interval& carrier, const Interval& support);
SupportedFunction polynomial(const std::vector<cplx>& coeffs, const Interval& carrier, const Interval& support);
SupportedFunction exp_i(double k, const Interval& carrier, const Interval& support);
SupportedFunction sqrt_affine(double a, double b, const Interval& carrier, const Interval& support);
SupportedFunction indicator(const Interval& iv, const Interval& carrier);
SupportedFunction from_real(const RealMap& f, const Interval& carrier, const Interval& support,
                            std::string label = {});

}  // namespace fuzzcyl
