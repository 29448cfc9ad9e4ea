#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fuzzcyl/check_report.hpp"
#include "fuzzcyl/crossed_product.hpp"

namespace fuzzcyl {

// x_n = alpha^n(x0) for n_minus <= n <= n_plus
struct OrbitSpec {
  double x0 = 0.0;
  int n_minus = 0;
  int n_plus = 0;
  int truncation = 0;
  // the orbit goes on past the window on that side
  bool truncated_minus = false;
  bool truncated_plus = false;
  std::vector<double> points;

  int size() const { return static_cast<int>(points.size()); }
  double at(int n) const { return points.at(static_cast<size_t>(n - n_minus)); }
};

// Walks alpha and alpha^{-1} from x0, alternating sides so the window stays
// centred, until both sides leave the carrier or `truncation` points exist.
OrbitSpec build_orbit(const PartialBijection& alpha, double x0, int truncation = 256);

// max |alpha(x_n) - x_{n+1}|
double orbit_residual(const PartialBijection& alpha, const OrbitSpec& orbit);

struct MatrixRep {
  std::vector<OrbitSpec> orbits;
  std::vector<double> points;
  // rows near a truncated window edge: distance to that edge in index steps,
  // large for rows far from any truncation
  std::vector<int> edge_distance;
  Eigen::MatrixXcd V;
  Eigen::MatrixXcd Vstar;
  PartialBijection alpha;

  int dim() const { return static_cast<int>(points.size()); }
  int index_of(double x) const;

  Eigen::MatrixXcd pi(const SupportedFunction& f) const;
  // V^n for n >= 0, (V*)^{-n} otherwise
  Eigen::MatrixXcd V_pow(int n) const;

  std::unordered_map<std::int64_t, int> lookup;
};

std::int64_t point_key(double x);

// direct sum over one or more base points; coinciding points count once
MatrixRep make_rep(const PartialBijection& alpha, const std::vector<OrbitSpec>& orbits);
MatrixRep make_rep(const PartialBijection& alpha, double x0, int truncation = 256);

// sum_n pi(f_n) V_n
Eigen::MatrixXcd represent(const Element& x, const MatrixRep& rep);

struct CovarianceOptions {
  std::vector<int> shifts{-2, -1, 0, 1, 2};
  double tol = 1e-10;
};

std::vector<CheckResult> covariance_check(const AlgebraPtr& alg, const MatrixRep& rep,
                                          const std::vector<SupportedFunction>& samples,
                                          const CovarianceOptions& opt = {});

// max |entry| over rows and columns at distance >= margin from a truncated edge
double masked_max_abs(const Eigen::MatrixXcd& m, const MatrixRep& rep, int margin);

// P big P for the coordinate projector onto the points of small_rep, written
// in small_rep's ordering
Eigen::MatrixXcd project_to(const Eigen::MatrixXcd& big, const MatrixRep& big_rep, const MatrixRep& small_rep);

}  // namespace fuzzcyl
