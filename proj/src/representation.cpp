#include "fuzzcyl/representation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

std::int64_t point_key(double x) { return static_cast<std::int64_t>(std::llround(x * 1e12)); }

OrbitSpec build_orbit(const PartialBijection& alpha, double x0, int truncation) {
  if (!alpha.carrier().contains(x0)) throw DomainError("base point " + std::to_string(x0) + " not in " + alpha.carrier().to_string());
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  std::deque<double> pts{x0};
  int lo = 0, hi = 0;
  std::optional<double> next_up = alpha.apply(x0);
  std::optional<double> next_down = alpha.apply_inverse(x0);
  bool up_turn = true;
  while (static_cast<int>(pts.size()) < truncation && (next_up || next_down)) {
    bool go_up = next_up && (up_turn || !next_down);
    if (go_up) {
      pts.push_back(*next_up);
      ++hi;
      next_up = alpha.apply(*next_up);
    } else {
      pts.push_front(*next_down);
      --lo;
      next_down = alpha.apply_inverse(*next_down);
    }
    up_turn = !up_turn;
  }
  OrbitSpec o;
  o.x0 = x0;
  o.n_minus = lo;
  o.n_plus = hi;
  o.truncation = truncation;
  o.truncated_minus = next_down.has_value();
  o.truncated_plus = next_up.has_value();
  o.points.assign(pts.begin(), pts.end());
  return o;
}

double orbit_residual(const PartialBijection& alpha, const OrbitSpec& orbit) {
  double worst = 0.0;
  for (int k = 0; k + 1 < orbit.size(); ++k)
    worst = std::max(worst, std::abs(alpha.forward(orbit.points[k]) - orbit.points[k + 1]));
  return worst;
}

int MatrixRep::index_of(double x) const {
  auto it = lookup.find(point_key(x));
  return it == lookup.end() ? -1 : it->second;
}

Eigen::MatrixXcd MatrixRep::pi(const SupportedFunction& f) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim(), dim());
  for (int k = 0; k < dim(); ++k) m(k, k) = f(points[k]);
  return m;
}

Eigen::MatrixXcd MatrixRep::V_pow(int n) const {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(dim(), dim());
  const Eigen::MatrixXcd& step = n >= 0 ? V : Vstar;
  for (int k = 0; k < std::abs(n); ++k) r = step * r;
  return r;
}

MatrixRep make_rep(const PartialBijection& alpha, const std::vector<OrbitSpec>& orbits) {
  MatrixRep rep;
  rep.alpha = alpha;
  rep.orbits = orbits;
  for (const auto& o : orbits) {
    for (int k = 0; k < o.size(); ++k) {
      double x = o.points[k];
      auto key = point_key(x);
      if (rep.lookup.count(key)) continue;
      rep.lookup.emplace(key, rep.dim());
      rep.points.push_back(x);
      int d = INT_MAX / 2;
      if (o.truncated_minus) d = std::min(d, k);
      if (o.truncated_plus) d = std::min(d, o.size() - 1 - k);
      rep.edge_distance.push_back(d);
    }
  }
  int n = rep.dim();
  rep.V = Eigen::MatrixXcd::Zero(n, n);
  // consecutive orbit points, so rounding in alpha never decides adjacency
  for (const auto& o : orbits)
    for (int k = 0; k + 1 < o.size(); ++k)
      rep.V(rep.index_of(o.points[k + 1]), rep.index_of(o.points[k])) = 1.0;
  rep.Vstar = rep.V.adjoint();
  return rep;
}

MatrixRep make_rep(const PartialBijection& alpha, double x0, int truncation) {
  return make_rep(alpha, std::vector<OrbitSpec>{build_orbit(alpha, x0, truncation)});
}

Eigen::MatrixXcd represent(const Element& x, const MatrixRep& rep) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
  for (const auto& [n, f] : x.terms()) out += rep.pi(f) * rep.V_pow(n);
  return out;
}

double masked_max_abs(const Eigen::MatrixXcd& m, const MatrixRep& rep, int margin) {
  double worst = 0.0;
  for (int i = 0; i < rep.dim(); ++i) {
    if (rep.edge_distance[i] < margin) continue;
    for (int j = 0; j < rep.dim(); ++j) {
      if (rep.edge_distance[j] < margin) continue;
      worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

std::vector<CheckResult> covariance_check(const AlgebraPtr& alg, const MatrixRep& rep,
                                          const std::vector<SupportedFunction>& samples, const CovarianceOptions& opt) {
  std::vector<CheckResult> out;
  for (int n : opt.shifts) {
    // truncation only bites within |n| steps of a cut window edge
    int margin = std::abs(n);
    Eigen::MatrixXcd Vn = rep.V_pow(n);
    Eigen::MatrixXcd Vns = rep.V_pow(-n);
    const std::string tag = "n=" + std::to_string(n);

    double r1 = 0.0;
    for (const auto& f0 : samples) {
      SupportedFunction f = restrict(f0, alg->I(-n));
      Eigen::MatrixXcd lhs = Vn * rep.pi(f) * Vns;
      Eigen::MatrixXcd rhs = rep.pi(pullback(f, alg->power(n)));
      r1 = std::max(r1, masked_max_abs(lhs - rhs, rep, margin));
    }
    out.push_back(make_check("V_n pi(f) V_n* = pi(a_n(f)) " + tag, r1, opt.tol,
                             std::to_string(samples.size()) + " samples"));

    // range and source projections, diagonal 0/1 on the right index sets
    Eigen::MatrixXcd rng = Vn * Vns;
    Eigen::MatrixXcd src = Vns * Vn;
    Eigen::MatrixXcd want_rng = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    Eigen::MatrixXcd want_src = Eigen::MatrixXcd::Zero(rep.dim(), rep.dim());
    for (int k = 0; k < rep.dim(); ++k) {
      if (alg->I(n).contains(rep.points[k], kBoundaryTol)) want_rng(k, k) = 1.0;
      if (alg->I(-n).contains(rep.points[k], kBoundaryTol)) want_src(k, k) = 1.0;
    }
    double r2 = std::max(masked_max_abs(rng - want_rng, rep, margin), masked_max_abs(src - want_src, rep, margin));
    out.push_back(make_check("V_n V_n*, V_n* V_n project onto I_n, I_-n " + tag, r2, opt.tol));

    Eigen::MatrixXcd pin = rep.pi(partial_identity(alg->I(n), alg->carrier()));
    out.push_back(make_check("pi(p_n) = V_n V_n* " + tag, masked_max_abs(pin - rng, rep, margin), opt.tol));
  }
  return out;
}

Eigen::MatrixXcd project_to(const Eigen::MatrixXcd& big, const MatrixRep& big_rep, const MatrixRep& small_rep) {
  std::vector<int> idx;
  for (double x : small_rep.points) {
    int j = big_rep.index_of(x);
    if (j < 0) throw DomainError("point " + std::to_string(x) + " missing from the larger representation");
    idx.push_back(j);
  }
  int n = static_cast<int>(idx.size());
  Eigen::MatrixXcd out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = big(idx[a], idx[b]);
  return out;
}

}  // namespace fuzzcyl
