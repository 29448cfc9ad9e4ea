#pragma once

#include <Eigen/Dense>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fuzzcyl/check_report.hpp"
#include "fuzzcyl/crossed_product.hpp"

// Exact enumeration on {0..M-1}. Everything here is table lookup and
// complex sums, so results are exact up to the usual floating point on values.
namespace fuzzcyl::oracle {

using Vec = std::vector<cplx>;
using Set = std::vector<bool>;
using Key = SemigroupElement;

class FinitePartialBijection {
 public:
  FinitePartialBijection() = default;
  // map[x] = image or -1; throws DomainError unless injective
  FinitePartialBijection(int M, std::vector<int> map);

  static FinitePartialBijection identity(int M);
  static FinitePartialBijection identity_on(const Set& s);
  static FinitePartialBijection empty(int M) { return FinitePartialBijection(M, std::vector<int>(M, -1)); }
  static FinitePartialBijection shift(int M);  // k -> k+1 on {0..M-2}

  int size() const { return M_; }
  int operator()(int x) const { return fwd_[x]; }
  int inverse_at(int y) const { return inv_[y]; }
  bool defined(int x) const { return fwd_[x] >= 0; }
  Set domain() const;
  Set range() const;
  const std::vector<int>& map() const { return fwd_; }
  FinitePartialBijection inverse() const;
  bool operator==(const FinitePartialBijection& o) const { return M_ == o.M_ && fwd_ == o.fwd_; }
  std::string to_string() const;

 private:
  int M_ = 0;
  std::vector<int> fwd_, inv_;
};

// outer o inner
FinitePartialBijection compose(const FinitePartialBijection& outer, const FinitePartialBijection& inner);
FinitePartialBijection power(const FinitePartialBijection& b, int n);
FinitePartialBijection compose_word(const std::vector<int>& word, const FinitePartialBijection& alpha);

// independent of the interval code: partial sums of a representative word
Key key_of_word(const std::vector<int>& word);
std::vector<int> word_of_key(const Key& k);
Key key_product(const Key& a, const Key& b);
Key key_star(const Key& k);
// id on X_{n+} n X_{n-}, after alpha^m
FinitePartialBijection bijection_of(const Key& k, const FinitePartialBijection& alpha);

FinitePartialBijection random_injection(int M, std::mt19937_64& rng, double keep = 0.8);
Vec random_vec(int M, std::mt19937_64& rng);
std::vector<Key> keys_up_to(int k);  // all valid triples with |n+|, |n-| <= k

struct FiniteElement {
  std::map<Key, Vec> terms;
};

// L(A, S, alpha) over functions on {0..M-1}
class FiniteCrossedProduct {
 public:
  explicit FiniteCrossedProduct(FinitePartialBijection alpha);

  int size() const { return alpha_.size(); }
  const FinitePartialBijection& alpha() const { return alpha_; }
  const FinitePartialBijection& bij(const Key& k) const;
  Set X(const Key& k) const { return bij(k).range(); }

  Vec p(const Key& k) const;
  // alpha_s(f)(y) = f(alpha_s^{-1} y) on X_s
  Vec act(const Key& s, const Vec& f) const;

  // a delta_s; strict throws DomainError if a lives outside X_s, else masks
  FiniteElement delta(const Key& s, const Vec& a, bool strict = false) const;
  FiniteElement U(const Key& s) const { return delta(s, p(s)); }
  FiniteElement iota(const Vec& a) const { return delta(Key{}, a); }

  FiniteElement multiply(const FiniteElement& x, const FiniteElement& y) const;
  FiniteElement involution(const FiniteElement& x) const;
  FiniteElement random_element(std::mt19937_64& rng, int terms = 3, int key_range = 2) const;

 private:
  FinitePartialBijection alpha_;
  mutable std::map<Key, FinitePartialBijection> cache_;
};

FiniteElement add(const FiniteElement& x, const FiniteElement& y);
FiniteElement scale(const FiniteElement& x, cplx c);
double diff(const FiniteElement& x, const FiniteElement& y);

Vec pointwise(const Vec& a, const Vec& b);
Vec conj(const Vec& a);

// the integer-keyed crossed product, written directly
using ZElement = std::map<int, Vec>;
ZElement z_multiply(const FinitePartialBijection& alpha, const ZElement& x, const ZElement& y);
ZElement z_involution(const FinitePartialBijection& alpha, const ZElement& x);
ZElement quotient(const FiniteElement& x);  // collapse keys to m
FiniteElement lift(const FiniteCrossedProduct& cp, const ZElement& x);
double z_diff(const ZElement& x, const ZElement& y);

// basis = orbit of base, V e_x = e_{alpha(x)}
struct FiniteRep {
  std::vector<int> basis;
  Eigen::MatrixXcd V;
  Eigen::MatrixXcd pi(const Vec& f) const;
  Eigen::MatrixXcd Vn(int n) const;
  Eigen::MatrixXcd of(const FinitePartialBijection& b) const;  // 0/1 matrix of b on the orbit
  Eigen::MatrixXcd represent(const ZElement& x) const;
  Eigen::MatrixXcd represent(const FiniteCrossedProduct& cp, const FiniteElement& x) const;
};
FiniteRep covariant_rep(const FinitePartialBijection& alpha, int base);

// suites, each a list of exact checks
std::vector<CheckResult> power_examples();
std::vector<CheckResult> cpa_relations(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials = 50);
std::vector<CheckResult> algebra_axioms(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials = 50);
std::vector<CheckResult> quotient_relations(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials = 50);
std::vector<CheckResult> canonical_form(const FinitePartialBijection& alpha);
std::vector<CheckResult> idempotent_relations(const FinitePartialBijection& alpha);
std::vector<CheckResult> covariance(const FiniteCrossedProduct& cp, int base, std::mt19937_64& rng, int trials = 20);

// everything above on `instances` random alphas with M in [1, max_M]
std::vector<CheckResult> exhaustive_suite(std::uint64_t seed, int instances = 12, int max_M = 8);

// shift cylinder on the midpoint grid a + h/2 + k h
struct GridSample {
  std::vector<double> points;
  FinitePartialBijection alpha;
};
GridSample sample_interval_to_finite(const AlgebraPtr& alg, int grid_size);
ZElement sample(const Element& x, const GridSample& g);
std::vector<CheckResult> compare_with_interval(const AlgebraPtr& alg, const GridSample& g, std::mt19937_64& rng,
                                               int trials = 20);

}  // namespace fuzzcyl::oracle
