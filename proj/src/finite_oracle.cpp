#include "fuzzcyl/finite_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl::oracle {

FinitePartialBijection::FinitePartialBijection(int M, std::vector<int> map) : M_(M), fwd_(std::move(map)) {
  if (static_cast<int>(fwd_.size()) != M) throw DomainError("finite map has wrong length");
  inv_.assign(M, -1);
  for (int x = 0; x < M; ++x) {
    int y = fwd_[x];
    if (y < 0) continue;
    if (y >= M) throw DomainError("finite map leaves {0.." + std::to_string(M - 1) + "}");
    if (inv_[y] >= 0) throw DomainError("finite map is not injective at " + std::to_string(y));
    inv_[y] = x;
  }
}

FinitePartialBijection FinitePartialBijection::identity(int M) {
  std::vector<int> m(M);
  for (int x = 0; x < M; ++x) m[x] = x;
  return FinitePartialBijection(M, m);
}

FinitePartialBijection FinitePartialBijection::identity_on(const Set& s) {
  int M = static_cast<int>(s.size());
  std::vector<int> m(M, -1);
  for (int x = 0; x < M; ++x)
    if (s[x]) m[x] = x;
  return FinitePartialBijection(M, m);
}

FinitePartialBijection FinitePartialBijection::shift(int M) {
  std::vector<int> m(M, -1);
  for (int x = 0; x + 1 < M; ++x) m[x] = x + 1;
  return FinitePartialBijection(M, m);
}

Set FinitePartialBijection::domain() const {
  Set s(M_);
  for (int x = 0; x < M_; ++x) s[x] = fwd_[x] >= 0;
  return s;
}

Set FinitePartialBijection::range() const {
  Set s(M_);
  for (int y = 0; y < M_; ++y) s[y] = inv_[y] >= 0;
  return s;
}

FinitePartialBijection FinitePartialBijection::inverse() const { return FinitePartialBijection(M_, inv_); }

std::string FinitePartialBijection::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int x = 0; x < M_; ++x) {
    if (fwd_[x] < 0) continue;
    os << (first ? "" : ", ") << x << "->" << fwd_[x];
    first = false;
  }
  os << "}";
  return os.str();
}

FinitePartialBijection compose(const FinitePartialBijection& outer, const FinitePartialBijection& inner) {
  int M = inner.size();
  std::vector<int> m(M, -1);
  for (int x = 0; x < M; ++x) {
    int y = inner(x);
    if (y >= 0) m[x] = outer(y);
  }
  return FinitePartialBijection(M, m);
}

FinitePartialBijection power(const FinitePartialBijection& b, int n) {
  FinitePartialBijection step = n >= 0 ? b : b.inverse();
  FinitePartialBijection r = FinitePartialBijection::identity(b.size());
  for (int k = 0; k < std::abs(n); ++k) r = compose(step, r);
  return r;
}

FinitePartialBijection compose_word(const std::vector<int>& word, const FinitePartialBijection& alpha) {
  FinitePartialBijection r = FinitePartialBijection::identity(alpha.size());
  for (int w : word) r = compose(r, power(alpha, w));
  return r;
}

Key key_of_word(const std::vector<int>& word) {
  Key k;
  int s = 0;
  for (int w : word) {
    s += w;
    if (s > k.n_plus) k.n_plus = s;
    if (s < k.n_minus) k.n_minus = s;
  }
  k.m = s;
  return k;
}

std::vector<int> word_of_key(const Key& k) { return {k.n_plus, k.n_minus - k.n_plus, k.m - k.n_minus}; }

Key key_product(const Key& a, const Key& b) {
  auto w = word_of_key(a);
  auto v = word_of_key(b);
  w.insert(w.end(), v.begin(), v.end());
  return key_of_word(w);
}

Key key_star(const Key& k) {
  auto w = word_of_key(k);
  std::reverse(w.begin(), w.end());
  for (int& x : w) x = -x;
  return key_of_word(w);
}

FinitePartialBijection bijection_of(const Key& k, const FinitePartialBijection& alpha) {
  Set a = power(alpha, k.n_plus).range();
  Set b = power(alpha, k.n_minus).range();
  for (size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
  return compose(FinitePartialBijection::identity_on(a), power(alpha, k.m));
}

FinitePartialBijection random_injection(int M, std::mt19937_64& rng, double keep) {
  std::vector<int> perm(M);
  for (int i = 0; i < M; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(keep);
  std::vector<int> m(M, -1);
  for (int x = 0; x < M; ++x)
    if (coin(rng)) m[x] = perm[x];
  return FinitePartialBijection(M, m);
}

Vec random_vec(int M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(M);
  for (auto& c : v) c = {u(rng), u(rng)};
  return v;
}

std::vector<Key> keys_up_to(int k) {
  std::vector<Key> out;
  for (int p = 0; p <= k; ++p)
    for (int q = -k; q <= 0; ++q)
      for (int m = q; m <= p; ++m) out.push_back({p, q, m});
  return out;
}

Vec pointwise(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Vec conj(const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::conj(a[i]);
  return r;
}

namespace {

void accumulate(Vec& into, const Vec& v) {
  if (into.empty()) into.assign(v.size(), cplx{});
  for (size_t i = 0; i < v.size(); ++i) into[i] += v[i];
}

double vec_diff(const Vec* a, const Vec* b, int M) {
  double w = 0.0;
  for (int i = 0; i < M; ++i) {
    cplx x = a ? (*a)[i] : cplx{}, y = b ? (*b)[i] : cplx{};
    w = std::max(w, std::abs(x - y));
  }
  return w;
}

template <class K>
double map_diff(const std::map<K, Vec>& x, const std::map<K, Vec>& y) {
  int M = 0;
  for (const auto* m : {&x, &y})
    for (const auto& [k, v] : *m) M = static_cast<int>(v.size());
  double w = 0.0;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    w = std::max(w, vec_diff(&v, it == y.end() ? nullptr : &it->second, M));
  }
  for (const auto& [k, v] : y)
    if (!x.count(k)) w = std::max(w, vec_diff(nullptr, &v, M));
  return w;
}

double bij_diff(const FinitePartialBijection& a, const FinitePartialBijection& b) { return a == b ? 0.0 : 1.0; }

double mat_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

// fold many checks with one name into the worst one
void push_max(std::vector<CheckResult>& out, const std::string& name, double r, double tol = 1e-14,
              const std::string& detail = {}) {
  for (auto& c : out)
    if (c.relation == name) {
      if (!(r <= c.residual)) {
        c.residual = r;
        c.detail = detail;
      }
      c.pass = c.residual <= c.tolerance;
      return;
    }
  out.push_back(make_check(name, r, tol, detail));
}

}  // namespace

FiniteCrossedProduct::FiniteCrossedProduct(FinitePartialBijection alpha) : alpha_(std::move(alpha)) {}

const FinitePartialBijection& FiniteCrossedProduct::bij(const Key& k) const {
  auto it = cache_.find(k);
  if (it == cache_.end()) it = cache_.emplace(k, bijection_of(k, alpha_)).first;
  return it->second;
}

Vec FiniteCrossedProduct::p(const Key& k) const {
  Set s = X(k);
  Vec v(size());
  for (int i = 0; i < size(); ++i) v[i] = s[i] ? 1.0 : 0.0;
  return v;
}

Vec FiniteCrossedProduct::act(const Key& s, const Vec& f) const {
  const auto& b = bij(s);
  Vec out(size());
  for (int y = 0; y < size(); ++y) {
    int x = b.inverse_at(y);
    if (x >= 0) out[y] = f[x];
  }
  return out;
}

FiniteElement FiniteCrossedProduct::delta(const Key& s, const Vec& a, bool strict) const {
  if (!s.valid()) throw DomainError("invalid key " + s.to_string());
  Set x = X(s);
  Vec v(size());
  for (int i = 0; i < size(); ++i) {
    if (x[i])
      v[i] = a[i];
    else if (strict && a[i] != cplx{})
      throw DomainError("value at index " + std::to_string(i) + " lies outside X_" + s.to_string());
  }
  FiniteElement e;
  e.terms.emplace(s, v);
  return e;
}

FiniteElement FiniteCrossedProduct::multiply(const FiniteElement& x, const FiniteElement& y) const {
  FiniteElement out;
  for (const auto& [r, xr] : x.terms)
    for (const auto& [t, yt] : y.terms) {
      Vec inner = pointwise(act(key_star(r), xr), yt);
      accumulate(out.terms[key_product(r, t)], act(r, inner));
    }
  return out;
}

FiniteElement FiniteCrossedProduct::involution(const FiniteElement& x) const {
  FiniteElement out;
  for (const auto& [t, xt] : x.terms) {
    Key s = key_star(t);
    accumulate(out.terms[s], act(s, conj(xt)));
  }
  return out;
}

FiniteElement FiniteCrossedProduct::random_element(std::mt19937_64& rng, int terms, int key_range) const {
  auto keys = keys_up_to(key_range);
  std::uniform_int_distribution<size_t> pick(0, keys.size() - 1);
  FiniteElement e;
  for (int i = 0; i < terms; ++i) e = add(e, delta(keys[pick(rng)], random_vec(size(), rng)));
  return e;
}

FiniteElement add(const FiniteElement& x, const FiniteElement& y) {
  FiniteElement out = x;
  for (const auto& [k, v] : y.terms) accumulate(out.terms[k], v);
  return out;
}

FiniteElement scale(const FiniteElement& x, cplx c) {
  FiniteElement out = x;
  for (auto& [k, v] : out.terms)
    for (auto& a : v) a *= c;
  return out;
}

double diff(const FiniteElement& x, const FiniteElement& y) { return map_diff(x.terms, y.terms); }

ZElement z_multiply(const FinitePartialBijection& alpha, const ZElement& x, const ZElement& y) {
  ZElement out;
  int M = alpha.size();
  for (const auto& [n, f] : x) {
    FinitePartialBijection an = power(alpha, n);
    for (const auto& [m, g] : y) {
      Vec v(M);
      for (int p = 0; p < M; ++p) {
        int q = an.inverse_at(p);
        if (q >= 0) v[p] = f[p] * g[q];
      }
      accumulate(out[n + m], v);
    }
  }
  return out;
}

ZElement z_involution(const FinitePartialBijection& alpha, const ZElement& x) {
  ZElement out;
  int M = alpha.size();
  for (const auto& [n, f] : x) {
    FinitePartialBijection an = power(alpha, n);
    Vec v(M);
    for (int p = 0; p < M; ++p) {
      int q = an(p);
      if (q >= 0) v[p] = std::conj(f[q]);
    }
    accumulate(out[-n], v);
  }
  return out;
}

ZElement quotient(const FiniteElement& x) {
  ZElement out;
  for (const auto& [k, v] : x.terms) accumulate(out[k.m], v);
  return out;
}

FiniteElement lift(const FiniteCrossedProduct& cp, const ZElement& x) {
  FiniteElement out;
  for (const auto& [n, f] : x) out = add(out, cp.delta({std::max(0, n), std::min(0, n), n}, f));
  return out;
}

double z_diff(const ZElement& x, const ZElement& y) { return map_diff(x, y); }

Eigen::MatrixXcd FiniteRep::pi(const Vec& f) const {
  int d = static_cast<int>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) m(i, i) = f[basis[i]];
  return m;
}

Eigen::MatrixXcd FiniteRep::Vn(int n) const {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(V.rows(), V.cols());
  Eigen::MatrixXcd step = n >= 0 ? Eigen::MatrixXcd(V) : Eigen::MatrixXcd(V.adjoint());
  for (int k = 0; k < std::abs(n); ++k) r = step * r;
  return r;
}

Eigen::MatrixXcd FiniteRep::of(const FinitePartialBijection& b) const {
  int d = static_cast<int>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    int y = b(basis[i]);
    if (y < 0) continue;
    auto it = std::find(basis.begin(), basis.end(), y);
    if (it == basis.end()) throw DomainError("bijection leaves the orbit");
    m(it - basis.begin(), i) = 1.0;
  }
  return m;
}

Eigen::MatrixXcd FiniteRep::represent(const ZElement& x) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(V.rows(), V.cols());
  for (const auto& [n, f] : x) out += pi(f) * Vn(n);
  return out;
}

Eigen::MatrixXcd FiniteRep::represent(const FiniteCrossedProduct& cp, const FiniteElement& x) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(V.rows(), V.cols());
  for (const auto& [s, f] : x.terms) out += pi(f) * of(cp.bij(s));
  return out;
}

FiniteRep covariant_rep(const FinitePartialBijection& alpha, int base) {
  if (base < 0 || base >= alpha.size()) throw DomainError("base index out of range");
  std::vector<int> back, fwd{base};
  for (int x = alpha.inverse_at(base); x >= 0 && x != base; x = alpha.inverse_at(x)) back.push_back(x);
  bool cycle = !back.empty() && alpha.inverse_at(back.back()) == base;
  if (!cycle)
    for (int x = alpha(base); x >= 0 && x != base; x = alpha(x)) fwd.push_back(x);
  FiniteRep r;
  r.basis.assign(back.rbegin(), back.rend());
  r.basis.insert(r.basis.end(), fwd.begin(), fwd.end());
  r.V = r.of(alpha);
  return r;
}

std::vector<CheckResult> power_examples() {
  std::vector<CheckResult> out;
  auto s = FinitePartialBijection::shift(5);
  Set want{true, true, true, false, false};
  out.push_back(make_check("M=5 shift: power 2 has domain {0,1,2}", power(s, 2).domain() == want ? 0.0 : 1.0, 0.0));
  out.push_back(make_check("power 0 is the identity", bij_diff(power(s, 0), FinitePartialBijection::identity(5)), 0.0));
  out.push_back(make_check("M=5 shift: power 5 is empty", bij_diff(power(s, 5), FinitePartialBijection::empty(5)), 0.0));
  return out;
}

std::vector<CheckResult> cpa_relations(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials) {
  std::vector<CheckResult> out;
  int M = cp.size();
  auto keys = keys_up_to(2);
  for (int t = 0; t < trials; ++t) {
    FiniteElement x = cp.random_element(rng, 4);
    FiniteElement rebuilt;
    for (const auto& [s, v] : x.terms) rebuilt = add(rebuilt, cp.multiply(cp.iota(v), cp.U(s)));
    push_max(out, "(i) x = sum a_s U_s", diff(x, rebuilt));

    Vec a = random_vec(M, rng), b = random_vec(M, rng);
    push_max(out, "(ii) iota(a) iota(b) = iota(ab)", diff(cp.multiply(cp.iota(a), cp.iota(b)), cp.iota(pointwise(a, b))));
    double norm = diff(cp.iota(a), FiniteElement{});
    push_max(out, "(ii) iota injective", norm > 0.0 ? 0.0 : 1.0);
  }
  for (const auto& s : keys) {
    Vec a = random_vec(M, rng);
    FiniteElement lhs = cp.multiply(cp.U(s), cp.iota(a));
    FiniteElement rhs = cp.multiply(cp.iota(cp.act(s, pointwise(cp.p(key_star(s)), a))), cp.U(s));
    push_max(out, "(iii) U_s a = alpha_s(p_s* a) U_s", diff(lhs, rhs));
    push_max(out, "(iv) U_s* = U_s*", diff(cp.involution(cp.U(s)), cp.U(key_star(s))));
    for (const auto& t : keys)
      push_max(out, "(v) U_s U_t = U_st", diff(cp.multiply(cp.U(s), cp.U(t)), cp.U(key_product(s, t))));
  }
  return out;
}

std::vector<CheckResult> algebra_axioms(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials) {
  std::vector<CheckResult> out;
  for (int t = 0; t < trials; ++t) {
    FiniteElement x = cp.random_element(rng), y = cp.random_element(rng), z = cp.random_element(rng);
    push_max(out, "(xy)z = x(yz)", diff(cp.multiply(cp.multiply(x, y), z), cp.multiply(x, cp.multiply(y, z))));
    push_max(out, "(xy)* = y* x*", diff(cp.involution(cp.multiply(x, y)), cp.multiply(cp.involution(y), cp.involution(x))));
    push_max(out, "x** = x", diff(cp.involution(cp.involution(x)), x));
  }
  return out;
}

std::vector<CheckResult> quotient_relations(const FiniteCrossedProduct& cp, std::mt19937_64& rng, int trials) {
  std::vector<CheckResult> out;
  const auto& a = cp.alpha();
  for (int t = 0; t < trials; ++t) {
    FiniteElement x = cp.random_element(rng), y = cp.random_element(rng);
    push_max(out, "quotient is multiplicative", z_diff(quotient(cp.multiply(x, y)), z_multiply(a, quotient(x), quotient(y))));
    push_max(out, "quotient respects *", z_diff(quotient(cp.involution(x)), z_involution(a, quotient(x))));
  }
  for (const auto& s : keys_up_to(2)) {
    Key ss = key_product(s, key_star(s));
    FiniteElement y = cp.random_element(rng), z = cp.random_element(rng);
    FiniteElement with_p = cp.multiply(cp.multiply(y, cp.iota(cp.p(s))), z);
    FiniteElement with_u = cp.multiply(cp.multiply(y, cp.U(ss)), z);
    push_max(out, "p_s delta_e and U_ss* agree in products", z_diff(quotient(with_p), quotient(with_u)));
    if (s.is_idempotent()) push_max(out, "p_q = U_q for idempotent q", z_diff(quotient(cp.iota(cp.p(s))), quotient(cp.U(s))));
  }
  // U U* = p_1 delta_0, computed in the integer-keyed algebra
  int M = cp.size();
  Vec p1(M), pm1(M);
  for (int i = 0; i < M; ++i) {
    p1[i] = a.inverse_at(i) >= 0 ? 1.0 : 0.0;
    pm1[i] = a(i) >= 0 ? 1.0 : 0.0;
  }
  ZElement U{{1, p1}}, Us{{-1, pm1}};
  push_max(out, "U U* = p_1", z_diff(z_multiply(a, U, Us), ZElement{{0, p1}}));
  push_max(out, "U* U = p_-1", z_diff(z_multiply(a, Us, U), ZElement{{0, pm1}}));
  push_max(out, "U* = (U)*", z_diff(z_involution(a, U), Us));
  return out;
}

std::vector<CheckResult> canonical_form(const FinitePartialBijection& alpha) {
  std::vector<CheckResult> out;
  const int ex[] = {-2, -1, 1, 2};
  std::vector<std::vector<int>> words{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : words)
      if (static_cast<int>(w.size()) == len - 1)
        for (int e : ex) {
          auto v = w;
          v.push_back(e);
          next.push_back(v);
        }
    words.insert(words.end(), next.begin(), next.end());
  }
  for (const auto& w : words) {
    Key k = key_of_word(w);
    push_max(out, "word equals its canonical form", bij_diff(compose_word(w, alpha), bijection_of(k, alpha)), 0.0);
    push_max(out, "canonicalize agrees with the oracle", k == canonicalize(w) ? 0.0 : 1.0, 0.0);
  }
  auto keys = keys_up_to(3);
  for (const auto& s : keys) {
    push_max(out, "s* acts as the inverse", bij_diff(bijection_of(key_star(s), alpha), bijection_of(s, alpha).inverse()), 0.0);
    push_max(out, "star agrees with the oracle", s.star() == key_star(s) ? 0.0 : 1.0, 0.0);
    for (const auto& t : keys) {
      Key st = key_product(s, t);
      push_max(out, "product agrees with the oracle", st == s * t ? 0.0 : 1.0, 0.0);
      push_max(out, "alpha_st = alpha_s alpha_t",
               bij_diff(bijection_of(st, alpha), compose(bijection_of(s, alpha), bijection_of(t, alpha))), 0.0);
    }
  }
  return out;
}

std::vector<CheckResult> idempotent_relations(const FinitePartialBijection& alpha) {
  std::vector<CheckResult> out;
  auto eps = [&](int g) { return compose(power(alpha, g), power(alpha, -g)); };
  for (int g = -3; g <= 3; ++g)
    for (int h = -3; h <= 3; ++h)
      push_max(out, "eps_g eps_h = eps_h eps_g", bij_diff(compose(eps(g), eps(h)), compose(eps(h), eps(g))), 0.0);

  std::vector<std::vector<int>> ts{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : ts)
      if (static_cast<int>(w.size()) == len - 1)
        for (int e = -2; e <= 2; ++e) {
          if (e == 0) continue;
          auto v = w;
          v.push_back(e);
          next.push_back(v);
        }
    ts.insert(ts.end(), next.begin(), next.end());
  }
  for (const auto& w : ts) {
    FinitePartialBijection t = compose_word(w, alpha), ti = t.inverse();
    for (int g = -2; g <= 2; ++g)
      for (int h = -2; h <= 2; ++h) {
        auto lhs = compose(compose(compose(t, eps(h)), ti), eps(g));
        auto rhs = compose(compose(compose(eps(g), t), eps(h)), ti);
        push_max(out, "t eps_h t^-1 eps_g = eps_g t eps_h t^-1", bij_diff(lhs, rhs), 0.0);
      }
  }
  return out;
}

std::vector<CheckResult> covariance(const FiniteCrossedProduct& cp, int base, std::mt19937_64& rng, int trials) {
  std::vector<CheckResult> out;
  FiniteRep r = covariant_rep(cp.alpha(), base);
  int M = cp.size();
  for (int n = -M; n <= M; ++n) {
    Set x = power(cp.alpha(), n).range();
    Vec ind(M);
    for (int i = 0; i < M; ++i) ind[i] = x[i] ? 1.0 : 0.0;
    push_max(out, "V_n V_n* projects onto X_n", mat_diff(r.Vn(n) * r.Vn(n).adjoint(), r.pi(ind)));
  }
  for (const auto& s : keys_up_to(2)) {
    Eigen::MatrixXcd Vs = r.of(cp.bij(s));
    if (s.is_idempotent()) push_max(out, "pi(p_q) = V_q", mat_diff(r.pi(cp.p(s)), Vs));
    push_max(out, "pi(p_s) = V_ss*", mat_diff(r.pi(cp.p(s)), r.of(cp.bij(key_product(s, key_star(s))))));
    Vec f = pointwise(cp.p(key_star(s)), random_vec(M, rng));
    push_max(out, "V_s pi(f) V_s* = pi(alpha_s f)", mat_diff(Vs * r.pi(f) * Vs.adjoint(), r.pi(cp.act(s, f))));
  }
  for (int t = 0; t < trials; ++t) {
    FiniteElement x = cp.random_element(rng), y = cp.random_element(rng);
    push_max(out, "rep(xy) = rep(x) rep(y)",
             mat_diff(r.represent(cp, cp.multiply(x, y)), r.represent(cp, x) * r.represent(cp, y)));
    ZElement zx = quotient(x), zy = quotient(y);
    push_max(out, "rep(xy) = rep(x) rep(y), integer keys",
             mat_diff(r.represent(z_multiply(cp.alpha(), zx, zy)), r.represent(zx) * r.represent(zy)));
    push_max(out, "rep(x*) = rep(x)^*", mat_diff(r.represent(cp, cp.involution(x)), r.represent(cp, x).adjoint()));
  }
  return out;
}

std::vector<CheckResult> exhaustive_suite(std::uint64_t seed, int instances, int max_M) {
  std::mt19937_64 rng(seed);
  std::vector<CheckResult> out = power_examples();
  auto merge = [&](const std::vector<CheckResult>& rs) {
    for (const auto& c : rs) push_max(out, c.relation, c.residual, c.tolerance, c.detail);
  };
  std::uniform_int_distribution<int> msize(1, max_M);
  for (int i = 0; i < instances; ++i) {
    int M = i == 0 ? max_M : msize(rng);
    FinitePartialBijection a = i % 3 == 0 ? FinitePartialBijection::shift(M) : random_injection(M, rng);
    FiniteCrossedProduct cp(a);
    merge(cpa_relations(cp, rng, 10));
    merge(algebra_axioms(cp, rng, 10));
    merge(quotient_relations(cp, rng, 10));
    merge(canonical_form(a));
    merge(idempotent_relations(a));
    merge(covariance(cp, std::uniform_int_distribution<int>(0, M - 1)(rng), rng, 5));
  }
  return out;
}

GridSample sample_interval_to_finite(const AlgebraPtr& alg, int grid_size) {
  const Interval& c = alg->carrier();
  double h = alg->hbar().value_or(0.0);
  if (!(h > 0.0)) throw DomainError("grid sampling needs hbar > 0");
  if (grid_size < 1) throw DomainError("grid size must be >= 1");
  if (c.lo_infinite()) throw DomainError("grid sampling needs a finite left end");
  GridSample g;
  for (int k = 0; k < grid_size; ++k) {
    double x = c.lo() + 0.5 * h + k * h;
    if (!c.contains(x)) throw DomainError("grid point " + std::to_string(x) + " outside " + c.to_string());
    g.points.push_back(x);
  }
  const PartialBijection& a = alg->alpha();
  std::vector<int> map(grid_size, -1);
  for (int k = 0; k < grid_size; ++k) {
    auto y = a.apply(g.points[k]);
    if (!y) continue;
    if (k + 1 >= grid_size || std::abs(*y - g.points[k + 1]) > 1e-10)
      throw DomainError("grid-incompatible: alpha(" + std::to_string(g.points[k]) + ") = " + std::to_string(*y) +
                        " is not the next grid point");
    map[k] = k + 1;
  }
  for (int k = 0; k + 1 < grid_size; ++k)
    if (map[k] < 0) throw DomainError("grid-incompatible: alpha undefined inside the grid");
  g.alpha = FinitePartialBijection(grid_size, map);
  return g;
}

ZElement sample(const Element& x, const GridSample& g) {
  ZElement out;
  for (const auto& [n, f] : x.terms()) {
    Vec v(g.points.size());
    for (size_t k = 0; k < g.points.size(); ++k) v[k] = f(g.points[k]);
    out[n] = v;
  }
  return out;
}

std::vector<CheckResult> compare_with_interval(const AlgebraPtr& alg, const GridSample& g, std::mt19937_64& rng,
                                               int trials) {
  std::vector<CheckResult> out;
  const double tol = 1e-10;
  FiniteCrossedProduct cp(g.alpha);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> shift(-2, 2);
  auto random_element = [&]() {
    Element e(alg);
    for (int i = 0; i < 3; ++i) {
      int n = shift(rng);
      std::vector<cplx> co{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
      if (alg->I(n).is_empty()) continue;
      e = e + Element::single(alg, n, polynomial(co, alg->carrier(), alg->I(n)));
    }
    return e;
  };
  for (int t = 0; t < trials; ++t) {
    Element x = random_element(), y = random_element();
    ZElement sx = sample(x, g), sy = sample(y, g);
    ZElement sxy = sample(x * y, g);
    push_max(out, "interval product matches the oracle", z_diff(sxy, z_multiply(g.alpha, sx, sy)), tol);
    push_max(out, "interval product matches the quotient of L", z_diff(sxy, quotient(cp.multiply(lift(cp, sx), lift(cp, sy)))),
             tol);
    push_max(out, "interval involution matches the oracle", z_diff(sample(involution(x), g), z_involution(g.alpha, sx)), tol);
  }
  ZElement U = sample(generator_U(alg), g);
  push_max(out, "U matches p_1 delta_1", z_diff(U, quotient(cp.U({1, 0, 1}))), tol);
  push_max(out, "U U* matches", z_diff(sample(generator_U(alg) * generator_U_star(alg), g),
                                      z_multiply(g.alpha, U, z_involution(g.alpha, U))),
           tol);
  push_max(out, "zero element", z_diff(sample(Element(alg), g), ZElement{}), tol);

  // f supported on the whole carrier put at delta_1: both sides must refuse
  SupportedFunction wide = constant(1.0, alg->carrier(), alg->carrier());
  bool interval_flags = false, oracle_flags = false;
  try {
    Element e(alg);
    e.add_term(1, wide, TermMode::Strict);
  } catch (const DomainError&) {
    interval_flags = true;
  }
  try {
    cp.delta({1, 0, 1}, Vec(g.points.size(), 1.0), true);
  } catch (const DomainError&) {
    oracle_flags = true;
  }
  bool expected = !alg->I(1).contains(alg->carrier().lo());
  push_max(out, "support violation flagged by both", (interval_flags == expected && oracle_flags == expected) ? 0.0 : 1.0,
           0.0);
  return out;
}

}  // namespace fuzzcyl::oracle
