#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "fuzzcyl/crossed_product.hpp"

// small seeded generators for the property tests
namespace gen {

using namespace fuzzcyl;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  cplx complex() { return {uniform(-1, 1), uniform(-1, 1)}; }

  // endpoints drawn from a coarse lattice so touching/equal cases actually happen
  Interval interval() {
    int kind = integer(0, 9);
    if (kind == 0) return Interval::empty();
    double lo = integer(-8, 8) / 4.0, hi = integer(-8, 8) / 4.0;
    if (lo > hi) std::swap(lo, hi);
    if (kind == 1) lo = -kInf;
    if (kind == 2) hi = kInf;
    return Interval::make(lo, hi, coin(), coin());
  }

  std::vector<int> word(int len, int max_abs) {
    std::vector<int> w;
    for (int i = 0; i < len; ++i) {
      int e = 0;
      while (e == 0) e = integer(-max_abs, max_abs);
      w.push_back(e);
    }
    return w;
  }

  SupportedFunction poly(const Interval& carrier, const Interval& support, int degree = 2) {
    std::vector<cplx> c;
    for (int i = 0; i <= degree; ++i) c.push_back(complex());
    return polynomial(c, carrier, support);
  }

  // random terms over n in [-max_shift, max_shift], each clipped into I_n
  Element element(const AlgebraPtr& alg, int terms = 3, int max_shift = 2) {
    Element x(alg);
    for (int i = 0; i < terms; ++i) {
      int n = integer(-max_shift, max_shift);
      const Interval& In = alg->I(n);
      if (In.is_empty()) continue;
      x = x + Element::single(alg, n, poly(alg->carrier(), In));
    }
    return x;
  }
};

}  // namespace gen
