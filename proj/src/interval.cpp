#include "fuzzcyl/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

Interval Interval::make(double lo, double hi, bool lo_closed, bool hi_closed) {
  Interval iv;
  if (std::isnan(lo) || std::isnan(hi)) return iv;
  if (std::isinf(lo) && lo > 0) return iv;
  if (std::isinf(hi) && hi < 0) return iv;
  if (std::isinf(lo)) lo_closed = false;
  if (std::isinf(hi)) hi_closed = false;
  if (lo > hi) return iv;
  if (lo == hi && !(lo_closed && hi_closed)) return iv;
  iv.lo_ = lo;
  iv.hi_ = hi;
  iv.lo_closed_ = lo_closed;
  iv.hi_closed_ = hi_closed;
  iv.empty_ = false;
  return iv;
}

bool Interval::contains(double x, double tol) const {
  if (empty_ || std::isnan(x)) return false;
  bool above = lo_closed_ ? x >= lo_ - tol : x > lo_ + tol;
  bool below = hi_closed_ ? x <= hi_ + tol : x < hi_ - tol;
  return above && below;
}

bool Interval::is_subset_of(const Interval& other, double tol) const {
  if (empty_) return true;
  if (other.empty_) return false;
  auto lo_ok = [&] {
    if (other.lo_ == -kInf) return true;
    if (lo_ > other.lo_ + tol) return true;
    if (lo_ < other.lo_ - tol) return false;
    // endpoints agree within tol
    return tol > 0 || other.lo_closed_ || !lo_closed_;
  };
  auto hi_ok = [&] {
    if (other.hi_ == kInf) return true;
    if (hi_ < other.hi_ - tol) return true;
    if (hi_ > other.hi_ + tol) return false;
    return tol > 0 || other.hi_closed_ || !hi_closed_;
  };
  return lo_ok() && hi_ok();
}

bool Interval::operator==(const Interval& other) const {
  if (empty_ || other.empty_) return empty_ == other.empty_;
  return lo_ == other.lo_ && hi_ == other.hi_ && lo_closed_ == other.lo_closed_ &&
         hi_closed_ == other.hi_closed_;
}

bool Interval::approx_equal(const Interval& other, double tol) const {
  if (empty_ || other.empty_) return empty_ == other.empty_;
  auto close = [tol](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return std::abs(a - b) <= tol;
  };
  return close(lo_, other.lo_) && close(hi_, other.hi_);
}

namespace {

std::string num(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // shortest representation that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    char tmp[40];
    std::snprintf(tmp, sizeof tmp, "%.*g", prec, v);
    if (std::strtod(tmp, nullptr) == v) return tmp;
  }
  return buf;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_endpoint(const std::string& raw) {
  std::string s = trim(raw);
  std::string low;
  for (char c : s) low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (low == "inf" || low == "+inf" || low == "infinity" || low == "+infinity") return kInf;
  if (low == "-inf" || low == "-infinity") return -kInf;
  // allow a single rational "p/q"
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      size_t used1 = 0, used2 = 0;
      std::string a = trim(s.substr(0, slash)), b = trim(s.substr(slash + 1));
      double p = std::stod(a, &used1);
      double q = std::stod(b, &used2);
      if (used1 != a.size() || used2 != b.size() || q == 0.0) throw ParseError("bad endpoint");
      return p / q;
    }
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw ParseError("bad endpoint");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("cannot parse interval endpoint '" + s + "'");
  } catch (const ParseError&) {
    throw ParseError("cannot parse interval endpoint '" + s + "'");
  }
}

}  // namespace

Interval Interval::parse(std::string_view text) {
  std::string s = trim(text);
  if (s == "empty" || s == "{}" || s == "∅") return empty();
  if (s == "R" || s == "(-inf,+inf)" || s == "(-inf,inf)") return real_line();
  if (s.size() < 5) throw ParseError("cannot parse interval '" + s + "'");
  char open = s.front(), close = s.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')'))
    throw ParseError("interval must be bracketed: '" + s + "'");
  std::string body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
    throw ParseError("interval needs exactly one comma: '" + s + "'");
  double lo = parse_endpoint(body.substr(0, comma));
  double hi = parse_endpoint(body.substr(comma + 1));
  if (lo > hi) throw ParseError("interval endpoints out of order: '" + s + "'");
  if ((open == '[' && std::isinf(lo)) || (close == ']' && std::isinf(hi)))
    throw ParseError("infinite endpoints must be open: '" + s + "'");
  return make(lo, hi, open == '[', close == ']');
}

std::string Interval::to_string() const {
  if (empty_) return "empty";
  std::string out;
  out += lo_closed_ ? '[' : '(';
  out += num(lo_);
  out += ',';
  out += num(hi_);
  out += hi_closed_ ? ']' : ')';
  return out;
}

Interval intersect(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  double lo, hi;
  bool lc, hc;
  if (a.lo() > b.lo()) {
    lo = a.lo(); lc = a.lo_closed();
  } else if (b.lo() > a.lo()) {
    lo = b.lo(); lc = b.lo_closed();
  } else {
    lo = a.lo(); lc = a.lo_closed() && b.lo_closed();
  }
  if (a.hi() < b.hi()) {
    hi = a.hi(); hc = a.hi_closed();
  } else if (b.hi() < a.hi()) {
    hi = b.hi(); hc = b.hi_closed();
  } else {
    hi = a.hi(); hc = a.hi_closed() && b.hi_closed();
  }
  return Interval::make(lo, hi, lc, hc);
}

Interval hull(const Interval& a, const Interval& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  double lo, hi;
  bool lc, hc;
  if (a.lo() < b.lo()) {
    lo = a.lo(); lc = a.lo_closed();
  } else if (b.lo() < a.lo()) {
    lo = b.lo(); lc = b.lo_closed();
  } else {
    lo = a.lo(); lc = a.lo_closed() || b.lo_closed();
  }
  if (a.hi() > b.hi()) {
    hi = a.hi(); hc = a.hi_closed();
  } else if (b.hi() > a.hi()) {
    hi = b.hi(); hc = b.hi_closed();
  } else {
    hi = a.hi(); hc = a.hi_closed() || b.hi_closed();
  }
  return Interval::make(lo, hi, lc, hc);
}

std::vector<double> sample_grid(const Interval& iv, int count, const Interval& window) {
  std::vector<double> out;
  if (iv.is_empty() || count <= 0) return out;
  double lo = iv.lo(), hi = iv.hi();
  if (!iv.is_bounded()) {
    Interval w = intersect(iv, Interval::closed(window.lo(), window.hi()));
    if (!w.is_empty() && !w.is_degenerate()) {
      lo = w.lo();
      hi = w.hi();
    } else if (iv.lo_infinite() && !iv.hi_infinite()) {
      lo = hi - window.length();
    } else if (iv.hi_infinite() && !iv.lo_infinite()) {
      hi = lo + window.length();
    }
  }
  if (count == 1 || lo == hi) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  out.reserve(count);
  for (int k = 0; k < count; ++k) out.push_back(lo + (hi - lo) * k / (count - 1));
  return out;
}

Interval shrink(const Interval& iv, double margin) {
  if (iv.is_empty()) return iv;
  double lo = iv.lo_infinite() ? iv.lo() : iv.lo() + margin;
  double hi = iv.hi_infinite() ? iv.hi() : iv.hi() - margin;
  return Interval::make(lo, hi, true, true);
}

Interval image_monotone(const Interval& iv, const MonotoneMap& map) {
  if (iv.is_empty()) return iv;
  const auto& f = map.fn;
  auto at = [&](double x) -> double {
    if (x == -kInf) return map.limit_at_neg_inf ? *map.limit_at_neg_inf : f(-kInf);
    if (x == kInf) return map.limit_at_pos_inf ? *map.limit_at_pos_inf : f(kInf);
    return f(x);
  };
  double ya = at(iv.lo());
  double yb = at(iv.hi());

  // 33 interior points on the finite part of the interval
  {
    double lo = iv.lo_infinite() ? (iv.hi_infinite() ? -8.0 : std::min(iv.hi(), 0.0) - 8.0) : iv.lo();
    double hi = iv.hi_infinite() ? (iv.lo_infinite() ? 8.0 : std::max(iv.lo(), 0.0) + 8.0) : iv.hi();
    if (hi > lo) {
      double prev = iv.lo_infinite() ? (map.increasing ? -kInf : kInf) : ya;
      for (int k = 1; k <= 34; ++k) {
        double x = lo + (hi - lo) * k / 34.0;
        // k == 34 closes the chain on the upper endpoint image
        double y = k < 34 ? f(x) : (iv.hi_infinite() ? (map.increasing ? kInf : -kInf) : yb);
        bool bad = std::isnan(y) || (map.increasing ? y < prev : y > prev);
        if (bad)
          throw MonotonicityError("map is not monotone on " + iv.to_string() + " near x=" +
                                  std::to_string(x));
        prev = y;
      }
    }
  }

  // infinite ends are already open, so a finite limit there stays unattained
  if (map.increasing) return Interval::make(ya, yb, iv.lo_closed(), iv.hi_closed());
  return Interval::make(yb, ya, iv.hi_closed(), iv.lo_closed());
}

}  // namespace fuzzcyl
