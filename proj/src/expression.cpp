#include "fuzzcyl/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "fuzzcyl/error.hpp"

namespace fuzzcyl {

struct Expression::Node {
  enum class Kind { Num, X, H, Neg, Add, Sub, Mul, Div, Pow, Call } kind;
  double value = 0.0;
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;

  double eval(double x, double h) const {
    switch (kind) {
      case Kind::Num: return value;
      case Kind::X: return x;
      case Kind::H: return h;
      case Kind::Neg: return -args[0]->eval(x, h);
      case Kind::Add: return args[0]->eval(x, h) + args[1]->eval(x, h);
      case Kind::Sub: return args[0]->eval(x, h) - args[1]->eval(x, h);
      case Kind::Mul: return args[0]->eval(x, h) * args[1]->eval(x, h);
      case Kind::Div: return args[0]->eval(x, h) / args[1]->eval(x, h);
      case Kind::Pow: {
        double b = args[0]->eval(x, h), e = args[1]->eval(x, h);
        // small integer exponents stay exact for negative bases
        if (e == std::round(e) && std::abs(e) <= 16) {
          int n = static_cast<int>(e);
          double r = 1.0;
          for (int i = 0; i < std::abs(n); ++i) r *= b;
          return n < 0 ? 1.0 / r : r;
        }
        return std::pow(b, e);
      }
      case Kind::Call: {
        double a = args[0]->eval(x, h);
        if (fn == "sqrt") return std::sqrt(a);
        if (fn == "abs") return std::abs(a);
        if (fn == "exp") return std::exp(a);
        if (fn == "log") return std::log(a);
        if (fn == "sin") return std::sin(a);
        if (fn == "cos") return std::cos(a);
        double b = args[1]->eval(x, h);
        if (fn == "min") return std::min(a, b);
        return std::max(a, b);
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr leaf(Kind k, double v = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->value = v;
  return n;
}

NodePtr combine(Kind k, std::vector<NodePtr> args, std::string fn = {}) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->args = std::move(args);
  n->fn = std::move(fn);
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse_all() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = combine(Kind::Add, {lhs, term()});
      else if (eat('-')) lhs = combine(Kind::Sub, {lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*')) lhs = combine(Kind::Mul, {lhs, unary()});
      else if (eat('/')) lhs = combine(Kind::Div, {lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (eat('-')) return combine(Kind::Neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return combine(Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string tail(s_.substr(pos_));
      char* end = nullptr;
      double v = std::strtod(tail.c_str(), &end);
      if (end == tail.c_str()) fail("bad number");
      pos_ += static_cast<size_t>(end - tail.c_str());
      return leaf(Kind::Num, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "x" || name == "u") return leaf(Kind::X);
      if (name == "h" || name == "hbar") return leaf(Kind::H);
      if (name == "pi") return leaf(Kind::Num, std::numbers::pi);
      int arity = 0;
      if (name == "sqrt" || name == "abs" || name == "exp" || name == "log" || name == "sin" ||
          name == "cos")
        arity = 1;
      else if (name == "min" || name == "max")
        arity = 2;
      else
        fail("unknown identifier '" + name + "'");
      if (!eat('(')) fail("expected '(' after " + name);
      std::vector<NodePtr> args{expr()};
      while (eat(',')) args.push_back(expr());
      if (!eat(')')) fail("expected ')'");
      if (static_cast<int>(args.size()) != arity) fail(name + " takes " + std::to_string(arity) + " argument(s)");
      return combine(Kind::Call, std::move(args), name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.root_ = Parser(text).parse_all();
  e.source_ = std::string(text);
  return e;
}

double Expression::operator()(double x, double h) const {
  if (!root_) throw ParseError("empty expression");
  return root_->eval(x, h);
}

}  // namespace fuzzcyl
