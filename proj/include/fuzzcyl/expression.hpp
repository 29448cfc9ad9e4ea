#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace fuzzcyl {

// Tiny real-valued expression language for user supplied maps.
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?
//   atom    := number | 'x' | 'h' | 'pi' | fn '(' expr (',' expr)* ')' | '(' expr ')'
//   fn      := sqrt abs min max exp log sin cos
class Expression {
 public:
  struct Node;

  static Expression parse(std::string_view text);

  double operator()(double x, double h = 0.0) const;
  const std::string& source() const { return source_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace fuzzcyl
