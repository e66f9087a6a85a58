#pragma once

// Scalar functions of time written in a small grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?
//   primary := number | 't' | 'pi' | name '(' expr (',' expr)? ')' | '(' expr ')'
//
// Functions: exp, log, sin, cos, sqrt, pow(a, b). Expressions are immutable
// and can be differentiated symbolically with respect to t.

#include <memory>
#include <string>
#include <string_view>

namespace lincan {

namespace detail {
struct ExprNode;
}

class Expression {
  public:
    // Throws Error{parse} with the offending position on malformed input.
    static Expression parse(std::string_view text);
    static Expression constant(double value);

    double operator()(double t) const;
    Expression derivative() const;

    bool is_constant() const;
    std::string to_string() const;

  private:
    explicit Expression(std::shared_ptr<const detail::ExprNode> root) : root_(std::move(root)) {}
    std::shared_ptr<const detail::ExprNode> root_;
};

}  // namespace lincan
