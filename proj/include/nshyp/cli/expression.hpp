#pragma once

#include <memory>
#include <string>

namespace nshyp::cli {

/// Arithmetic expression in one variable x. Tokens: decimal numbers
/// (with optional exponent), pi, x, + - * /, unary minus, parentheses and
/// the functions sin, cos, exp. The set is closed under differentiation.
class Expression {
 public:
  struct Node;

  /// Throws DomainError with the offending position on a syntax error.
  static Expression parse(const std::string& text);
  static Expression constant(double c);

  double operator()(double x) const;
  Expression derivative() const;
  bool is_constant() const;
  std::string str() const;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace nshyp::cli
