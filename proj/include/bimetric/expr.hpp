#pragma once

// Scalar expressions over chart coordinates.
//
// Grammar (whitespace is insignificant):
//
//   expr     := term (('+' | '-') term)*
//   term     := unary (('*' | '/') unary)*
//   unary    := '-' unary | power
//   power    := primary ('^' exponent)?
//   exponent := '-'? NUMBER | '(' '-'? NUMBER ')'
//   primary  := NUMBER | COORD | FUNC '(' expr ')' | '(' expr ')'
//   FUNC     := sin | cos | tan | exp | log | sqrt | sinh | cosh
//
// So '^' binds tighter than unary minus ("-x^2" is -(x^2)), exponents are
// numeric constants, "x^2^3" must be parenthesized, and implicit
// multiplication ("2x") is a syntax error. NUMBER is a non-negative decimal
// literal with optional exponent ("1.5e-3").

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bimetric/chart.hpp"
#include "bimetric/dual.hpp"

namespace bimetric {

class Expr {
 public:
  enum class Op : std::uint8_t {
    Constant,
    Coordinate,
    Neg,
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
  };

  // Nodes are stored in post-order; children always precede their parent and
  // the root is the last node.
  struct Node {
    Op op = Op::Constant;
    double number = 0.0;  // constant value or Pow exponent
    int lhs = -1;         // operand node, or coordinate index for Coordinate
    int rhs = -1;
    std::size_t offset = std::string::npos;  // source byte offset, if parsed
  };

  Expr() : Expr(constant(0.0, 1)) {}

  static Expr constant(double value, int dimension);
  static Expr coordinate(int index, int dimension);

  int dimension() const { return dimension_; }
  std::span<const Node> nodes() const { return *nodes_; }
  const Node& root() const { return nodes_->back(); }

  /// True if no coordinate is referenced.
  bool is_constant() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);
  /// Applies a unary function op (Sin ... Cosh).
  friend Expr apply(Op function, const Expr& argument);

  /// Structural equality; source offsets are ignored.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend class ExprParser;
  Expr(std::shared_ptr<const std::vector<Node>> nodes, int dimension)
      : nodes_(std::move(nodes)), dimension_(dimension) {}
  static Expr combine(Op op, const Expr& a, const Expr& b);
  static Expr wrap(Op op, const Expr& a, double number);

  std::shared_ptr<const std::vector<Node>> nodes_;
  int dimension_ = 1;
};

bool is_function_name(std::string_view name);

/// Parses `source` against the chart's coordinate names. Throws ParseError
/// carrying the byte offset of the offending token.
Expr parse(std::string_view source, const ChartSpec& chart);

/// Minimal-parenthesis rendering; parse(to_string(e)) == e.
std::string to_string(const Expr& expr, const ChartSpec& chart);

/// IEEE double evaluation. A non-finite result, or leaving a function's
/// domain, throws DomainError naming the node's source offset.
double eval(const Expr& expr, const Point& point);

/// Value, exact gradient and exact Hessian in one pass. The value is
/// bit-identical to eval().
Dual2 eval_dual2(const Expr& expr, const Point& point);

}  // namespace bimetric
