#include "bimetric/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <utility>

#include "bimetric/error.hpp"

namespace bimetric {

namespace {

using Op = Expr::Op;

struct FunctionName {
  std::string_view name;
  Op op;
};

constexpr std::array<FunctionName, 8> kFunctions{{
    {"sin", Op::Sin},
    {"cos", Op::Cos},
    {"tan", Op::Tan},
    {"exp", Op::Exp},
    {"log", Op::Log},
    {"sqrt", Op::Sqrt},
    {"sinh", Op::Sinh},
    {"cosh", Op::Cosh},
}};

std::string_view function_name(Op op) {
  for (const auto& f : kFunctions)
    if (f.op == op) return f.name;
  return {};
}

bool is_unary_function(Op op) { return !function_name(op).empty(); }

std::string at_offset(std::size_t offset) {
  return offset == std::string::npos ? std::string{}
                                     : " at offset " + std::to_string(offset);
}

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

bool is_function_name(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return true;
  return false;
}

Expr Expr::constant(double value, int dimension) {
  if (!std::isfinite(value)) throw DomainError("non-finite constant");
  if (std::signbit(value)) return -constant(-value, dimension);
  auto nodes = std::make_shared<std::vector<Node>>();
  nodes->push_back({Op::Constant, value, -1, -1, std::string::npos});
  return Expr(std::move(nodes), dimension);
}

Expr Expr::coordinate(int index, int dimension) {
  if (index < 0 || index >= dimension)
    throw IndexError("coordinate index out of range");
  auto nodes = std::make_shared<std::vector<Node>>();
  nodes->push_back({Op::Coordinate, 0.0, index, -1, std::string::npos});
  return Expr(std::move(nodes), dimension);
}

bool Expr::is_constant() const {
  for (const auto& n : *nodes_)
    if (n.op == Op::Coordinate) return false;
  return true;
}

Expr Expr::combine(Op op, const Expr& a, const Expr& b) {
  if (a.dimension_ != b.dimension_)
    throw ChartMismatchError("expressions over different chart dimensions");
  auto nodes = std::make_shared<std::vector<Node>>(*a.nodes_);
  const int shift = static_cast<int>(nodes->size());
  for (Node n : *b.nodes_) {
    if (n.op != Op::Coordinate && n.op != Op::Constant) {
      if (n.lhs >= 0) n.lhs += shift;
      if (n.rhs >= 0) n.rhs += shift;
    }
    nodes->push_back(n);
  }
  nodes->push_back({op, 0.0, shift - 1, static_cast<int>(nodes->size()) - 1,
                    std::string::npos});
  return Expr(std::move(nodes), a.dimension_);
}

Expr Expr::wrap(Op op, const Expr& a, double number) {
  auto nodes = std::make_shared<std::vector<Node>>(*a.nodes_);
  nodes->push_back({op, number, static_cast<int>(nodes->size()) - 1, -1,
                    std::string::npos});
  return Expr(std::move(nodes), a.dimension_);
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::combine(Op::Add, a, b); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::combine(Op::Sub, a, b); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::combine(Op::Mul, a, b); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::combine(Op::Div, a, b); }
Expr operator-(const Expr& a) { return Expr::wrap(Op::Neg, a, 0.0); }

Expr pow(const Expr& base, double exponent) {
  if (!std::isfinite(exponent)) throw DomainError("non-finite exponent");
  return Expr::wrap(Op::Pow, base, exponent);
}

Expr apply(Op function, const Expr& argument) {
  if (!is_unary_function(function))
    throw ParseError("apply: not a unary function");
  return Expr::wrap(function, argument, 0.0);
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.dimension_ != b.dimension_ || a.nodes_->size() != b.nodes_->size())
    return false;
  for (std::size_t i = 0; i < a.nodes_->size(); ++i) {
    const auto& x = (*a.nodes_)[i];
    const auto& y = (*b.nodes_)[i];
    if (x.op != y.op || x.number != y.number || x.lhs != y.lhs || x.rhs != y.rhs)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser

class ExprParser {
 public:
  ExprParser(std::string_view source, const ChartSpec& chart)
      : src_(source), chart_(chart), nodes_(std::make_shared<std::vector<Expr::Node>>()) {}

  Expr run() {
    skip_space();
    if (pos_ == src_.size()) fail("empty expression");
    parse_sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return Expr(nodes_, chart_.dimension());
  }

 private:
  [[noreturn]] void fail(const std::string& what) { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) {
    throw ParseError(what + at_offset(at), at);
  }

  void skip_space() {
    while (pos_ < src_.size() &&
           (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
            src_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int push(Op op, double number, int lhs, int rhs, std::size_t offset) {
    nodes_->push_back({op, number, lhs, rhs, offset});
    return static_cast<int>(nodes_->size()) - 1;
  }

  int parse_sum() {
    int lhs = parse_product();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) {
        int rhs = parse_product();
        lhs = push(Op::Add, 0.0, lhs, rhs, at);
      } else if (accept('-')) {
        int rhs = parse_product();
        lhs = push(Op::Sub, 0.0, lhs, rhs, at);
      } else {
        return lhs;
      }
    }
  }

  int parse_product() {
    int lhs = parse_unary();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) {
        int rhs = parse_unary();
        lhs = push(Op::Mul, 0.0, lhs, rhs, at);
      } else if (accept('/')) {
        int rhs = parse_unary();
        lhs = push(Op::Div, 0.0, lhs, rhs, at);
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      int operand = parse_unary();
      return push(Op::Neg, 0.0, operand, -1, at);
    }
    return parse_power();
  }

  int parse_power() {
    int base = parse_primary();
    skip_space();
    const std::size_t at = pos_;
    if (!accept('^')) return base;
    double exponent = parse_exponent();
    int node = push(Op::Pow, exponent, base, -1, at);
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '^')
      fail("chained '^' must be parenthesized");
    return node;
  }

  double parse_exponent() {
    skip_space();
    const bool paren = accept('(');
    const bool negative = accept('-');
    skip_space();
    if (pos_ >= src_.size() || !is_number_start(src_[pos_]))
      fail("exponent must be a numeric constant");
    double v = parse_number();
    if (paren && !accept(')')) fail("expected ')'");
    return negative ? -v : v;
  }

  static bool is_number_start(char c) { return (c >= '0' && c <= '9') || c == '.'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }
  static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

  double parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && src_[pos_] >= '0' && src_[pos_] <= '9') ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) fail_at("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at("malformed exponent in number", start);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(v))
      fail_at("number out of range", start);
    return v;
  }

  int parse_primary() {
    skip_space();
    const std::size_t at = pos_;
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (is_number_start(c)) {
      double v = parse_number();
      return push(Op::Constant, v, -1, -1, at);
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      std::string name(src_.substr(at, pos_ - at));
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        Op op{};
        bool found = false;
        for (const auto& f : kFunctions)
          if (f.name == name) op = f.op, found = true;
        if (!found) fail_at("unknown function '" + name + "'", at);
        ++pos_;
        int arg = parse_sum();
        if (!accept(')')) fail("expected ')'");
        return push(op, 0.0, arg, -1, at);
      }
      if (is_function_name(name)) fail("expected '(' after '" + name + "'");
      int index = chart_.find(name);
      if (index < 0) fail_at("unknown identifier '" + name + "'", at);
      return push(Op::Coordinate, 0.0, index, -1, at);
    }
    if (accept('(')) {
      int inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const ChartSpec& chart_;
  std::shared_ptr<std::vector<Expr::Node>> nodes_;
  std::size_t pos_ = 0;
};

Expr parse(std::string_view source, const ChartSpec& chart) {
  return ExprParser(source, chart).run();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string render(std::span<const Expr::Node> nodes, int index,
                   const ChartSpec& chart) {
  const auto& n = nodes[static_cast<std::size_t>(index)];
  auto child = [&](int i, int min_prec) {
    std::string s = render(nodes, i, chart);
    if (precedence(nodes[static_cast<std::size_t>(i)].op) < min_prec)
      return "(" + s + ")";
    return s;
  };
  switch (n.op) {
    case Op::Constant:
      return format_number(n.number);
    case Op::Coordinate:
      return chart.coordinates()[static_cast<std::size_t>(n.lhs)];
    case Op::Neg:
      return "-" + child(n.lhs, 3);
    case Op::Pow: {
      std::string e = format_number(std::abs(n.number));
      if (std::signbit(n.number)) e = "(-" + e + ")";
      return child(n.lhs, 5) + "^" + e;
    }
    case Op::Add:
      return child(n.lhs, 1) + " + " + child(n.rhs, 2);
    case Op::Sub:
      return child(n.lhs, 1) + " - " + child(n.rhs, 2);
    case Op::Mul:
      return child(n.lhs, 2) + "*" + child(n.rhs, 3);
    case Op::Div:
      return child(n.lhs, 2) + "/" + child(n.rhs, 3);
    default:
      return std::string(function_name(n.op)) + "(" + render(nodes, n.lhs, chart) + ")";
  }
}

}  // namespace

std::string to_string(const Expr& expr, const ChartSpec& chart) {
  if (chart.dimension() != expr.dimension())
    throw ChartMismatchError("to_string: chart dimension mismatch");
  return render(expr.nodes(), static_cast<int>(expr.nodes().size()) - 1, chart);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

inline double chain(double, double f, double, double) { return f; }

template <typename S>
S make_constant(double v, int n) {
  if constexpr (std::is_same_v<S, double>) {
    return v;
  } else {
    return S::constant(v, n);
  }
}

template <typename S>
S make_coordinate(const Point& p, int index) {
  if constexpr (std::is_same_v<S, double>) {
    return p[index];
  } else {
    return S::variable(p[index], index, static_cast<int>(p.size()));
  }
}

bool is_integer(double c) { return std::floor(c) == c; }

template <typename S>
S evaluate(const Expr& expr, const Point& point) {
  if (point.size() != expr.dimension())
    throw ShapeError("point dimension does not match expression chart");
  const int n = expr.dimension();
  const auto nodes = expr.nodes();
  std::vector<S> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& node = nodes[i];
    auto arg = [&](int k) -> const S& { return v[static_cast<std::size_t>(k)]; };
    auto domain = [&](const std::string& what) {
      throw DomainError(what + at_offset(node.offset), node.offset);
    };
    switch (node.op) {
      case Op::Constant:
        v[i] = make_constant<S>(node.number, n);
        break;
      case Op::Coordinate:
        v[i] = make_coordinate<S>(point, node.lhs);
        break;
      case Op::Neg:
        v[i] = -arg(node.lhs);
        break;
      case Op::Add:
        v[i] = arg(node.lhs) + arg(node.rhs);
        break;
      case Op::Sub:
        v[i] = arg(node.lhs) - arg(node.rhs);
        break;
      case Op::Mul:
        v[i] = arg(node.lhs) * arg(node.rhs);
        break;
      case Op::Div:
        if (value_of(arg(node.rhs)) == 0.0) domain("division by zero");
        v[i] = arg(node.lhs) / arg(node.rhs);
        break;
      case Op::Pow: {
        const double x = value_of(arg(node.lhs));
        const double c = node.number;
        if (x == 0.0 && c < 0.0) domain("zero raised to a negative power");
        if (x < 0.0 && !is_integer(c)) domain("negative base with non-integer exponent");
        const double f = std::pow(x, c);
        double f1 = 0.0, f2 = 0.0;
        if constexpr (!std::is_same_v<S, double>) {
          if (c != 0.0) f1 = c * std::pow(x, c - 1.0);
          if (c != 0.0 && c != 1.0) f2 = c * (c - 1.0) * std::pow(x, c - 2.0);
        }
        v[i] = chain(arg(node.lhs), f, f1, f2);
        break;
      }
      case Op::Sin: {
        const double x = value_of(arg(node.lhs));
        v[i] = chain(arg(node.lhs), std::sin(x), std::cos(x), -std::sin(x));
        break;
      }
      case Op::Cos: {
        const double x = value_of(arg(node.lhs));
        v[i] = chain(arg(node.lhs), std::cos(x), -std::sin(x), -std::cos(x));
        break;
      }
      case Op::Tan: {
        const double x = value_of(arg(node.lhs));
        const double t = std::tan(x);
        const double sec2 = 1.0 + t * t;
        v[i] = chain(arg(node.lhs), t, sec2, 2.0 * t * sec2);
        break;
      }
      case Op::Exp: {
        const double e = std::exp(value_of(arg(node.lhs)));
        v[i] = chain(arg(node.lhs), e, e, e);
        break;
      }
      case Op::Log: {
        const double x = value_of(arg(node.lhs));
        if (x <= 0.0) domain("log of non-positive value");
        v[i] = chain(arg(node.lhs), std::log(x), 1.0 / x, -1.0 / (x * x));
        break;
      }
      case Op::Sqrt: {
        const double x = value_of(arg(node.lhs));
        if (x < 0.0) domain("sqrt of negative value");
        const double r = std::sqrt(x);
        v[i] = chain(arg(node.lhs), r, 0.5 / r, -0.25 / (r * x));
        break;
      }
      case Op::Sinh: {
        const double x = value_of(arg(node.lhs));
        v[i] = chain(arg(node.lhs), std::sinh(x), std::cosh(x), std::sinh(x));
        break;
      }
      case Op::Cosh: {
        const double x = value_of(arg(node.lhs));
        v[i] = chain(arg(node.lhs), std::cosh(x), std::sinh(x), std::cosh(x));
        break;
      }
    }
    if constexpr (std::is_same_v<S, double>) {
      if (!std::isfinite(v[i])) domain("non-finite result");
    } else {
      if (!std::isfinite(v[i].value)) domain("non-finite result");
      if (!v[i].finite()) domain("non-finite derivative (non-smooth point)");
    }
  }
  return v.back();
}

}  // namespace

double eval(const Expr& expr, const Point& point) {
  return evaluate<double>(expr, point);
}

Dual2 eval_dual2(const Expr& expr, const Point& point) {
  return evaluate<Dual2>(expr, point);
}

}  // namespace bimetric
