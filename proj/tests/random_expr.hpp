#pragma once

// Seeded random expressions of bounded depth whose every node stays inside
// its function's domain for coordinates in [-1, 1].

#include <cmath>

#include "bimetric/expr.hpp"
#include "bimetric/random.hpp"

namespace testing_support {

using bimetric::Expr;

inline Expr random_expr(bimetric::Xorshift64& rng, int depth, int dimension) {
  const auto pick = [&](int n) {
    return static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
  };
  const auto c = [&](double v) { return Expr::constant(v, dimension); };
  if (depth == 0 || pick(4) == 0) {
    if (pick(2) == 0) return Expr::coordinate(pick(dimension), dimension);
    return c(std::round(rng.uniform(-3, 3) * 4) / 4);
  }
  const Expr a = random_expr(rng, depth - 1, dimension);
  switch (pick(10)) {
    case 0: return a + random_expr(rng, depth - 1, dimension);
    case 1: return a - random_expr(rng, depth - 1, dimension);
    case 2: return a * random_expr(rng, depth - 1, dimension);
    case 3: return a / (c(2.0) + apply(Expr::Op::Sin, random_expr(rng, depth - 1, dimension)));
    case 4: return apply(pick(2) ? Expr::Op::Sin : Expr::Op::Cos, a);
    case 5: return apply(Expr::Op::Exp, apply(Expr::Op::Sin, a));
    case 6: return apply(Expr::Op::Log, c(2.0) + apply(Expr::Op::Cos, a));
    case 7: return apply(Expr::Op::Sqrt, c(1.0) + a * a);
    case 8: return pow(apply(Expr::Op::Cosh, apply(Expr::Op::Sin, a)), pick(2) ? 3.0 : -1.5);
    default: return -a;
  }
}

}  // namespace testing_support
