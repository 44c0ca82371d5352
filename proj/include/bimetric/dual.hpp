#pragma once

// Forward-mode dual numbers over a chart of dimension n <= kMaxDimension.
//
// Dual1 carries a value and its gradient; it is the scalar type used to push
// one extra derivative through the connection kernels. Dual2 carries value,
// gradient and the full (symmetric) Hessian and is what the expression
// evaluator produces.

#include <Eigen/Core>
#include <cmath>

#include "bimetric/tensor.hpp"

namespace bimetric {

using Gradient = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDimension, 1>;
using Hessian = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0,
                              kMaxDimension, kMaxDimension>;

namespace detail {

// a*x + b*y where an empty vector stands for zero.
inline Gradient axpby(double a, const Gradient& x, double b, const Gradient& y) {
  if (x.size() == 0) return b * y;
  if (y.size() == 0) return a * x;
  return a * x + b * y;
}

// Copies the upper triangle onto the lower one so rounding cannot break
// symmetry.
inline Hessian mirrored(Hessian h) {
  h.template triangularView<Eigen::StrictlyLower>() = h.transpose();
  return h;
}

}  // namespace detail

struct Dual1 {
  double value = 0.0;
  Gradient grad;  // empty == zero gradient

  Dual1() = default;
  Dual1(double v) : value(v) {}  // NOLINT: implicit lift of constants
  Dual1(double v, Gradient g) : value(v), grad(std::move(g)) {}

  double partial(int i) const { return grad.size() == 0 ? 0.0 : grad[i]; }

  Dual1& operator+=(const Dual1& o) {
    value += o.value;
    grad = detail::axpby(1.0, grad, 1.0, o.grad);
    return *this;
  }
  Dual1& operator-=(const Dual1& o) {
    value -= o.value;
    grad = detail::axpby(1.0, grad, -1.0, o.grad);
    return *this;
  }
  Dual1& operator*=(const Dual1& o) {
    grad = detail::axpby(o.value, grad, value, o.grad);
    value *= o.value;
    return *this;
  }

  friend Dual1 operator+(Dual1 a, const Dual1& b) { return a += b; }
  friend Dual1 operator-(Dual1 a, const Dual1& b) { return a -= b; }
  friend Dual1 operator*(Dual1 a, const Dual1& b) { return a *= b; }
  friend Dual1 operator-(const Dual1& a) { return {-a.value, -a.grad}; }
  friend Dual1 operator/(const Dual1& a, const Dual1& b) {
    const double q = a.value / b.value;
    return {q, detail::axpby(1.0 / b.value, a.grad, -q / b.value, b.grad)};
  }
};

inline double value_of(double x) { return x; }
inline double value_of(const Dual1& x) { return x.value; }

struct Dual2 {
  double value = 0.0;
  Gradient grad;
  Hessian hess;

  static Dual2 constant(double v, int n) {
    return {v, Gradient::Zero(n), Hessian::Zero(n, n)};
  }
  static Dual2 variable(double v, int index, int n) {
    Dual2 d = constant(v, n);
    d.grad[index] = 1.0;
    return d;
  }

  int dimension() const { return static_cast<int>(grad.size()); }

  bool finite() const {
    return std::isfinite(value) && grad.allFinite() && hess.allFinite();
  }

  friend Dual2 operator+(const Dual2& a, const Dual2& b) {
    return {a.value + b.value, a.grad + b.grad, a.hess + b.hess};
  }
  friend Dual2 operator-(const Dual2& a, const Dual2& b) {
    return {a.value - b.value, a.grad - b.grad, a.hess - b.hess};
  }
  friend Dual2 operator-(const Dual2& a) { return {-a.value, -a.grad, -a.hess}; }
  friend Dual2 operator*(const Dual2& a, const Dual2& b) {
    Hessian cross = a.grad * b.grad.transpose();
    return {a.value * b.value, b.value * a.grad + a.value * b.grad,
            detail::mirrored(b.value * a.hess + a.value * b.hess + cross + cross.transpose())};
  }
  friend Dual2 operator/(const Dual2& a, const Dual2& b) {
    // a * (1/b), with the value taken as the plain quotient
    const double inv = 1.0 / b.value;
    Dual2 r = chain(b, inv, -inv * inv, 2.0 * inv * inv * inv);
    Dual2 out = a * r;
    out.value = a.value / b.value;
    return out;
  }

  /// f(x) given f, f', f'' at x.value.
  friend Dual2 chain(const Dual2& x, double f, double f1, double f2) {
    return {f, f1 * x.grad,
            detail::mirrored(f1 * x.hess + f2 * (x.grad * x.grad.transpose()))};
  }
};

inline double value_of(const Dual2& x) { return x.value; }

}  // namespace bimetric
