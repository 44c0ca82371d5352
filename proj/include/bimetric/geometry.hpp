#pragma once

// Point-wise connection kernels, templated on the scalar type.
//
// With Scalar = double they produce values at a point. With Scalar = Dual1,
// fed from second-order jets, every output additionally carries its first
// partial derivatives, which is how derivatives of Christoffel tensors are
// obtained for curvature.

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "bimetric/dual.hpp"
#include "bimetric/error.hpp"
#include "bimetric/tensor.hpp"

namespace bimetric {

/// Metric components (0,2) and their partials (0,3), partials(a, b, c) = d_c m_ab.
template <typename Scalar>
struct MetricJet {
  Tensor<Scalar> metric;
  Tensor<Scalar> partials;
};

namespace detail {

inline bool same(double a, double b) { return a == b; }
inline bool same(const Dual1& a, const Dual1& b) {
  if (a.value != b.value) return false;
  const int n = static_cast<int>(std::max(a.grad.size(), b.grad.size()));
  for (int i = 0; i < n; ++i)
    if (a.partial(i) != b.partial(i)) return false;
  return true;
}

template <typename Scalar>
bool same(const Tensor<Scalar>& a, const Tensor<Scalar>& b) {
  if (!(a.shape() == b.shape())) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

inline Eigen::MatrixXd to_matrix(const Tensor<double>& m) {
  const int n = m.dimension();
  Eigen::MatrixXd out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = m(a, b);
  return out;
}

}  // namespace detail

/// Equal jets describe the same connection at the point.
template <typename Scalar>
bool identical_jets(const MetricJet<Scalar>& a, const MetricJet<Scalar>& b) {
  return detail::same(a.metric, b.metric) && detail::same(a.partials, b.partials);
}

/// Inverse of (0,2) components as a (2,0) tensor, via Cholesky. Throws
/// NotPositiveDefiniteError if the factorization fails.
inline Tensor<double> inverse(const Tensor<double>& m) {
  const int n = m.dimension();
  Eigen::LLT<Eigen::MatrixXd> llt(detail::to_matrix(m));
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefiniteError("metric components are not positive definite");
  const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  Tensor<double> out({2, 0, n});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = 0.5 * (inv(a, b) + inv(b, a));
  return out;
}

/// d(M^-1) = -M^-1 dM M^-1 applied per gradient direction.
inline Tensor<Dual1> inverse(const Tensor<Dual1>& m) {
  const int n = m.dimension();
  Tensor<double> values({0, 2, n});
  int grad_size = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    values[i] = m[i].value;
    grad_size = std::max(grad_size, static_cast<int>(m[i].grad.size()));
  }
  const Tensor<double> inv = inverse(values);
  const Eigen::MatrixXd inv_m = detail::to_matrix(inv);
  Tensor<Dual1> out({2, 0, n});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out(a, b) = Dual1(inv(a, b));
  for (int k = 0; k < grad_size; ++k) {
    Eigen::MatrixXd dm(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) dm(a, b) = m(a, b).partial(k);
    const Eigen::MatrixXd dinv = -inv_m * dm * inv_m;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Dual1& x = out(a, b);
        if (x.grad.size() == 0) x.grad = Gradient::Zero(grad_size);
        x.grad[k] = 0.5 * (dinv(a, b) + dinv(b, a));
      }
  }
  return out;
}

/// Christoffel symbols of the second kind from partial derivatives:
/// G^a_bc = 1/2 g^an (d_c g_nb + d_b g_nc - d_n g_bc).
template <typename Scalar>
Tensor<Scalar> christoffel_from_partials(const MetricJet<Scalar>& g) {
  const int n = g.metric.dimension();
  const Tensor<Scalar> ginv = inverse(g.metric);
  const Tensor<Scalar>& d = g.partials;
  Tensor<Scalar> out({1, 2, n});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Scalar sum(0.0);
        for (int s = 0; s < n; ++s)
          sum += ginv(a, s) * (d(s, b, c) + d(s, c, b) - d(b, c, s));
        out(a, b, c) = Scalar(0.5) * sum;
        out(a, c, b) = out(a, b, c);
      }
  return out;
}

/// Covariant derivative of a (p,q) tensor given its components, partials
/// (trailing derivative slot) and a connection G^a_bc: one +G term per
/// contravariant slot and one -G term per covariant slot. Result is (p, q+1)
/// with the derivative index last.
template <typename Scalar>
Tensor<Scalar> covariant_derivative(const Tensor<Scalar>& value,
                                    const Tensor<Scalar>& partials,
                                    const Tensor<Scalar>& connection) {
  const TensorShape s = value.shape();
  const int n = s.dimension;
  TensorShape out_shape = s;
  out_shape.lower += 1;
  out_shape.validate();
  if (!(partials.shape() == out_shape))
    throw ShapeError("covariant_derivative: partials shape mismatch");
  if (!(connection.shape() == TensorShape{1, 2, n}))
    throw ShapeError("covariant_derivative: connection must be (1,2)");
  Tensor<Scalar> out = partials;
  const int rank = s.rank();
  for_each_index(out, [&](std::size_t flat, const MultiIndex& idx) {
    const int c = idx[rank];
    Scalar acc = out[flat];
    for (int slot = 0; slot < rank; ++slot) {
      MultiIndex src = idx;
      const int free = idx[slot];
      for (int t = 0; t < n; ++t) {
        src[slot] = t;
        if (slot < s.upper)
          acc += connection(free, t, c) * value.at(src);
        else
          acc -= connection(t, free, c) * value.at(src);
      }
    }
    out[flat] = acc;
  });
  return out;
}

/// Relative Christoffel tensor G(g,m)^a_bc = 1/2 m^an (m_nb;c + m_nc;b - m_bc;n),
/// with ';' the covariant derivative of g. Exactly zero when the jets agree.
template <typename Scalar>
Tensor<Scalar> christoffel_relative(const MetricJet<Scalar>& g,
                                    const MetricJet<Scalar>& m) {
  const int n = m.metric.dimension();
  if (g.metric.dimension() != n)
    throw ShapeError("christoffel_relative: metrics differ in dimension");
  Tensor<Scalar> out({1, 2, n});
  if (identical_jets(g, m)) return out;
  const Tensor<Scalar> dm =
      covariant_derivative(m.metric, m.partials, christoffel_from_partials(g));
  const Tensor<Scalar> minv = inverse(m.metric);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = b; c < n; ++c) {
        Scalar sum(0.0);
        for (int s = 0; s < n; ++s)
          sum += minv(a, s) * (dm(s, b, c) + dm(s, c, b) - dm(b, c, s));
        out(a, b, c) = Scalar(0.5) * sum;
        out(a, c, b) = out(a, b, c);
      }
  return out;
}

}  // namespace bimetric
