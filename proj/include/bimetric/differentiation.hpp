#pragma once

#include <string>
#include <string_view>

#include "bimetric/dual.hpp"
#include "bimetric/field.hpp"
#include "bimetric/tensor.hpp"

namespace bimetric {

enum class DiffMode {
  Dual,       // exact forward mode via second-order duals
  CentralFD,  // central finite differences
};

std::string_view to_string(DiffMode mode);
/// Accepts "dual" or "fd".
DiffMode parse_diff_mode(std::string_view text);

/// Central-difference step for coordinate value x:
/// eps^(1/3) * max(1, |x|) for first order, eps^(1/4) * max(1, |x|) for second.
double fd_step(double x, int order);

/// Components and partial derivatives of a field at one point. Derivative
/// slots are appended as trailing covariant slots; `second_partials` is only
/// populated when order == 2.
struct FieldJet {
  int order = 1;
  Tensor<double> components;
  Tensor<double> partials;
  Tensor<double> second_partials;
};

/// Throws SingularPointError if the point (or, in FD mode, any stencil
/// point) fails the field's domain guard, DomainError on non-finite values.
FieldJet jet(const TensorField& field, const Point& point, int order, DiffMode mode);

/// Components as Dual1 values whose gradients are the first partials.
Tensor<Dual1> lift_components(const FieldJet& jet);
/// First partials as Dual1 values whose gradients are the second partials.
/// Requires an order-2 jet.
Tensor<Dual1> lift_partials(const FieldJet& jet);

/// Splits a Dual1 tensor into plain values and a tensor with the gradient
/// as an extra trailing covariant slot.
Tensor<double> value_part(const Tensor<Dual1>& t);
Tensor<double> gradient_part(const Tensor<Dual1>& t);

}  // namespace bimetric
