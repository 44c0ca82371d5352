#pragma once

#include "bimetric/differentiation.hpp"
#include "bimetric/field.hpp"
#include "bimetric/geometry.hpp"

namespace bimetric {

/// Values G^a_bc stored as a (1,2) tensor; symmetric in b and c.
struct ChristoffelComponents {
  Tensor<double> values;
  Point base_point;
};

struct InverseMetric {
  Tensor<double> values;    // (2,0)
  double condition_number;  // largest / smallest eigenvalue
};

/// Largest residual component next to the magnitude of the largest term
/// entering it. Pass/fail decisions use relative() = max_abs / (1 + scale).
struct Residual {
  double max_abs = 0.0;
  double scale = 0.0;
  double relative() const { return max_abs / (1.0 + scale); }
};

inline constexpr double kConditionWarning = 1e8;

InverseMetric inverse_metric(const MetricField& m, const Point& point);

MetricJet<double> metric_jet(const MetricField& m, const Point& point, DiffMode mode);
/// Second-order jet lifted so every entry carries its own gradient.
MetricJet<Dual1> metric_jet_lifted(const MetricField& m, const Point& point,
                                   DiffMode mode);

/// G(g,m): connection of m relative to g, built from g-covariant derivatives
/// of m.
ChristoffelComponents christoffel_relative(const MetricField& g, const MetricField& m,
                                           const Point& point,
                                           DiffMode mode = DiffMode::Dual);

/// Chart Christoffel symbols computed as G(delta, g) with delta the identity
/// metric on g's chart.
ChristoffelComponents christoffel_classic(const MetricField& g, const Point& point,
                                          DiffMode mode = DiffMode::Dual);

/// Chart Christoffel symbols from the textbook partial-derivative formula.
ChristoffelComponents christoffel_from_partials(const MetricField& g, const Point& point,
                                                DiffMode mode = DiffMode::Dual);

/// Covariant derivative of `field` with respect to g's Levi-Civita connection.
Tensor<double> covariant_derivative(const MetricField& g, const TensorField& field,
                                    const Point& point, DiffMode mode = DiffMode::Dual);

/// v^a;b(m) - v^a;b(g) - G(g,m)^a_cb v^c.
Residual theorem1_residual(const MetricField& g, const MetricField& m,
                           const TensorField& v, const Point& point,
                           DiffMode mode = DiffMode::Dual);

/// G(m,g) + G(g,h) + G(h,m).
Residual cocycle_gamma(const MetricField& m, const MetricField& g, const MetricField& h,
                       const Point& point, DiffMode mode = DiffMode::Dual);

/// m_ab;c taken with m's own connection.
Residual compatibility_residual(const MetricField& m, const Point& point,
                                DiffMode mode = DiffMode::Dual);

}  // namespace bimetric
