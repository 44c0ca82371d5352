#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bimetric/chart.hpp"
#include "bimetric/expr.hpp"
#include "bimetric/tensor.hpp"

namespace bimetric {

/// Closed box [lo, hi] per coordinate.
using SampleRegion = std::vector<std::pair<double, double>>;

/// A tensor field whose components are expressions over a chart. The
/// optional domain guard marks the admissible region as {guard > 0}.
class TensorField {
 public:
  TensorField(ChartSpec chart, TensorShape shape, std::vector<Expr> components,
              std::optional<Expr> guard = std::nullopt);

  const ChartSpec& chart() const { return chart_; }
  const TensorShape& shape() const { return shape_; }
  const std::vector<Expr>& components() const { return components_; }
  const std::optional<Expr>& guard() const { return guard_; }

  bool admits(const Point& point) const;
  /// Throws SingularPointError if the guard rejects the point.
  void require_admits(const Point& point) const;

  Tensor<double> evaluate(const Point& point) const;

 private:
  ChartSpec chart_;
  TensorShape shape_;
  std::vector<Expr> components_;
  std::optional<Expr> guard_;
};

/// Symmetric positive-definite (0,2) field. Positive-definiteness is checked
/// where the metric is evaluated, not at construction.
class MetricField {
 public:
  /// `upper` holds the n(n+1)/2 upper-triangle components row by row.
  MetricField(std::string name, ChartSpec chart, std::vector<Expr> upper,
              std::optional<Expr> guard = std::nullopt, SampleRegion region = {});

  /// Identity components on the given chart: the chart's own flat metric.
  static MetricField euclidean(const ChartSpec& chart);

  const std::string& name() const { return name_; }
  const ChartSpec& chart() const { return field_.chart(); }
  int dimension() const { return field_.chart().dimension(); }
  const TensorField& field() const { return field_; }
  const SampleRegion& sample_region() const { return region_; }
  const Expr& component(int a, int b) const;

  /// Same metric with every component multiplied by a positive constant.
  MetricField scaled(double factor) const;

  /// True if every component is a constant expression.
  bool is_constant() const;

 private:
  std::string name_;
  TensorField field_;
  SampleRegion region_;
};

}  // namespace bimetric
