#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "bimetric/tensor.hpp"

namespace bimetric {

/// Coordinates of one chart point, ordered like ChartSpec::coordinates.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDimension, 1>;

/// Names the coordinates of a chart. Two charts are compatible when their
/// dimensions agree; names are labels local to each metric description.
class ChartSpec {
 public:
  ChartSpec() = default;
  explicit ChartSpec(std::vector<std::string> coordinates);

  int dimension() const { return static_cast<int>(coordinates_.size()); }
  const std::vector<std::string>& coordinates() const { return coordinates_; }

  /// Index of a coordinate name, or -1.
  int find(const std::string& name) const;

  friend bool operator==(const ChartSpec&, const ChartSpec&) = default;

 private:
  std::vector<std::string> coordinates_;
};

bool compatible(const ChartSpec& a, const ChartSpec& b);
void require_compatible(const ChartSpec& a, const ChartSpec& b);

/// Throws ShapeError unless the point has the chart's dimension and finite
/// coordinates.
void require_point(const ChartSpec& chart, const Point& point);

/// Parses "2,0.7" into a point.
Point parse_point(const std::string& text);

std::string format_point(const Point& point);

}  // namespace bimetric
