#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bimetric/chart.hpp"
#include "bimetric/differentiation.hpp"

namespace bimetric {

/// Outcome of one residual check over a set of sample points.
///
/// Residuals are relative: |residual| / (1 + largest term magnitude), taken
/// as the maximum over components and then over samples.
struct ResidualReport {
  std::string check_name;
  std::vector<std::string> metric_names;
  DiffMode mode = DiffMode::Dual;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double max_abs_residual = 0.0;  // unscaled, at the worst sample
  double tolerance = 0.0;
  bool passed = false;
  Point worst_point;
};

/// Accumulates per-sample residuals in sample order.
class ReportBuilder {
 public:
  ReportBuilder(std::string check_name, std::vector<std::string> metric_names,
                DiffMode mode, double tolerance, std::uint64_t seed = 0);

  void add(const Point& point, double relative, double absolute);
  ResidualReport finish() const;

 private:
  ResidualReport report_;
  double sum_ = 0.0;
};

}  // namespace bimetric
