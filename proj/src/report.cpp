#include "bimetric/report.hpp"

namespace bimetric {

ReportBuilder::ReportBuilder(std::string check_name, std::vector<std::string> metric_names,
                             DiffMode mode, double tolerance, std::uint64_t seed) {
  report_.check_name = std::move(check_name);
  report_.metric_names = std::move(metric_names);
  report_.mode = mode;
  report_.tolerance = tolerance;
  report_.seed = seed;
}

void ReportBuilder::add(const Point& point, double relative, double absolute) {
  if (report_.samples == 0 || relative > report_.max_residual) {
    report_.max_residual = relative;
    report_.max_abs_residual = absolute;
    report_.worst_point = point;
  }
  sum_ += relative;
  ++report_.samples;
}

ResidualReport ReportBuilder::finish() const {
  ResidualReport out = report_;
  out.mean_residual = out.samples ? sum_ / out.samples : 0.0;
  out.passed = out.samples > 0 && out.max_residual <= out.tolerance;
  return out;
}

}  // namespace bimetric
