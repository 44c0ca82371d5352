#include "bimetric/field.hpp"

#include "bimetric/error.hpp"

namespace bimetric {

TensorField::TensorField(ChartSpec chart, TensorShape shape,
                         std::vector<Expr> components, std::optional<Expr> guard)
    : chart_(std::move(chart)),
      shape_(shape),
      components_(std::move(components)),
      guard_(std::move(guard)) {
  shape_.validate();
  if (shape_.dimension != chart_.dimension())
    throw ShapeError("field shape dimension differs from chart dimension");
  if (components_.size() != shape_.size())
    throw ShapeError("field needs " + std::to_string(shape_.size()) +
                     " components, got " + std::to_string(components_.size()));
  for (const auto& c : components_)
    if (c.dimension() != chart_.dimension())
      throw ChartMismatchError("component expression over a different chart");
  if (guard_ && guard_->dimension() != chart_.dimension())
    throw ChartMismatchError("domain guard over a different chart");
}

bool TensorField::admits(const Point& point) const {
  if (!guard_) return true;
  try {
    return eval(*guard_, point) > 0.0;
  } catch (const DomainError&) {
    return false;
  }
}

void TensorField::require_admits(const Point& point) const {
  require_point(chart_, point);
  if (!admits(point))
    throw SingularPointError("point (" + format_point(point) +
                             ") violates the domain guard");
}

Tensor<double> TensorField::evaluate(const Point& point) const {
  require_admits(point);
  Tensor<double> out(shape_);
  for (std::size_t i = 0; i < components_.size(); ++i)
    out[i] = eval(components_[i], point);
  return out;
}

namespace {

std::vector<Expr> symmetric_completion(int n, std::vector<Expr> upper) {
  const std::size_t expected = static_cast<std::size_t>(n * (n + 1) / 2);
  if (upper.size() != expected)
    throw ShapeError("metric needs " + std::to_string(expected) +
                     " upper-triangle components, got " +
                     std::to_string(upper.size()));
  std::vector<Expr> full(static_cast<std::size_t>(n * n));
  std::size_t k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b, ++k) {
      full[static_cast<std::size_t>(a * n + b)] = upper[k];
      full[static_cast<std::size_t>(b * n + a)] = upper[k];
    }
  return full;
}

}  // namespace

MetricField::MetricField(std::string name, ChartSpec chart, std::vector<Expr> upper,
                         std::optional<Expr> guard, SampleRegion region)
    : name_(std::move(name)),
      field_(chart, {0, 2, chart.dimension()},
             symmetric_completion(chart.dimension(), std::move(upper)),
             std::move(guard)),
      region_(std::move(region)) {
  if (!region_.empty() && static_cast<int>(region_.size()) != chart.dimension())
    throw ShapeError("sample region dimension differs from chart dimension");
  for (const auto& [lo, hi] : region_)
    if (!(lo <= hi)) throw ConfigError("sample region bounds out of order");
}

MetricField MetricField::euclidean(const ChartSpec& chart) {
  const int n = chart.dimension();
  std::vector<Expr> upper;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) upper.push_back(Expr::constant(a == b ? 1.0 : 0.0, n));
  return MetricField("euclidean" + std::to_string(n), chart, std::move(upper));
}

const Expr& MetricField::component(int a, int b) const {
  return field_.components()[static_cast<std::size_t>(a * dimension() + b)];
}

MetricField MetricField::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw ConfigError("metric scale factor must be positive and finite");
  const int n = dimension();
  const Expr c = Expr::constant(factor, n);
  std::vector<Expr> upper;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) upper.push_back(c * component(a, b));
  return MetricField(name_ + "*" + std::to_string(factor), chart(), std::move(upper),
                     field_.guard(), region_);
}

bool MetricField::is_constant() const {
  for (const auto& c : field_.components())
    if (!c.is_constant()) return false;
  return true;
}

}  // namespace bimetric
