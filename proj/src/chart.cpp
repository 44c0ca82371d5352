#include "bimetric/chart.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "bimetric/error.hpp"
#include "bimetric/expr.hpp"

namespace bimetric {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
  return head(s.front()) && std::all_of(s.begin() + 1, s.end(), tail);
}

}  // namespace

ChartSpec::ChartSpec(std::vector<std::string> coordinates)
    : coordinates_(std::move(coordinates)) {
  if (coordinates_.empty() ||
      static_cast<int>(coordinates_.size()) > kMaxDimension)
    throw ShapeError("chart dimension must be in [1, " +
                     std::to_string(kMaxDimension) + "]");
  std::set<std::string> seen;
  for (const auto& name : coordinates_) {
    if (!is_identifier(name))
      throw ParseError("invalid coordinate name '" + name + "'");
    if (is_function_name(name))
      throw ParseError("coordinate name '" + name + "' shadows a function");
    if (!seen.insert(name).second)
      throw ParseError("duplicate coordinate name '" + name + "'");
  }
}

int ChartSpec::find(const std::string& name) const {
  auto it = std::find(coordinates_.begin(), coordinates_.end(), name);
  return it == coordinates_.end() ? -1
                                  : static_cast<int>(it - coordinates_.begin());
}

bool compatible(const ChartSpec& a, const ChartSpec& b) {
  return a.dimension() == b.dimension();
}

void require_compatible(const ChartSpec& a, const ChartSpec& b) {
  if (!compatible(a, b))
    throw ChartMismatchError("chart dimensions differ: " +
                             std::to_string(a.dimension()) + " vs " +
                             std::to_string(b.dimension()));
}

void require_point(const ChartSpec& chart, const Point& point) {
  if (point.size() != chart.dimension())
    throw ShapeError("point has " + std::to_string(point.size()) +
                     " coordinates, chart has " +
                     std::to_string(chart.dimension()));
  if (!point.allFinite()) throw ShapeError("point has non-finite coordinates");
}

Point parse_point(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string item = text.substr(pos, end - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() ||
        !std::isfinite(v))
      throw ParseError("bad point coordinate '" + item + "'", pos);
    values.push_back(v);
    pos = end + 1;
  }
  if (values.size() > static_cast<std::size_t>(kMaxDimension))
    throw ParseError("point has too many coordinates");
  Point p(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    p[static_cast<Eigen::Index>(i)] = values[i];
  return p;
}

std::string format_point(const Point& point) {
  std::string out;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    if (i) out += ',';
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, point[i]);
    out.append(buf, ptr);
  }
  return out;
}

}  // namespace bimetric
