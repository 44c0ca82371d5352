#include "bimetric/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "bimetric/error.hpp"

namespace bimetric {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

MetricManifest diagonal(std::string name, std::vector<std::string> coords,
                        std::vector<std::string> diag, std::optional<std::string> guard,
                        SampleRegion region, std::string notes) {
  const std::size_t n = coords.size();
  MetricManifest m{std::move(name), std::move(coords), {}, std::move(guard),
                   std::move(region), std::move(notes)};
  m.components.assign(n, std::vector<std::string>(n, "0"));
  for (std::size_t i = 0; i < n; ++i) m.components[i][i] = diag[i];
  return m;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"euclidean2", "euclidean3", "polar_flat", "sphere_unit", "poincare_half",
          "conformal"};
}

MetricManifest builtin(std::string_view name) {
  if (name == "euclidean2")
    return diagonal("euclidean2", {"x", "y"}, {"1", "1"}, std::nullopt,
                    {{-1.0, 1.0}, {-1.0, 1.0}}, "identity components; flat");
  if (name == "euclidean3")
    return diagonal("euclidean3", {"x", "y", "z"}, {"1", "1", "1"}, std::nullopt,
                    {{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}},
                    "identity components; flat");
  if (name == "polar_flat")
    return diagonal("polar_flat", {"r", "theta"}, {"1", "r^2"}, "r",
                    {{0.5, 2.0}, {0.0, kTwoPi}}, "flat plane in polar coordinates");
  if (name == "sphere_unit")
    return diagonal("sphere_unit", {"theta", "phi"}, {"1", "sin(theta)^2"},
                    "sin(theta)", {{0.3, 2.8}, {0.0, kTwoPi}},
                    "unit round sphere; scalar curvature 2");
  if (name == "poincare_half")
    return diagonal("poincare_half", {"x", "y"}, {"1/y^2", "1/y^2"}, "y",
                    {{-2.0, 2.0}, {0.25, 4.0}},
                    "hyperbolic upper half-plane; scalar curvature -2");
  if (name == "conformal") {
    const std::string factor = "exp(2*(0.25*sin(x)*cos(y) + 0.1*x*y))";
    return diagonal("conformal", {"x", "y"}, {factor, factor}, std::nullopt,
                    {{-1.0, 1.0}, {-1.0, 1.0}},
                    "exp(2 phi) times identity, phi = 0.25 sin(x) cos(y) + 0.1 x y");
  }
  throw NotFoundError("unknown builtin metric '" + std::string(name) + "'");
}

std::vector<std::vector<int>> monomial_exponents(int dimension, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(dimension), 0);
  // exponents with total exactly `total`, first coordinate varying slowest
  std::function<void(int, int)> fill = [&](int slot, int remaining) {
    if (slot == dimension - 1) {
      e[static_cast<std::size_t>(slot)] = remaining;
      out.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[static_cast<std::size_t>(slot)] = k;
      fill(slot + 1, remaining - k);
    }
  };
  for (int total = 0; total <= degree; ++total) fill(0, total);
  return out;
}

std::string polynomial_source(const std::vector<std::string>& names,
                              const std::vector<std::vector<int>>& exponents,
                              const std::vector<double>& coefficients) {
  std::string out;
  for (std::size_t t = 0; t < exponents.size(); ++t) {
    const double c = coefficients[t];
    std::string term = format_number(std::abs(c));
    for (std::size_t i = 0; i < names.size(); ++i) {
      const int p = exponents[t][i];
      if (p == 0) continue;
      term += "*" + names[i];
      if (p > 1) term += "^" + std::to_string(p);
    }
    if (out.empty())
      out = (std::signbit(c) ? "-" : "") + term;
    else
      out += (std::signbit(c) ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

MetricManifest random_metric(int dimension, std::uint64_t seed, int roughness) {
  if (dimension != 2 && dimension != 3)
    throw ConfigError("random_metric supports dimensions 2 and 3");
  if (roughness < 0 || roughness > kMaxRoughness)
    throw ConfigError("random_metric roughness must be in [0, 3]");
  const std::vector<std::string> names =
      dimension == 2 ? std::vector<std::string>{"x", "y"}
                     : std::vector<std::string>{"x", "y", "z"};
  const auto exponents = monomial_exponents(dimension, roughness);
  Xorshift64 rng(seed);
  const std::size_t n = static_cast<std::size_t>(dimension);
  std::vector<std::vector<std::string>> b(n, std::vector<std::string>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> coefs(exponents.size());
      for (double& c : coefs) c = rng.uniform(-0.5, 0.5);
      b[i][j] = polynomial_source(names, exponents, coefs);
    }

  MetricManifest m;
  m.name = "random" + std::to_string(dimension) + "d_s" + std::to_string(seed) + "_r" +
           std::to_string(roughness);
  m.coordinates = names;
  m.components.assign(n, std::vector<std::string>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a; c < n; ++c) {
      std::string s;
      for (std::size_t k = 0; k < n; ++k) {
        if (k) s += " + ";
        s += "(" + b[k][a] + ")*(" + b[k][c] + ")";
      }
      if (a == c) s += " + " + format_number(kRandomMetricFloor);
      m.components[a][c] = s;
      m.components[c][a] = s;
    }
  m.sample_region.assign(n, {-1.0, 1.0});
  std::ostringstream notes;
  notes << "B^T B + 0.1 I with random polynomial B; seed " << seed << ", roughness "
        << roughness;
  m.notes = notes.str();
  return m;
}

MetricField build_metric(const MetricManifest& manifest) {
  const int n = manifest.dimension();
  ChartSpec chart;
  try {
    chart = ChartSpec(manifest.coordinates);
  } catch (const ShapeError& e) {
    throw ParseError(manifest.name + ": " + e.what());
  }
  if (manifest.components.size() != static_cast<std::size_t>(n))
    throw ParseError(manifest.name + ": components must be a " + std::to_string(n) +
                     "x" + std::to_string(n) + " matrix");
  for (const auto& row : manifest.components)
    if (row.size() != static_cast<std::size_t>(n))
      throw ParseError(manifest.name + ": components must be a " + std::to_string(n) +
                       "x" + std::to_string(n) + " matrix");

  auto parse_at = [&](const std::string& source, const std::string& where) {
    try {
      return parse(source, chart);
    } catch (const ParseError& e) {
      throw ParseError(manifest.name + ": " + where + ": " + e.what(), e.offset());
    }
  };
  std::vector<Expr> upper;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const std::string where =
          "components[" + std::to_string(a) + "][" + std::to_string(b) + "]";
      Expr e = parse_at(manifest.components[a][b], where);
      if (a != b) {
        const std::string mirror =
            "components[" + std::to_string(b) + "][" + std::to_string(a) + "]";
        if (!(parse_at(manifest.components[b][a], mirror) == e))
          throw ParseError(manifest.name + ": " + where + " and " + mirror +
                           " differ; components must be symmetric");
      }
      upper.push_back(std::move(e));
    }
  std::optional<Expr> guard;
  if (manifest.domain_guard) guard = parse_at(*manifest.domain_guard, "domain_guard");
  if (!manifest.sample_region.empty() &&
      manifest.sample_region.size() != static_cast<std::size_t>(n))
    throw ParseError(manifest.name + ": sample_region needs one interval per coordinate");
  for (const auto& [lo, hi] : manifest.sample_region)
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
      throw ParseError(manifest.name + ": malformed sample_region interval");
  return MetricField(manifest.name, chart, std::move(upper), std::move(guard),
                     manifest.sample_region);
}

nlohmann::json to_json(const MetricManifest& m) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["name"] = m.name;
  doc["dimension"] = m.dimension();
  doc["coordinates"] = m.coordinates;
  doc["components"] = m.components;
  if (m.domain_guard) doc["domain_guard"] = *m.domain_guard;
  nlohmann::json region = nlohmann::json::array();
  for (const auto& [lo, hi] : m.sample_region) region.push_back({lo, hi});
  doc["sample_region"] = region;
  if (!m.notes.empty()) doc["notes"] = m.notes;
  return doc;
}

MetricManifest manifest_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw ParseError("manifest must be a JSON object");
    if (doc.contains("schema") && doc.at("schema").get<int>() != 1)
      throw ParseError("unsupported manifest schema");
    MetricManifest m;
    m.name = doc.at("name").get<std::string>();
    m.coordinates = doc.at("coordinates").get<std::vector<std::string>>();
    const int dim = doc.at("dimension").get<int>();
    if (dim != m.dimension())
      throw ParseError(m.name + ": dimension does not match coordinate count");
    m.components = doc.at("components").get<std::vector<std::vector<std::string>>>();
    if (doc.contains("domain_guard") && !doc.at("domain_guard").is_null())
      m.domain_guard = doc.at("domain_guard").get<std::string>();
    if (doc.contains("sample_region"))
      for (const auto& interval : doc.at("sample_region")) {
        if (!interval.is_array() || interval.size() != 2)
          throw ParseError(m.name + ": sample_region entries must be [lo, hi]");
        m.sample_region.emplace_back(interval[0].get<double>(), interval[1].get<double>());
      }
    if (doc.contains("notes")) m.notes = doc.at("notes").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
}

MetricManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open manifest '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
  try {
    return manifest_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

TensorField random_probe_field(const ChartSpec& chart, std::uint64_t seed,
                               bool covariant, int degree) {
  const int n = chart.dimension();
  const auto exponents = monomial_exponents(n, degree);
  Xorshift64 rng(seed);
  std::vector<Expr> comps;
  for (int i = 0; i < n; ++i) {
    std::vector<double> coefs(exponents.size());
    for (double& c : coefs) c = rng.uniform(-1.0, 1.0);
    comps.push_back(parse(polynomial_source(chart.coordinates(), exponents, coefs), chart));
  }
  const TensorShape shape = covariant ? TensorShape{0, 1, n} : TensorShape{1, 0, n};
  return TensorField(chart, shape, std::move(comps));
}

}  // namespace bimetric
