#pragma once

// Built-in analytic metrics, seeded random SPD metrics, and the JSON
// manifest format used to describe metrics on disk:
//
//   {
//     "schema": 1,
//     "name": "polar_flat",
//     "dimension": 2,
//     "coordinates": ["r", "theta"],
//     "components": [["1", "0"], ["0", "r^2"]],   // full symmetric matrix
//     "domain_guard": "r",                         // optional; valid where > 0
//     "sample_region": [[0.5, 2.0], [0.0, 6.283185307179586]],
//     "notes": "..."                               // optional
//   }

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bimetric/field.hpp"
#include "bimetric/random.hpp"

namespace bimetric {

struct MetricManifest {
  std::string name;
  std::vector<std::string> coordinates;
  std::vector<std::vector<std::string>> components;
  std::optional<std::string> domain_guard;
  SampleRegion sample_region;
  std::string notes;

  int dimension() const { return static_cast<int>(coordinates.size()); }
};

std::vector<std::string> builtin_names();

/// Throws NotFoundError for unknown names.
MetricManifest builtin(std::string_view name);

inline constexpr double kRandomMetricFloor = 0.1;
inline constexpr int kMaxRoughness = 3;

/// m = B^T B + 0.1 I, B's entries polynomials of total degree <= roughness
/// in the coordinates with coefficients uniform in [-0.5, 0.5]. Sample
/// region [-1, 1]^dim. Deterministic in (dim, seed, roughness).
MetricManifest random_metric(int dimension, std::uint64_t seed, int roughness);

/// Parses every expression and checks symmetry. Throws ParseError.
MetricField build_metric(const MetricManifest& manifest);

nlohmann::json to_json(const MetricManifest& manifest);
/// Throws ParseError on schema violations.
MetricManifest manifest_from_json(const nlohmann::json& doc);
MetricManifest load_manifest(const std::string& path);

/// Exponent tuples of all monomials of total degree <= degree, graded.
std::vector<std::vector<int>> monomial_exponents(int dimension, int degree);

/// Renders sum_k coefficients[k] * monomial_k over the given names.
std::string polynomial_source(const std::vector<std::string>& names,
                              const std::vector<std::vector<int>>& exponents,
                              const std::vector<double>& coefficients);

/// Seeded random polynomial vector (upper) or covector (lower) field of
/// total degree <= degree, coefficients uniform in [-1, 1].
TensorField random_probe_field(const ChartSpec& chart, std::uint64_t seed,
                               bool covariant, int degree = 2);

}  // namespace bimetric
