#pragma once

// Named residual checks over sampled points, and the aggregate suite.
//
//   theorem1        G(g,m) relates the two covariant derivatives of a vector
//   theorem2        R(delta,m) = R(delta,g) + R(g,m)
//   cocycle-gamma   G(m,g) + G(g,h) + G(h,m) = 0
//   cocycle-riemann R(m,g) + R(g,h) + R(h,m) = 0
//   flatness        R(delta,g) + R(g,m) = 0 (m flat)
//   ricci-identity  commutator of covariant derivatives of a covector
//   compatibility   m_ab;c(m) = 0

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bimetric/field.hpp"
#include "bimetric/random.hpp"
#include "bimetric/report.hpp"

namespace bimetric {

enum class CheckKind {
  Theorem1,
  Theorem2,
  CocycleGamma,
  CocycleRiemann,
  Flatness,
  RicciIdentity,
  Compatibility,
};

std::string_view check_name(CheckKind kind);
/// Throws ConfigError for unknown names.
CheckKind parse_check_name(std::string_view name);
int metric_count(CheckKind kind);

/// 1e-4 for finite differences; per-check values for dual mode.
double default_tolerance(CheckKind kind, DiffMode mode);

struct CheckOptions {
  int samples = 50;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;
  DiffMode mode = DiffMode::Dual;
  int probes = 5;  // probe fields per sample for theorem1 / ricci-identity
};

/// Intersection of the metrics' declared sample regions. Throws ConfigError
/// if no metric declares one or the intersection is empty.
SampleRegion intersect_regions(const std::vector<MetricField>& metrics);

/// `count` points uniform in the region, drawn serially from `rng`.
std::vector<Point> sample_points(const SampleRegion& region, int count, Xorshift64& rng);

ResidualReport run_check(CheckKind kind, const std::vector<MetricField>& metrics,
                         const CheckOptions& options);

nlohmann::json to_json(const ResidualReport& report);

struct SuiteOptions {
  std::vector<int> dims{2, 3};
  std::uint64_t seed = 1;
  DiffMode mode = DiffMode::Dual;
  int samples = 20;
  int pairs = 5;  // random metric pairs per dimension
};

/// Runs every check over the catalog builtins and seeded random metrics.
/// The returned document has "passed" == true iff every entry met its
/// expectation (a negative control is expected to fail).
nlohmann::json run_suite(const SuiteOptions& options);

}  // namespace bimetric
