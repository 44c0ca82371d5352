#include "bimetric/checks.hpp"

#include <algorithm>
#include <array>

#include "bimetric/catalog.hpp"
#include "bimetric/connection.hpp"
#include "bimetric/curvature.hpp"
#include "bimetric/error.hpp"

namespace bimetric {

namespace {

struct CheckInfo {
  CheckKind kind;
  std::string_view name;
  int metrics;
  double dual_tolerance;
};

constexpr std::array<CheckInfo, 7> kChecks{{
    {CheckKind::Theorem1, "theorem1", 2, 1e-8},
    {CheckKind::Theorem2, "theorem2", 2, 1e-7},
    {CheckKind::CocycleGamma, "cocycle-gamma", 3, 1e-9},
    {CheckKind::CocycleRiemann, "cocycle-riemann", 3, 1e-7},
    {CheckKind::Flatness, "flatness", 2, 1e-7},
    {CheckKind::RicciIdentity, "ricci-identity", 1, 1e-7},
    {CheckKind::Compatibility, "compatibility", 1, 1e-10},
}};

constexpr double kFdTolerance = 1e-4;

const CheckInfo& info(CheckKind kind) {
  for (const auto& c : kChecks)
    if (c.kind == kind) return c;
  throw ConfigError("unknown check");
}

// Distinct streams for points and probe fields derived from one seed.
std::uint64_t probe_seed(std::uint64_t seed, int index) {
  return Xorshift64::splitmix64(seed ^ (0xA5A5A5A5ULL + static_cast<std::uint64_t>(index)));
}

}  // namespace

std::string_view check_name(CheckKind kind) { return info(kind).name; }

CheckKind parse_check_name(std::string_view name) {
  for (const auto& c : kChecks)
    if (c.name == name) return c.kind;
  throw ConfigError("unknown check '" + std::string(name) + "'");
}

int metric_count(CheckKind kind) { return info(kind).metrics; }

double default_tolerance(CheckKind kind, DiffMode mode) {
  return mode == DiffMode::CentralFD ? kFdTolerance : info(kind).dual_tolerance;
}

SampleRegion intersect_regions(const std::vector<MetricField>& metrics) {
  SampleRegion out;
  for (const auto& m : metrics) {
    const SampleRegion& r = m.sample_region();
    if (r.empty()) continue;
    if (out.empty()) {
      out = r;
      continue;
    }
    if (r.size() != out.size()) throw ChartMismatchError("sample regions differ in dimension");
    for (std::size_t i = 0; i < r.size(); ++i) {
      out[i].first = std::max(out[i].first, r[i].first);
      out[i].second = std::min(out[i].second, r[i].second);
    }
  }
  if (out.empty()) throw ConfigError("no metric declares a sample region");
  for (const auto& [lo, hi] : out)
    if (lo > hi) throw ConfigError("sample regions do not intersect");
  return out;
}

std::vector<Point> sample_points(const SampleRegion& region, int count, Xorshift64& rng) {
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int s = 0; s < count; ++s) {
    Point p(static_cast<Eigen::Index>(region.size()));
    for (std::size_t i = 0; i < region.size(); ++i)
      p[static_cast<Eigen::Index>(i)] = rng.uniform(region[i].first, region[i].second);
    points.push_back(p);
  }
  return points;
}

ResidualReport run_check(CheckKind kind, const std::vector<MetricField>& metrics,
                         const CheckOptions& options) {
  const CheckInfo& ci = info(kind);
  if (static_cast<int>(metrics.size()) != ci.metrics)
    throw ConfigError(std::string(ci.name) + " needs " + std::to_string(ci.metrics) +
                      " metrics, got " + std::to_string(metrics.size()));
  if (options.samples < 1) throw ConfigError("need at least one sample");
  for (const auto& m : metrics) require_compatible(metrics.front().chart(), m.chart());

  const double tol = options.tolerance.value_or(default_tolerance(kind, options.mode));
  Xorshift64 rng(options.seed);
  const std::vector<Point> points =
      sample_points(intersect_regions(metrics), options.samples, rng);

  std::vector<std::string> names;
  for (const auto& m : metrics) names.push_back(m.name());
  const DiffMode mode = options.mode;

  if (kind == CheckKind::Flatness) {
    ResidualReport r = flatness_check(metrics[0], metrics[1], points, tol, mode);
    r.seed = options.seed;
    return r;
  }

  std::vector<TensorField> probes;
  if (kind == CheckKind::Theorem1 || kind == CheckKind::RicciIdentity)
    for (int i = 0; i < options.probes; ++i)
      probes.push_back(random_probe_field(metrics[0].chart(), probe_seed(options.seed, i),
                                          kind == CheckKind::RicciIdentity));

  ReportBuilder report(std::string(ci.name), names, mode, tol, options.seed);
  for (const Point& p : points) {
    Residual worst;
    auto keep = [&](const Residual& r) {
      if (r.relative() > worst.relative()) worst = r;
    };
    switch (kind) {
      case CheckKind::Theorem1:
        for (const auto& v : probes) keep(theorem1_residual(metrics[0], metrics[1], v, p, mode));
        break;
      case CheckKind::Theorem2:
        keep(theorem2_residual(metrics[0], metrics[1], p, mode));
        break;
      case CheckKind::CocycleGamma:
        keep(cocycle_gamma(metrics[0], metrics[1], metrics[2], p, mode));
        break;
      case CheckKind::CocycleRiemann:
        keep(cocycle_riemann(metrics[0], metrics[1], metrics[2], p, mode));
        break;
      case CheckKind::RicciIdentity:
        for (const auto& v : probes) keep(ricci_identity_residual(metrics[0], v, p, mode));
        break;
      case CheckKind::Compatibility:
        keep(compatibility_residual(metrics[0], p, mode));
        break;
      case CheckKind::Flatness:
        break;
    }
    report.add(p, worst.relative(), worst.max_abs);
  }
  return report.finish();
}

nlohmann::json to_json(const ResidualReport& r) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["check"] = r.check_name;
  doc["metrics"] = r.metric_names;
  doc["mode"] = std::string(to_string(r.mode));
  doc["samples"] = r.samples;
  doc["seed"] = r.seed;
  doc["max_residual"] = r.max_residual;
  doc["mean_residual"] = r.mean_residual;
  doc["max_abs_residual"] = r.max_abs_residual;
  doc["tolerance"] = r.tolerance;
  doc["passed"] = r.passed;
  nlohmann::json worst = nlohmann::json::array();
  for (Eigen::Index i = 0; i < r.worst_point.size(); ++i) worst.push_back(r.worst_point[i]);
  doc["worst_point"] = worst;
  return doc;
}

nlohmann::json run_suite(const SuiteOptions& options) {
  nlohmann::json entries = nlohmann::json::array();
  int failed = 0;
  std::uint64_t check_seed = options.seed;

  auto run = [&](CheckKind kind, const std::vector<MetricField>& metrics,
                 bool expect_pass = true) {
    CheckOptions co;
    co.samples = options.samples;
    co.seed = check_seed++;
    co.mode = options.mode;
    const ResidualReport r = run_check(kind, metrics, co);
    nlohmann::json entry = to_json(r);
    entry["expect"] = expect_pass ? "pass" : "fail";
    const bool ok = r.passed == expect_pass;
    entry["ok"] = ok;
    if (!ok) ++failed;
    entries.push_back(std::move(entry));
  };
  auto named = [](std::string_view name) { return build_metric(builtin(name)); };

  if (std::find(options.dims.begin(), options.dims.end(), 2) != options.dims.end()) {
    const MetricField euclid = named("euclidean2");
    const MetricField polar = named("polar_flat");
    const MetricField sphere = named("sphere_unit");
    const MetricField poincare = named("poincare_half");
    const MetricField conformal = named("conformal");
    for (const auto& m : {euclid, polar, sphere, poincare, conformal})
      run(CheckKind::Compatibility, {m});
    run(CheckKind::Theorem1, {polar, sphere});
    run(CheckKind::Theorem2, {polar, sphere});
    run(CheckKind::Theorem2, {conformal, poincare});
    run(CheckKind::CocycleGamma, {euclid, polar, sphere});
    run(CheckKind::CocycleRiemann, {euclid, polar, sphere});
    run(CheckKind::RicciIdentity, {sphere});
    run(CheckKind::RicciIdentity, {poincare});
    run(CheckKind::RicciIdentity, {conformal});
    run(CheckKind::Flatness, {sphere, polar});
    run(CheckKind::Flatness, {polar, sphere}, false);  // sphere is curved
  }
  if (std::find(options.dims.begin(), options.dims.end(), 3) != options.dims.end())
    run(CheckKind::Compatibility, {named("euclidean3")});

  for (int dim : options.dims) {
    if (dim != 2 && dim != 3) throw ConfigError("suite dimensions must be 2 or 3");
    const MetricField euclid =
        MetricField::euclidean(ChartSpec(random_metric(dim, 0, 0).coordinates));
    for (int k = 0; k < options.pairs; ++k) {
      const int roughness = 1 + k % kMaxRoughness;
      const std::uint64_t base = options.seed * 1000 + static_cast<std::uint64_t>(3 * k);
      const MetricField g = build_metric(random_metric(dim, base + 1, roughness));
      const MetricField m = build_metric(random_metric(dim, base + 2, roughness));
      const MetricField h = build_metric(random_metric(dim, base + 3, roughness));
      run(CheckKind::Compatibility, {m});
      run(CheckKind::Theorem1, {g, m});
      run(CheckKind::Theorem2, {g, m});
      run(CheckKind::CocycleGamma, {m, g, h});
      run(CheckKind::CocycleRiemann, {m, g, h});
      run(CheckKind::RicciIdentity, {m});
      run(CheckKind::Flatness, {g, euclid});
    }
  }

  nlohmann::json doc;
  doc["schema"] = 1;
  doc["suite"] = {{"seed", options.seed},
                  {"mode", std::string(to_string(options.mode))},
                  {"dims", options.dims},
                  {"samples", options.samples},
                  {"pairs", options.pairs}};
  doc["checks"] = entries;
  doc["total"] = entries.size();
  doc["failed"] = failed;
  doc["passed"] = failed == 0;
  return doc;
}

}  // namespace bimetric
