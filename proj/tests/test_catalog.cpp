#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <Eigen/Eigenvalues>

#include "bimetric/catalog.hpp"
#include "bimetric/connection.hpp"
#include "bimetric/curvature.hpp"
#include "bimetric/error.hpp"

using namespace bimetric;

namespace {

Eigen::MatrixXd matrix(const Tensor<double>& t) {
  const int n = t.dimension();
  Eigen::MatrixXd m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = t(a, b);
  return m;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("builtins") {
  const auto names = builtin_names();
  CHECK(names.size() == 6);
  for (const auto& name : names) {
    const MetricManifest man = builtin(name);
    CHECK(man.name == name);
    const MetricField m = build_metric(man);
    CHECK(m.name() == name);
    CHECK(m.sample_region().size() == static_cast<std::size_t>(m.dimension()));
  }
  CHECK_THROWS_AS(builtin("torus"), NotFoundError);
  CHECK(build_metric(builtin("euclidean3")).is_constant());
  CHECK_FALSE(build_metric(builtin("polar_flat")).is_constant());
}

TEST_CASE("random metrics are deterministic") {
  const MetricManifest a = random_metric(3, 17, 2);
  const MetricManifest b = random_metric(3, 17, 2);
  CHECK(to_json(a) == to_json(b));
  CHECK(a.name == "random3d_s17_r2");
  CHECK_FALSE(to_json(a) == to_json(random_metric(3, 18, 2)));
  CHECK(a.sample_region == SampleRegion{{-1, 1}, {-1, 1}, {-1, 1}});
  CHECK_THROWS_AS(random_metric(4, 1, 1), ConfigError);
  CHECK_THROWS_AS(random_metric(2, 1, 4), ConfigError);
  CHECK_THROWS_AS(random_metric(2, 1, -1), ConfigError);
}

TEST_CASE("random metrics are uniformly positive definite") {
  Xorshift64 rng(99);
  for (int dim : {2, 3})
    for (int roughness = 0; roughness <= kMaxRoughness; ++roughness)
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const MetricField m = build_metric(random_metric(dim, seed, roughness));
        for (int s = 0; s < 10; ++s) {
          Point p(dim);
          for (int i = 0; i < dim; ++i) p[i] = rng.uniform(-1, 1);
          const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
              matrix(m.field().evaluate(p)));
          CHECK(eig.eigenvalues().minCoeff() >= kRandomMetricFloor - 1e-12);
        }
      }
}

TEST_CASE("roughness zero gives a constant, flat metric") {
  const MetricField m = build_metric(random_metric(3, 5, 0));
  CHECK(m.is_constant());
  Point p(3);
  p << 0.2, 0.4, -0.9;
  CHECK(max_abs(riemann_classic(m, p).values) == 0.0);
  CHECK(max_abs(christoffel_classic(m, p).values) == 0.0);
}

TEST_CASE("manifest JSON round trip") {
  for (const auto& man : {builtin("sphere_unit"), random_metric(2, 3, 3)}) {
    const nlohmann::json doc = to_json(man);
    const MetricManifest back = manifest_from_json(doc);
    CHECK(to_json(back) == doc);

    const std::string path = temp_path("bimetric_manifest_test.json");
    std::ofstream(path) << doc.dump(2);
    CHECK(to_json(load_manifest(path)) == doc);
    std::remove(path.c_str());
  }
  CHECK_THROWS_AS(load_manifest(temp_path("does_not_exist_bimetric.json")), NotFoundError);
}

TEST_CASE("manifest validation") {
  nlohmann::json doc = to_json(builtin("polar_flat"));

  auto rejects = [](nlohmann::json d) {
    CHECK_THROWS_AS(build_metric(manifest_from_json(d)), ParseError);
  };
  {
    auto d = doc;
    d["components"][0][1] = "r";  // asymmetric
    rejects(d);
  }
  {
    auto d = doc;
    d["components"][1][1] = "r^^2";
    rejects(d);
  }
  {
    auto d = doc;
    d["dimension"] = 3;
    rejects(d);
  }
  {
    auto d = doc;
    d["schema"] = 2;
    rejects(d);
  }
  {
    auto d = doc;
    d.erase("components");
    rejects(d);
  }
  {
    auto d = doc;
    d["coordinates"] = {"r", "r"};
    rejects(d);
  }
  {
    auto d = doc;
    d["coordinates"] = {"r", "sin"};
    rejects(d);
  }
  {
    auto d = doc;
    d["sample_region"] = {{0.5, 2.0}};
    rejects(d);
  }
  rejects(nlohmann::json::array());

  const std::string path = temp_path("bimetric_bad_manifest.json");
  std::ofstream(path) << "{ \"schema\": 1, ";
  CHECK_THROWS_AS(load_manifest(path), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("polynomial helpers") {
  CHECK(monomial_exponents(2, 2).size() == 6);
  CHECK(monomial_exponents(3, 3).size() == 20);
  CHECK(monomial_exponents(3, 0) == std::vector<std::vector<int>>{{0, 0, 0}});

  const ChartSpec xy({"x", "y"});
  const auto exps = monomial_exponents(2, 2);
  std::vector<double> coeffs(exps.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = 0.5 * static_cast<double>(i) - 1;
  const std::string src = polynomial_source({"x", "y"}, exps, coeffs);
  const Expr e = parse(src, xy);
  Point p(2);
  p << 0.3, -0.7;
  double expected = 0;
  for (std::size_t i = 0; i < exps.size(); ++i)
    expected += coeffs[i] * std::pow(0.3, exps[i][0]) * std::pow(-0.7, exps[i][1]);
  CHECK(eval(e, p) == doctest::Approx(expected));
}

TEST_CASE("probe fields") {
  const ChartSpec chart({"a", "b", "c"});
  const TensorField v = random_probe_field(chart, 4, false);
  const TensorField w = random_probe_field(chart, 4, true);
  CHECK(v.shape() == TensorShape{1, 0, 3});
  CHECK(w.shape() == TensorShape{0, 1, 3});
  CHECK(random_probe_field(chart, 4, false).components() == v.components());
  CHECK_FALSE(random_probe_field(chart, 5, false).components() == v.components());
}
