// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
//
// Random family used by criteria 1, 2, 6 and 9: for each seed s in 1..20 and
// each dimension d in {2, 3}, g = random_metric(d, s, r) and
// m = random_metric(d, 1000 + s, r) with roughness r = 1 + s % 3.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bimetric/catalog.hpp"
#include "bimetric/checks.hpp"
#include "bimetric/connection.hpp"
#include "bimetric/curvature.hpp"
#include "bimetric/error.hpp"
#include "random_expr.hpp"

using namespace bimetric;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "first failure: " << what << "; ";
      passed = false;
    }
  }
};

struct Pair {
  MetricField g, m;
  std::uint64_t seed;
};

int roughness_for(std::uint64_t seed) { return 1 + static_cast<int>(seed % 3); }

std::vector<Pair> random_family() {
  std::vector<Pair> out;
  for (int dim : {2, 3})
    for (std::uint64_t s = 1; s <= 20; ++s)
      out.push_back({build_metric(random_metric(dim, s, roughness_for(s))),
                     build_metric(random_metric(dim, 1000 + s, roughness_for(s))), s});
  return out;
}

MetricField named(const char* name) { return build_metric(builtin(name)); }

CheckOptions options(int samples, std::uint64_t seed, DiffMode mode = DiffMode::Dual) {
  CheckOptions o;
  o.samples = samples;
  o.seed = seed;
  o.mode = mode;
  return o;
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

std::vector<Point> interior_points(const MetricField& m, int count, std::uint64_t seed) {
  Xorshift64 rng(seed);
  return sample_points(m.sample_region(), count, rng);
}

struct Run {
  int code = -1;
  std::string out;
};

Run shell(const std::string& cmd) {
  Run r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// ---------------------------------------------------------------------------

void theorem1_suite(Outcome& o, const std::vector<Pair>& family) {
  double dual = 0, fd = 0;
  for (const Pair& p : family) {
    const auto rd = run_check(CheckKind::Theorem1, {p.g, p.m}, options(50, p.seed));
    const auto rf =
        run_check(CheckKind::Theorem1, {p.g, p.m}, options(50, p.seed, DiffMode::CentralFD));
    dual = std::max(dual, rd.max_residual);
    fd = std::max(fd, rf.max_residual);
    o.require(rd.max_residual <= 1e-8, p.m.name() + " dual");
    o.require(rf.max_residual <= 1e-4, p.m.name() + " fd");
  }
  o.detail << family.size() << " pairs x 50 points x 5 fields; max dual " << sci(dual)
           << ", max fd " << sci(fd);
}

void theorem2_suite(Outcome& o, const std::vector<Pair>& family) {
  double worst = 0;
  for (const Pair& p : family) {
    const auto r = run_check(CheckKind::Theorem2, {p.g, p.m}, options(50, p.seed));
    worst = std::max(worst, r.max_residual);
    o.require(r.max_residual <= 1e-7, p.m.name());
  }
  const auto b =
      run_check(CheckKind::Theorem2, {named("polar_flat"), named("sphere_unit")}, options(50, 1));
  o.require(b.max_residual <= 1e-7, "polar_flat/sphere_unit");
  o.detail << family.size() << " random pairs + (polar_flat, sphere_unit); max "
           << sci(std::max(worst, b.max_residual));
}

void cocycle_suites(Outcome& o) {
  double gamma = 0, riemann = 0;
  for (std::uint64_t t = 1; t <= 10; ++t) {
    const int dim = t % 2 ? 2 : 3;
    const int r = 1 + static_cast<int>(t % 3);
    const MetricField m = build_metric(random_metric(dim, 2000 + t, r));
    const MetricField g = build_metric(random_metric(dim, 3000 + t, r));
    const MetricField h = build_metric(random_metric(dim, 4000 + t, r));
    const auto rg = run_check(CheckKind::CocycleGamma, {m, g, h}, options(20, t));
    const auto rr = run_check(CheckKind::CocycleRiemann, {m, g, h}, options(20, t));
    gamma = std::max(gamma, rg.max_residual);
    riemann = std::max(riemann, rr.max_residual);
    o.require(rg.max_residual <= 1e-9, "gamma triple " + std::to_string(t));
    o.require(rr.max_residual <= 1e-7, "riemann triple " + std::to_string(t));
    for (const Point& p : interior_points(m, 20, t)) {
      o.require(cocycle_gamma(m, m, m, p).max_abs == 0.0, "coincident gamma not exactly 0");
      o.require(cocycle_riemann(m, m, m, p).max_abs == 0.0, "coincident riemann not exactly 0");
    }
  }
  o.detail << "10 triples x 20 points; max gamma " << sci(gamma) << ", max riemann "
           << sci(riemann) << "; coincident metrics give exact 0";
}

void closed_forms(Outcome& o) {
  double sphere = 0, hyper = 0, polar = 0;
  const MetricField s = named("sphere_unit");
  for (const Point& p : interior_points(s, 20, 41))
    sphere = std::max(sphere, std::abs(scalar_curvature(s, p) - 2.0));
  const MetricField h = named("poincare_half");
  for (const Point& p : interior_points(h, 20, 42))
    hyper = std::max(hyper, std::abs(scalar_curvature(h, p) + 2.0));
  const MetricField f = named("polar_flat");
  for (const Point& p : interior_points(f, 20, 43))
    polar = std::max(polar, max_abs(riemann_classic(f, p).values));
  o.require(sphere <= 1e-6, "sphere scalar curvature");
  o.require(hyper <= 1e-6, "half-plane scalar curvature");
  o.require(polar <= 1e-9, "polar curvature");
  o.detail << "|S - 2| " << sci(sphere) << ", |S + 2| " << sci(hyper) << ", polar |R| "
           << sci(polar);
}

void flatness(Outcome& o) {
  const MetricField s = named("sphere_unit");
  const MetricField p = named("polar_flat");
  CheckOptions opt = options(50, 5);
  opt.tolerance = 1e-7;
  const auto flat = run_check(CheckKind::Flatness, {s, p}, opt);
  const auto curved = run_check(CheckKind::Flatness, {p, s}, opt);
  o.require(flat.passed, "(sphere_unit, polar_flat) should pass");
  o.require(!curved.passed && curved.max_residual >= 0.1, "(polar_flat, sphere_unit) should fail");
  o.detail << "flat target " << sci(flat.max_residual) << ", curved target "
           << sci(curved.max_residual);
}

void ricci_identity(Outcome& o, const std::vector<Pair>& family) {
  double worst = 0;
  for (const Pair& p : family) {
    const auto r = run_check(CheckKind::RicciIdentity, {p.m}, options(50, p.seed));
    worst = std::max(worst, r.max_residual);
    o.require(r.max_residual <= 1e-7, p.m.name());
  }
  o.detail << family.size() << " metrics x 50 points x 5 covectors; max " << sci(worst);
}

void compatibility(Outcome& o) {
  std::vector<MetricField> metrics;
  for (const auto& name : builtin_names()) metrics.push_back(build_metric(builtin(name)));
  for (std::uint64_t s = 1; s <= 10; ++s)
    metrics.push_back(build_metric(random_metric(s % 2 ? 2 : 3, 5000 + s, 1 + static_cast<int>(s % 3))));
  double rel = 0, abs = 0;
  for (const auto& m : metrics) {
    const auto r = run_check(CheckKind::Compatibility, {m}, options(20, 7));
    rel = std::max(rel, r.max_residual);
    abs = std::max(abs, r.max_abs_residual);
    o.require(r.max_residual <= 1e-10 && r.max_abs_residual <= 1e-10, m.name());
  }
  o.detail << metrics.size() << " metrics x 20 points; max " << sci(rel) << " (absolute "
           << sci(abs) << ")";
}

void cross_oracle(Outcome& o) {
  Xorshift64 rng(8);
  double worst = 0;
  int fields = 0;
  for (; fields < 200; ++fields) {
    const int dim = fields % 2 ? 3 : 2;
    const ChartSpec chart(dim == 2 ? std::vector<std::string>{"x", "y"}
                                   : std::vector<std::string>{"x", "y", "z"});
    std::vector<Expr> comps;
    for (int i = 0; i < dim; ++i) comps.push_back(testing_support::random_expr(rng, 5, dim));
    const TensorField f(chart, {1, 0, dim}, comps);
    Point p(dim);
    for (int i = 0; i < dim; ++i) p[i] = rng.uniform(-1, 1);
    const FieldJet d = jet(f, p, 2, DiffMode::Dual);
    const FieldJet h = jet(f, p, 2, DiffMode::CentralFD);
    auto compare = [&](const Tensor<double>& exact, const Tensor<double>& approx) {
      for (std::size_t i = 0; i < exact.size(); ++i) {
        const double err = std::abs(exact[i] - approx[i]) / (1 + std::abs(exact[i]));
        worst = std::max(worst, err);
      }
    };
    compare(d.partials, h.partials);
    compare(d.second_partials, h.second_partials);
  }
  o.require(worst <= 1e-4, "dual/fd disagreement " + sci(worst));
  o.detail << fields << " fields, first and second partials; max scaled gap " << sci(worst);
}

void rescaling(Outcome& o, const std::vector<Pair>& family) {
  double worst = 0;
  for (const Pair& pr : family) {
    if (pr.seed > 10) continue;
    for (const Point& p : interior_points(pr.g, 5, pr.seed)) {
      const auto gamma = christoffel_relative(pr.g, pr.m, p).values;
      const auto riemann = riemann_relative(pr.g, pr.m, p).values;
      for (double c : {0.5, 2.0}) {
        for (const auto& [g, m] : {std::pair{pr.g.scaled(c), pr.m}, std::pair{pr.g, pr.m.scaled(c)}}) {
          worst = std::max(worst, max_abs(christoffel_relative(g, m, p).values - gamma));
          worst = std::max(worst, max_abs(riemann_relative(g, m, p).values - riemann));
        }
      }
    }
  }
  o.require(worst <= 1e-10, "rescaled tensors moved by " + sci(worst));
  o.detail << "20 pairs x 5 points, factors 0.5 and 2 on either metric; max change "
           << sci(worst);
}

void determinism(Outcome& o) {
  const std::string cmd = std::string(BIMETRIC_CLI) + " suite --seed 11";
  const Run a = shell(cmd), b = shell(cmd);
  o.require(a.code == 0 && b.code == 0, "suite did not pass");
  o.require(!a.out.empty() && a.out == b.out, "suite output differs between runs");
  SuiteOptions opt;
  opt.mode = DiffMode::CentralFD;
  opt.samples = 5;
  o.require(run_suite(opt).dump() == run_suite(opt).dump(), "in-process fd suite differs");
  o.detail << "two CLI suite runs, " << a.out.size() << " bytes each, identical";
}

void mutation(Outcome& o) {
  const std::vector<std::string> probes{
      "check theorem2 polar_flat sphere_unit",
      "check theorem2 random:2:1:2 random:2:2:2",
      "check theorem2 random:3:1:1 random:3:2:1",
      "check cocycle-riemann euclidean2 polar_flat sphere_unit",
      "check cocycle-riemann random:2:3:1 random:2:4:2 random:2:5:3",
      "check cocycle-riemann random:3:3:1 random:3:4:2 random:3:5:3",
  };
  int caught = 0;
  for (const auto& args : probes) {
    const Run normal = shell(std::string(BIMETRIC_CLI) + " " + args);
    const Run mutant = shell(std::string(BIMETRIC_MUTANT_CLI) + " " + args);
    o.require(normal.code == 0, "unmodified build fails: " + args);
    o.require(mutant.code == 1, "sign flip not detected: " + args);
    if (mutant.code == 1) ++caught;
  }
  const Run suite = shell(std::string(BIMETRIC_MUTANT_CLI) + " suite");
  o.require(suite.code == 1, "mutant suite passed");
  o.detail << caught << "/" << probes.size()
           << " theorem2 and cocycle-riemann checks fail under the sign flip; mutant suite exit "
           << suite.code;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Pair> family = random_family();

  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"theorem1 suite", [&](Outcome& o) { theorem1_suite(o, family); }},
      {"theorem2 suite", [&](Outcome& o) { theorem2_suite(o, family); }},
      {"cocycle suites", cocycle_suites},
      {"closed-form geometry", closed_forms},
      {"flatness criterion", flatness},
      {"ricci identity", [&](Outcome& o) { ricci_identity(o, family); }},
      {"metric compatibility", compatibility},
      {"differentiation cross-oracle", cross_oracle},
      {"rescaling invariance", [&](Outcome& o) { rescaling(o, family); }},
      {"determinism", determinism},
      {"mutation sanity", mutation},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.passed) ++failed;
    std::cout << (o.passed ? "PASS" : "FAIL") << "  " << (i + 1 < 10 ? " " : "") << i + 1
              << "  " << criteria[i].first << ": " << o.detail.str() << std::endl;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size()
            << " criteria passed in " << sci(seconds) << " s" << std::endl;
  return failed == 0 ? 0 : 1;
}
