// bimetric: evaluate connection/curvature tensors and run residual checks.
//
// Exit codes: 0 pass, 1 residual failure, 2 parse error, 3 domain or
// singular-point error, 4 configuration error.

#include <charconv>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bimetric/catalog.hpp"
#include "bimetric/checks.hpp"
#include "bimetric/connection.hpp"
#include "bimetric/curvature.hpp"
#include "bimetric/error.hpp"

namespace {

using namespace bimetric;

enum ExitCode { kPass = 0, kFail = 1, kParse = 2, kDomain = 3, kConfig = 4 };

// A manifest path, a builtin name, or random:DIM:SEED:ROUGHNESS.
MetricManifest resolve_manifest(const std::string& arg) {
  if (std::filesystem::exists(arg)) return load_manifest(arg);
  if (arg.rfind("random:", 0) == 0) {
    std::istringstream in(arg.substr(7));
    int dim = 0, roughness = 0;
    std::uint64_t seed = 0;
    char c1 = 0, c2 = 0;
    if (!(in >> dim >> c1 >> seed >> c2 >> roughness) || c1 != ':' || c2 != ':' ||
        !in.eof())
      throw ConfigError("expected random:DIM:SEED:ROUGHNESS, got '" + arg + "'");
    return random_metric(dim, seed, roughness);
  }
  return builtin(arg);
}

MetricField resolve_metric(const std::string& arg) {
  return build_metric(resolve_manifest(arg));
}

std::string number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void print_components(const std::string& label, const Tensor<double>& t,
                      const ChartSpec& chart) {
  const TensorShape& s = t.shape();
  if (s.rank() == 0) {
    std::cout << label << " = " << number(t[0]) << '\n';
    return;
  }
  for_each_index(t, [&](std::size_t flat, const MultiIndex& idx) {
    std::string line = label + "(";
    for (int slot = 0; slot < s.rank(); ++slot) {
      if (slot == s.upper && s.upper > 0) line += "; ";
      else if (slot > 0) line += ", ";
      line += chart.coordinates()[static_cast<std::size_t>(idx[slot])];
    }
    std::cout << line << ") = " << number(t[flat]) << '\n';
  });
}

struct EvalArgs {
  std::string kind;
  std::string metric;
  std::string background;
  std::string at;
  std::string mode = "dual";
  bool json = false;
};

int cmd_eval(const EvalArgs& args) {
  const MetricField m = resolve_metric(args.metric);
  const MetricField g = args.background.empty() ? MetricField::euclidean(m.chart())
                                                : resolve_metric(args.background);
  require_compatible(g.chart(), m.chart());
  const Point point = parse_point(args.at);
  require_point(m.chart(), point);
  const DiffMode mode = parse_diff_mode(args.mode);

  const InverseMetric inv = inverse_metric(m, point);
  if (inv.condition_number > kConditionWarning)
    std::cerr << "warning: metric condition number " << inv.condition_number << " at ("
              << format_point(point) << ")\n";

  Tensor<double> result;
  if (args.kind == "christoffel") {
    result = christoffel_relative(g, m, point, mode).values;
  } else if (args.kind == "riemann") {
    result = riemann_relative(g, m, point, mode).values;
  } else if (args.kind == "ricci") {
    result = ricci(g, m, point, mode);
  } else if (args.kind == "scalar") {
    if (!args.background.empty())
      throw ConfigError("scalar curvature takes no background metric");
    result = Tensor<double>::scalar(scalar_curvature(m, point, mode));
  } else {
    throw ConfigError("unknown tensor kind '" + args.kind +
                      "' (expected christoffel, riemann, ricci or scalar)");
  }

  if (args.json) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["kind"] = args.kind;
    doc["metric"] = m.name();
    doc["background"] = g.name();
    doc["mode"] = std::string(to_string(mode));
    doc["point"] = std::vector<double>(point.data(), point.data() + point.size());
    doc["shape"] = {{"upper", result.shape().upper},
                    {"lower", result.shape().lower},
                    {"dimension", m.dimension()}};
    doc["index_order"] = "row-major, contravariant slots first";
    doc["components"] = std::vector<double>(result.data().begin(), result.data().end());
    std::cout << doc.dump(2) << '\n';
  } else {
    print_components(args.kind, result, m.chart());
  }
  return kPass;
}

struct CheckArgs {
  std::string name;
  std::vector<std::string> metrics;
  int samples = 50;
  std::uint64_t seed = 1;
  double tol = -1.0;
  std::string mode = "dual";
};

int cmd_check(const CheckArgs& args) {
  const CheckKind kind = parse_check_name(args.name);
  std::vector<MetricField> metrics;
  for (const auto& arg : args.metrics) metrics.push_back(resolve_metric(arg));
  CheckOptions options;
  options.samples = args.samples;
  options.seed = args.seed;
  options.mode = parse_diff_mode(args.mode);
  if (args.tol >= 0.0) options.tolerance = args.tol;
  const ResidualReport report = run_check(kind, metrics, options);
  std::cout << to_json(report).dump(2) << '\n';
  return report.passed ? kPass : kFail;
}

struct SuiteArgs {
  std::vector<int> dims{2, 3};
  std::uint64_t seed = 1;
  std::string mode = "dual";
  int samples = 20;
  int pairs = 5;
};

int cmd_suite(const SuiteArgs& args) {
  SuiteOptions options;
  options.dims = args.dims;
  options.seed = args.seed;
  options.mode = parse_diff_mode(args.mode);
  options.samples = args.samples;
  options.pairs = args.pairs;
  const nlohmann::json doc = run_suite(options);
  std::cout << doc.dump(2) << '\n';
  return doc.at("passed").get<bool>() ? kPass : kFail;
}

int cmd_manifest(const std::string& arg) {
  const MetricManifest manifest = resolve_manifest(arg);
  build_metric(manifest);
  std::cout << to_json(manifest).dump(2) << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bimetric connection and curvature calculator"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a tensor at a point");
  eval_cmd->add_option("kind", eval_args.kind, "christoffel | riemann | ricci | scalar")
      ->required();
  eval_cmd->add_option("metric", eval_args.metric,
                       "Manifest file, builtin name, or random:DIM:SEED:ROUGHNESS")
      ->required();
  eval_cmd->add_option("--at", eval_args.at, "Point, comma-separated coordinates")
      ->required();
  eval_cmd->add_option("--background", eval_args.background,
                       "Background metric (default: identity metric of the chart)");
  eval_cmd->add_option("--mode", eval_args.mode, "dual | fd");
  eval_cmd->add_flag("--json", eval_args.json, "Print JSON instead of text");

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Run one residual check");
  check_cmd->add_option("name", check_args.name,
                        "theorem1 | theorem2 | cocycle-gamma | cocycle-riemann | "
                        "flatness | ricci-identity | compatibility")
      ->required();
  check_cmd->add_option("metrics", check_args.metrics, "Metrics, in check order")
      ->required();
  check_cmd->add_option("--samples", check_args.samples, "Sample points");
  check_cmd->add_option("--seed", check_args.seed, "Random seed");
  check_cmd->add_option("--tol", check_args.tol, "Tolerance (default per check)");
  check_cmd->add_option("--mode", check_args.mode, "dual | fd");

  SuiteArgs suite_args;
  auto* suite_cmd = app.add_subcommand("suite", "Run every check over builtin and random metrics");
  suite_cmd->add_option("--dims", suite_args.dims, "Dimensions (2 and/or 3)")->delimiter(',');
  suite_cmd->add_option("--seed", suite_args.seed, "Random seed");
  suite_cmd->add_option("--mode", suite_args.mode, "dual | fd");
  suite_cmd->add_option("--samples", suite_args.samples, "Sample points per check");
  suite_cmd->add_option("--pairs", suite_args.pairs, "Random metric pairs per dimension");

  std::string manifest_arg;
  auto* manifest_cmd = app.add_subcommand("manifest", "Print a metric manifest as JSON");
  manifest_cmd->add_option("metric", manifest_arg,
                           "Builtin name, manifest file, or random:DIM:SEED:ROUGHNESS")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*eval_cmd) return cmd_eval(eval_args);
    if (*check_cmd) return cmd_check(check_args);
    if (*suite_cmd) return cmd_suite(suite_args);
    if (*manifest_cmd) return cmd_manifest(manifest_arg);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const SingularPointError& e) {
    std::cerr << "singular point: " << e.what() << '\n';
    return kDomain;
  } catch (const NotPositiveDefiniteError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
  return kConfig;
}
