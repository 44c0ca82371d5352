#include "bimetric/differentiation.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "bimetric/error.hpp"

namespace bimetric {

std::string_view to_string(DiffMode mode) {
  return mode == DiffMode::Dual ? "dual" : "fd";
}

DiffMode parse_diff_mode(std::string_view text) {
  if (text == "dual") return DiffMode::Dual;
  if (text == "fd") return DiffMode::CentralFD;
  throw ConfigError("unknown differentiation mode '" + std::string(text) +
                    "' (expected dual or fd)");
}

double fd_step(double x, int order) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double base = order == 1 ? std::cbrt(eps) : std::sqrt(std::sqrt(eps));
  const double h = base * std::max(1.0, std::abs(x));
  // make x + h exactly representable
  volatile double shifted = x + h;
  return shifted - x;
}

namespace {

TensorShape with_extra_lower(TensorShape s, int extra) {
  s.lower += extra;
  s.validate();
  return s;
}

FieldJet dual_jet(const TensorField& field, const Point& point, int order) {
  const TensorShape& s = field.shape();
  const int n = s.dimension;
  FieldJet out{order, Tensor<double>(s), Tensor<double>(with_extra_lower(s, 1)),
               order == 2 ? Tensor<double>(with_extra_lower(s, 2)) : Tensor<double>()};
  // symmetric metrics share expression storage between mirrored entries
  std::vector<std::pair<const Expr::Node*, Dual2>> cache;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Expr& e = field.components()[i];
    const Expr::Node* key = e.nodes().data();
    const Dual2* d = nullptr;
    for (const auto& [k, v] : cache)
      if (k == key) d = &v;
    if (!d) {
      cache.emplace_back(key, eval_dual2(e, point));
      d = &cache.back().second;
    }
    out.components[i] = d->value;
    for (int c = 0; c < n; ++c) {
      out.partials[i * n + c] = d->grad[c];
      if (order == 2)
        for (int k = 0; k < n; ++k)
          out.second_partials[(i * n + c) * n + k] = d->hess(c, k);
    }
  }
  return out;
}

FieldJet fd_jet(const TensorField& field, const Point& point, int order) {
  const TensorShape& s = field.shape();
  const int n = s.dimension;
  const std::size_t m = s.size();
  FieldJet out{order, field.evaluate(point), Tensor<double>(with_extra_lower(s, 1)),
               order == 2 ? Tensor<double>(with_extra_lower(s, 2)) : Tensor<double>()};
  auto at = [&](int i, double di, int j, double dj) {
    Point q = point;
    q[i] += di;
    if (j >= 0) q[j] += dj;
    try {
      return field.evaluate(q);
    } catch (const SingularPointError&) {
      throw SingularPointError("finite-difference stencil point (" + format_point(q) +
                               ") violates the domain guard");
    }
  };
  for (int c = 0; c < n; ++c) {
    const double h = fd_step(point[c], 1);
    const Tensor<double> plus = at(c, h, -1, 0.0);
    const Tensor<double> minus = at(c, -h, -1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      out.partials[i * n + c] = (plus[i] - minus[i]) / (2.0 * h);
  }
  if (order == 2) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) h[c] = fd_step(point[c], 2);
    for (int c = 0; c < n; ++c) {
      const Tensor<double> plus = at(c, h[c], -1, 0.0);
      const Tensor<double> minus = at(c, -h[c], -1, 0.0);
      for (std::size_t i = 0; i < m; ++i)
        out.second_partials[(i * n + c) * n + c] =
            (plus[i] - 2.0 * out.components[i] + minus[i]) / (h[c] * h[c]);
      for (int k = c + 1; k < n; ++k) {
        const Tensor<double> pp = at(c, h[c], k, h[k]);
        const Tensor<double> pm = at(c, h[c], k, -h[k]);
        const Tensor<double> mp = at(c, -h[c], k, h[k]);
        const Tensor<double> mm = at(c, -h[c], k, -h[k]);
        for (std::size_t i = 0; i < m; ++i) {
          const double v = (pp[i] - pm[i] - mp[i] + mm[i]) / (4.0 * h[c] * h[k]);
          out.second_partials[(i * n + c) * n + k] = v;
          out.second_partials[(i * n + k) * n + c] = v;
        }
      }
    }
  }
  return out;
}

}  // namespace

FieldJet jet(const TensorField& field, const Point& point, int order, DiffMode mode) {
  if (order != 1 && order != 2) throw ConfigError("jet order must be 1 or 2");
  require_point(field.chart(), point);
  field.require_admits(point);
  FieldJet out = mode == DiffMode::Dual ? dual_jet(field, point, order)
                                        : fd_jet(field, point, order);
  if (!all_finite(out.partials) || (order == 2 && !all_finite(out.second_partials)))
    throw DomainError("non-finite derivative at (" + format_point(point) + ")");
  return out;
}

Tensor<Dual1> lift_components(const FieldJet& jet) {
  const int n = jet.components.dimension();
  Tensor<Dual1> out(jet.components.shape());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Gradient g(n);
    for (int c = 0; c < n; ++c) g[c] = jet.partials[i * n + c];
    out[i] = Dual1(jet.components[i], g);
  }
  return out;
}

Tensor<Dual1> lift_partials(const FieldJet& jet) {
  if (jet.order < 2) throw ConfigError("lift_partials needs a second-order jet");
  const int n = jet.partials.dimension();
  Tensor<Dual1> out(jet.partials.shape());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Gradient g(n);
    for (int c = 0; c < n; ++c) g[c] = jet.second_partials[i * n + c];
    out[i] = Dual1(jet.partials[i], g);
  }
  return out;
}

Tensor<double> value_part(const Tensor<Dual1>& t) {
  Tensor<double> out(t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i].value;
  return out;
}

Tensor<double> gradient_part(const Tensor<Dual1>& t) {
  const int n = t.dimension();
  TensorShape s = t.shape();
  s.lower += 1;
  Tensor<double> out(s);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (int c = 0; c < n; ++c) out[i * n + c] = t[i].partial(c);
  return out;
}

}  // namespace bimetric
