#include "bimetric/curvature.hpp"

#include <algorithm>

namespace bimetric {

namespace {

MetricJet<double> values_of(const MetricJet<Dual1>& j) {
  return {value_part(j.metric), value_part(j.partials)};
}

MetricJet<Dual1> euclidean_jet(int n) {
  MetricJet<Dual1> j{Tensor<Dual1>({0, 2, n}), Tensor<Dual1>({0, 3, n})};
  for (int a = 0; a < n; ++a) j.metric(a, a) = Dual1(1.0);
  return j;
}

}  // namespace

Tensor<double> riemann_relative(const MetricJet<Dual1>& g, const MetricJet<Dual1>& m) {
  const int n = m.metric.dimension();
  const Tensor<Dual1> gamma_jet = christoffel_relative(g, m);
  const Tensor<double> gamma = value_part(gamma_jet);
  // G^l_ik;j stored at (l, i, k, j)
  const Tensor<double> dgamma = covariant_derivative(
      gamma, gradient_part(gamma_jet), christoffel_from_partials(values_of(g)));
  Tensor<double> out({1, 3, n});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double quad_j = 0.0, quad_k = 0.0;
          for (int s = 0; s < n; ++s) {
            quad_j += gamma(l, j, s) * gamma(s, i, k);
            quad_k += gamma(l, k, s) * gamma(s, i, j);
          }
#ifdef BIMETRIC_INJECT_SIGN_FLIP
          quad_j = -quad_j;
#endif
          out(l, i, j, k) = (dgamma(l, i, k, j) - dgamma(l, i, j, k)) + (quad_j - quad_k);
        }
  return out;
}

RiemannComponents riemann_relative(const MetricField& g, const MetricField& m,
                                   const Point& point, DiffMode mode) {
  require_compatible(g.chart(), m.chart());
  return {riemann_relative(metric_jet_lifted(g, point, mode),
                           metric_jet_lifted(m, point, mode)),
          point};
}

RiemannComponents riemann_classic(const MetricField& g, const Point& point,
                                  DiffMode mode) {
  return {riemann_relative(euclidean_jet(g.dimension()), metric_jet_lifted(g, point, mode)),
          point};
}

Tensor<double> ricci(const MetricField& g, const MetricField& m, const Point& point,
                     DiffMode mode) {
  return contract(riemann_relative(g, m, point, mode).values, 0, 1);
}

double scalar_curvature(const MetricField& m, const Point& point, DiffMode mode) {
  const MetricJet<Dual1> mj = metric_jet_lifted(m, point, mode);
  const Tensor<double> ric =
      contract(riemann_relative(euclidean_jet(m.dimension()), mj), 0, 1);
  const Tensor<double> minv = inverse(value_part(mj.metric));
  return contract(contract(tensor_product(minv, ric), 0, 0), 0, 0)[0];
}

Residual theorem2_residual(const MetricField& g, const MetricField& m,
                           const Point& point, DiffMode mode) {
  require_compatible(g.chart(), m.chart());
  const MetricJet<Dual1> delta = euclidean_jet(g.dimension());
  const MetricJet<Dual1> gj = metric_jet_lifted(g, point, mode);
  const MetricJet<Dual1> mj = metric_jet_lifted(m, point, mode);
  const Tensor<double> r_dm = riemann_relative(delta, mj);
  const Tensor<double> r_dg = riemann_relative(delta, gj);
  const Tensor<double> r_gm = riemann_relative(gj, mj);
  return {max_abs(r_dm - r_dg - r_gm),
          std::max({max_abs(r_dm), max_abs(r_dg), max_abs(r_gm)})};
}

Residual ricci_identity_residual(const MetricField& m, const TensorField& covector,
                                 const Point& point, DiffMode mode) {
  require_compatible(m.chart(), covector.chart());
  const int n = m.dimension();
  if (!(covector.shape() == TensorShape{0, 1, n}))
    throw ShapeError("ricci_identity_residual: probe field must be a covector field");
  const FieldJet vj = jet(covector, point, 2, mode);
  const MetricJet<Dual1> mj = metric_jet_lifted(m, point, mode);

  // left side: two nested covariant derivatives
  const Tensor<Dual1> connection = christoffel_from_partials(mj);
  const Tensor<Dual1> dv =
      covariant_derivative(lift_components(vj), lift_partials(vj), connection);
  const Tensor<double> ddv =
      covariant_derivative(value_part(dv), gradient_part(dv), value_part(connection));
  const Tensor<double> lhs = antisymmetrize_pair(ddv, 1, 2);

  // right side: V_l R^l_ijk(delta, m)
  const Tensor<double> riemann = riemann_relative(euclidean_jet(n), mj);
  Tensor<double> rhs({0, 3, n});
  for_each_index(rhs, [&](std::size_t flat, const MultiIndex& idx) {
    double sum = 0.0;
    for (int l = 0; l < n; ++l) sum += vj.components(l) * riemann(l, idx[0], idx[1], idx[2]);
    rhs[flat] = sum;
  });
  return {max_abs(lhs - rhs), std::max(max_abs(ddv), max_abs(rhs))};
}

Residual cocycle_riemann(const MetricField& m, const MetricField& g,
                         const MetricField& h, const Point& point, DiffMode mode) {
  require_compatible(m.chart(), g.chart());
  require_compatible(m.chart(), h.chart());
  const MetricJet<Dual1> mj = metric_jet_lifted(m, point, mode);
  const MetricJet<Dual1> gj = metric_jet_lifted(g, point, mode);
  const MetricJet<Dual1> hj = metric_jet_lifted(h, point, mode);
  const Tensor<double> mg = riemann_relative(mj, gj);
  const Tensor<double> gh = riemann_relative(gj, hj);
  const Tensor<double> hm = riemann_relative(hj, mj);
  return {max_abs(mg + gh + hm), std::max({max_abs(mg), max_abs(gh), max_abs(hm)})};
}

ResidualReport flatness_check(const MetricField& g, const MetricField& m,
                              const std::vector<Point>& sample_points, double tolerance,
                              DiffMode mode) {
  require_compatible(g.chart(), m.chart());
  if (sample_points.empty()) throw ConfigError("flatness_check: no sample points");
  const MetricJet<Dual1> delta = euclidean_jet(g.dimension());
  ReportBuilder report("flatness", {g.name(), m.name()}, mode, tolerance);
  for (const Point& p : sample_points) {
    const MetricJet<Dual1> gj = metric_jet_lifted(g, p, mode);
    const MetricJet<Dual1> mj = metric_jet_lifted(m, p, mode);
    const Tensor<double> r_dg = riemann_relative(delta, gj);
    const Tensor<double> r_gm = riemann_relative(gj, mj);
    const Residual r{max_abs(r_dg + r_gm), std::max(max_abs(r_dg), max_abs(r_gm))};
    report.add(p, r.relative(), r.max_abs);
  }
  return report.finish();
}

}  // namespace bimetric
