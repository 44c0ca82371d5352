#include "bimetric/connection.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace bimetric {

InverseMetric inverse_metric(const MetricField& m, const Point& point) {
  const Tensor<double> values = m.field().evaluate(point);
  InverseMetric out{inverse(values), 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(detail::to_matrix(values),
                                                     Eigen::EigenvaluesOnly);
  const auto& ev = eig.eigenvalues();
  out.condition_number = ev.maxCoeff() / ev.minCoeff();
  return out;
}

MetricJet<double> metric_jet(const MetricField& m, const Point& point, DiffMode mode) {
  FieldJet j = jet(m.field(), point, 1, mode);
  return {std::move(j.components), std::move(j.partials)};
}

MetricJet<Dual1> metric_jet_lifted(const MetricField& m, const Point& point,
                                   DiffMode mode) {
  const FieldJet j = jet(m.field(), point, 2, mode);
  return {lift_components(j), lift_partials(j)};
}

ChristoffelComponents christoffel_relative(const MetricField& g, const MetricField& m,
                                           const Point& point, DiffMode mode) {
  require_compatible(g.chart(), m.chart());
  return {christoffel_relative(metric_jet(g, point, mode), metric_jet(m, point, mode)),
          point};
}

ChristoffelComponents christoffel_classic(const MetricField& g, const Point& point,
                                          DiffMode mode) {
  return christoffel_relative(MetricField::euclidean(g.chart()), g, point, mode);
}

ChristoffelComponents christoffel_from_partials(const MetricField& g, const Point& point,
                                                DiffMode mode) {
  return {christoffel_from_partials(metric_jet(g, point, mode)), point};
}

Tensor<double> covariant_derivative(const MetricField& g, const TensorField& field,
                                    const Point& point, DiffMode mode) {
  require_compatible(g.chart(), field.chart());
  const FieldJet t = jet(field, point, 1, mode);
  return covariant_derivative(t.components, t.partials,
                              christoffel_from_partials(metric_jet(g, point, mode)));
}

Residual theorem1_residual(const MetricField& g, const MetricField& m,
                           const TensorField& v, const Point& point, DiffMode mode) {
  require_compatible(g.chart(), m.chart());
  require_compatible(g.chart(), v.chart());
  if (!(v.shape() == TensorShape{1, 0, v.chart().dimension()}))
    throw ShapeError("theorem1_residual: probe field must be a vector field");
  const int n = g.dimension();
  const FieldJet vj = jet(v, point, 1, mode);
  const MetricJet<double> gj = metric_jet(g, point, mode);
  const MetricJet<double> mj = metric_jet(m, point, mode);

  const Tensor<double> lhs =
      covariant_derivative(vj.components, vj.partials, christoffel_from_partials(mj));
  const Tensor<double> dv_g =
      covariant_derivative(vj.components, vj.partials, christoffel_from_partials(gj));
  const Tensor<double> gamma = christoffel_relative(gj, mj);
  Tensor<double> correction({1, 1, n});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double sum = 0.0;
      for (int c = 0; c < n; ++c) sum += gamma(a, c, b) * vj.components(c);
      correction(a, b) = sum;
    }
  const Tensor<double> diff = lhs - dv_g - correction;
  return {max_abs(diff), std::max({max_abs(lhs), max_abs(dv_g), max_abs(correction)})};
}

Residual cocycle_gamma(const MetricField& m, const MetricField& g, const MetricField& h,
                       const Point& point, DiffMode mode) {
  require_compatible(m.chart(), g.chart());
  require_compatible(m.chart(), h.chart());
  const MetricJet<double> mj = metric_jet(m, point, mode);
  const MetricJet<double> gj = metric_jet(g, point, mode);
  const MetricJet<double> hj = metric_jet(h, point, mode);
  const Tensor<double> mg = christoffel_relative(mj, gj);
  const Tensor<double> gh = christoffel_relative(gj, hj);
  const Tensor<double> hm = christoffel_relative(hj, mj);
  return {max_abs(mg + gh + hm), std::max({max_abs(mg), max_abs(gh), max_abs(hm)})};
}

Residual compatibility_residual(const MetricField& m, const Point& point, DiffMode mode) {
  const MetricJet<double> mj = metric_jet(m, point, mode);
  const Tensor<double> dm =
      covariant_derivative(mj.metric, mj.partials, christoffel_from_partials(mj));
  return {max_abs(dm), max_abs(mj.partials)};
}

}  // namespace bimetric
