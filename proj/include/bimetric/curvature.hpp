#pragma once

#include <vector>

#include "bimetric/connection.hpp"
#include "bimetric/report.hpp"

namespace bimetric {

/// R^l_ijk stored as a (1,3) tensor R(l, i, j, k).
struct RiemannComponents {
  Tensor<double> values;
  Point base_point;
};

/// R(g,m)^l_ijk = G^l_ik;j - G^l_ij;k + G^l_js G^s_ik - G^l_ks G^s_ij with
/// G = G(g,m) and ';' the covariant derivative of g. Needs second-order jets.
Tensor<double> riemann_relative(const MetricJet<Dual1>& g, const MetricJet<Dual1>& m);

RiemannComponents riemann_relative(const MetricField& g, const MetricField& m,
                                   const Point& point, DiffMode mode = DiffMode::Dual);

/// Curvature of g as R(delta, g).
RiemannComponents riemann_classic(const MetricField& g, const Point& point,
                                  DiffMode mode = DiffMode::Dual);

/// Contraction of R(g,m) over l and j: Ric_ik = R^l_ilk.
Tensor<double> ricci(const MetricField& g, const MetricField& m, const Point& point,
                     DiffMode mode = DiffMode::Dual);

/// m^ik Ric(delta, m)_ik.
double scalar_curvature(const MetricField& m, const Point& point,
                        DiffMode mode = DiffMode::Dual);

/// R(delta,m) - R(delta,g) - R(g,m).
Residual theorem2_residual(const MetricField& g, const MetricField& m,
                           const Point& point, DiffMode mode = DiffMode::Dual);

/// V_i;jk(m) - V_i;kj(m) - V_l R^l_ijk(delta,m) for a covector field V.
Residual ricci_identity_residual(const MetricField& m, const TensorField& covector,
                                 const Point& point, DiffMode mode = DiffMode::Dual);

/// R(m,g) + R(g,h) + R(h,m).
Residual cocycle_riemann(const MetricField& m, const MetricField& g,
                         const MetricField& h, const Point& point,
                         DiffMode mode = DiffMode::Dual);

/// R(delta,g) + R(g,m) at each sample; the sum vanishes wherever m is flat.
/// A sampled necessary condition, not a proof of flatness.
ResidualReport flatness_check(const MetricField& g, const MetricField& m,
                              const std::vector<Point>& sample_points, double tolerance,
                              DiffMode mode = DiffMode::Dual);

}  // namespace bimetric
