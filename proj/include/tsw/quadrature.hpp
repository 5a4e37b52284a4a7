#pragma once

#include <vector>

#include "tsw/mesh.hpp"

namespace tsw {

/// One-dimensional rule on [-1,1].
struct QuadRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

/// Gauss-Lobatto-Legendre rule with n >= 2 points, exact to degree 2n-3.
QuadRule gll_rule(int n);

/// Gauss-Legendre rule with n >= 1 points, exact to degree 2n-1.
QuadRule gauss_rule(int n);

/// Tensor product of a 1D rule with itself. Point q = qx + n*qy.
struct QuadRule2D {
  QuadRule line;
  std::vector<Point2> points;
  std::vector<double> weights;

  int size() const noexcept { return static_cast<int>(points.size()); }
};

QuadRule2D tensor_rule(const QuadRule& line);

/// Legendre polynomial P_n(x) and its derivative.
struct LegendreValue {
  double p;
  double dp;
};
LegendreValue legendre(int n, double x);

/// Smallest GLL rule integrating every bilinear and trilinear integrand of
/// the order-k complex exactly (per-direction degree 3k+3), never smaller than 2k+2.
int default_gll_points(int order);

}  // namespace tsw
