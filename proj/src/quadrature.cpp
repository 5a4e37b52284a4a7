#include "tsw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tsw {

LegendreValue legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("legendre: degree must be >= 0");
  if (n == 0) return {1.0, 0.0};
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  // P_n' from the recurrence (1 - x^2) P_n' = n (P_{n-1} - x P_n), valid off the endpoints.
  double dp;
  if (std::abs(1.0 - x * x) < 1e-300) {
    dp = 0.5 * n * (n + 1.0) * (x > 0 ? 1.0 : (n % 2 == 0 ? -1.0 : 1.0));
  } else {
    dp = n * (p0 - x * p1) / (1.0 - x * x);
  }
  return {p1, dp};
}

namespace {

constexpr double kNewtonTol = 1e-15;
constexpr int kNewtonMaxIter = 100;

void symmetrize(QuadRule& r) {
  const int n = r.size();
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (r.points[n - 1 - i] - r.points[i]);
    const double w = 0.5 * (r.weights[n - 1 - i] + r.weights[i]);
    r.points[i] = -x;
    r.points[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.points[n / 2] = 0.0;
}

}  // namespace

QuadRule gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n must be >= 1");
  QuadRule r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < kNewtonTol) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    r.points[i] = x;
    r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  symmetrize(r);
  return r;
}

QuadRule gll_rule(int n) {
  if (n < 2) throw std::invalid_argument("gll_rule: n must be >= 2");
  QuadRule r;
  r.points.resize(n);
  r.weights.resize(n);
  const int m = n - 1;
  r.points[0] = -1.0;
  r.points[m] = 1.0;
  // Interior nodes are the roots of P_m'. Newton on q(x) = (1 - x^2) P_m'(x)
  // using (1 - x^2) P_m'' = 2x P_m' - m(m+1) P_m.
  for (int i = 1; i < m; ++i) {
    double x = -std::cos(std::numbers::pi * i / m);
    for (int it = 0; it < kNewtonMaxIter; ++it) {
      const auto [p, dp] = legendre(m, x);
      const double d2p = (2.0 * x * dp - m * (m + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < kNewtonTol) break;
    }
    r.points[i] = x;
  }
  for (int i = 0; i < n; ++i) {
    const double p = legendre(m, r.points[i]).p;
    r.weights[i] = 2.0 / (m * (m + 1.0) * p * p);
  }
  symmetrize(r);
  return r;
}

QuadRule2D tensor_rule(const QuadRule& line) {
  QuadRule2D r;
  r.line = line;
  const int n = line.size();
  r.points.reserve(n * n);
  r.weights.reserve(n * n);
  for (int qy = 0; qy < n; ++qy)
    for (int qx = 0; qx < n; ++qx) {
      r.points.push_back({line.points[qx], line.points[qy]});
      r.weights.push_back(line.weights[qx] * line.weights[qy]);
    }
  return r;
}

int default_gll_points(int order) {
  // 2n - 3 >= 3k + 3
  const int exact = (3 * order + 7) / 2;
  return std::max(2 * order + 2, exact);
}

}  // namespace tsw
