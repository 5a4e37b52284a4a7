#pragma once

// Dense reference implementation used by the tests. It shares no code with the
// library: nodes are written out in closed form, the Gauss rule is built by
// Golub-Welsch, basis functions and the global numbering are re-derived, and
// every operator is a plain loop over cells and quadrature points.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline std::pair<std::vector<double>, std::vector<double>> gauss(int n) {
  Mat j = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) j(i, i - 1) = j(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
  Eigen::SelfAdjointEigenSolver<Mat> es(j);
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    w[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  return {x, w};
}

// Interpolation nodes of the 1D factors for k <= 2.
inline std::vector<double> open_nodes(int k) {
  switch (k) {
    case 0: return {0.0};
    case 1: return {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    case 2: return {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  }
  throw std::invalid_argument("oracle supports k <= 2");
}

inline std::vector<double> closed_nodes(int k) {
  switch (k) {
    case 0: return {-1.0, 1.0};
    case 1: return {-1.0, 0.0, 1.0};
    case 2: return {-1.0, -1.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0), 1.0};
  }
  throw std::invalid_argument("oracle supports k <= 2");
}

inline double lag(const std::vector<double>& z, int j, double x) {
  double v = 1.0;
  for (int m = 0; m < static_cast<int>(z.size()); ++m)
    if (m != j) v *= (x - z[m]) / (z[j] - z[m]);
  return v;
}

inline double dlag(const std::vector<double>& z, int j, double x) {
  double s = 0.0;
  for (int l = 0; l < static_cast<int>(z.size()); ++l) {
    if (l == j) continue;
    double p = 1.0 / (z[j] - z[l]);
    for (int m = 0; m < static_cast<int>(z.size()); ++m)
      if (m != j && m != l) p *= (x - z[m]) / (z[j] - z[m]);
    s += p;
  }
  return s;
}

struct V0Basis {
  int index;
  double value, perp_x, perp_y;
};
struct V1Basis {
  int index;
  double vx, vy, div;
};
struct V2Basis {
  int index;
  double value;
};

/// One quadrature point of one cell with every basis function supported there.
struct Point {
  int cell;
  double x, y, weight;
  std::vector<V0Basis> v0;
  std::vector<V1Basis> v1;
  std::vector<V2Basis> v2;
};

class Dense {
public:
  Dense(int nx, int ny, double lx, double ly, int k, int qpoints = 0)
      : nx_(nx), ny_(ny), k_(k), K_(k + 1), lx_(lx), ly_(ly) {
    const auto zc = closed_nodes(k), zo = open_nodes(k);
    const auto [qx, qw] = gauss(qpoints > 0 ? qpoints : 3 * k + 4);
    const double jx = 0.5 * lx / nx, jy = 0.5 * ly / ny;
    Nx_ = nx * K_;
    Ny_ = ny * K_;
    for (int cj = 0; cj < ny; ++cj)
      for (int ci = 0; ci < nx; ++ci)
        for (std::size_t iy = 0; iy < qx.size(); ++iy)
          for (std::size_t ix = 0; ix < qx.size(); ++ix) {
            const double xi = qx[ix], eta = qx[iy];
            Point p;
            p.cell = ci + nx * cj;
            p.x = (2 * ci + 1 + xi) * jx;
            p.y = (2 * cj + 1 + eta) * jy;
            p.weight = qw[ix] * qw[iy] * jx * jy;
            for (int b = 0; b <= K_; ++b)
              for (int a = 0; a <= K_; ++a) {
                const double lx_ = lag(zc, a, xi), ly_ = lag(zc, b, eta);
                const double ddx = dlag(zc, a, xi) * ly_ / jx, ddy = lx_ * dlag(zc, b, eta) / jy;
                p.v0.push_back({v0_index(ci * K_ + a, cj * K_ + b), lx_ * ly_, -ddy, ddx});
              }
            for (int b = 0; b < K_; ++b)
              for (int a = 0; a <= K_; ++a)
                p.v1.push_back({v1x_index(ci * K_ + a, cj * K_ + b), lag(zc, a, xi) * lag(zo, b, eta) / jy, 0.0,
                                dlag(zc, a, xi) * lag(zo, b, eta) / (jx * jy)});
            for (int b = 0; b <= K_; ++b)
              for (int a = 0; a < K_; ++a)
                p.v1.push_back({v1y_index(ci * K_ + a, cj * K_ + b), 0.0, lag(zo, a, xi) * lag(zc, b, eta) / jx,
                                lag(zo, a, xi) * dlag(zc, b, eta) / (jx * jy)});
            for (int b = 0; b < K_; ++b)
              for (int a = 0; a < K_; ++a)
                p.v2.push_back({p.cell * K_ * K_ + a + K_ * b, lag(zo, a, xi) * lag(zo, b, eta)});
            points_.push_back(std::move(p));
          }
  }

  int n0() const { return Nx_ * Ny_; }
  int n1() const { return 2 * Nx_ * Ny_; }
  int n2() const { return nx_ * ny_ * K_ * K_; }
  const std::vector<Point>& points() const { return points_; }

  int v0_index(int gx, int gy) const { return ((gx % Nx_) + Nx_) % Nx_ + Nx_ * (((gy % Ny_) + Ny_) % Ny_); }
  int v1x_index(int gx, int gy) const { return ((gx % Nx_) + Nx_) % Nx_ + Nx_ * gy; }
  int v1y_index(int gx, int gy) const { return Nx_ * Ny_ + ((gy % Ny_) + Ny_) % Ny_ + Ny_ * gx; }

  // Pointwise field values.
  double s0(const Point& p, const Vec& c) const {
    double v = 0;
    for (const auto& e : p.v0) v += c(e.index) * e.value;
    return v;
  }
  double s2(const Point& p, const Vec& c) const {
    double v = 0;
    for (const auto& e : p.v2) v += c(e.index) * e.value;
    return v;
  }
  std::array<double, 2> s1(const Point& p, const Vec& c) const {
    std::array<double, 2> v{0, 0};
    for (const auto& e : p.v1) {
      v[0] += c(e.index) * e.vx;
      v[1] += c(e.index) * e.vy;
    }
    return v;
  }
  double div1(const Point& p, const Vec& c) const {
    double v = 0;
    for (const auto& e : p.v1) v += c(e.index) * e.div;
    return v;
  }

  Mat mass0(const Vec* w = nullptr) const {
    Mat m = Mat::Zero(n0(), n0());
    for (const auto& p : points_) {
      const double s = p.weight * (w ? s2(p, *w) : 1.0);
      for (const auto& i : p.v0)
        for (const auto& j : p.v0) m(i.index, j.index) += s * i.value * j.value;
    }
    return m;
  }
  Mat mass1(const Vec* w = nullptr) const {
    Mat m = Mat::Zero(n1(), n1());
    for (const auto& p : points_) {
      const double s = p.weight * (w ? s2(p, *w) : 1.0);
      for (const auto& i : p.v1)
        for (const auto& j : p.v1) m(i.index, j.index) += s * (i.vx * j.vx + i.vy * j.vy);
    }
    return m;
  }
  Mat mass2(const Vec* w = nullptr) const {
    Mat m = Mat::Zero(n2(), n2());
    for (const auto& p : points_) {
      const double s = p.weight * (w ? s2(p, *w) : 1.0);
      for (const auto& i : p.v2)
        for (const auto& j : p.v2) m(i.index, j.index) += s * i.value * j.value;
    }
    return m;
  }
  Mat div() const {
    Mat m = Mat::Zero(n2(), n1());
    for (const auto& p : points_)
      for (const auto& i : p.v2)
        for (const auto& j : p.v1) m(i.index, j.index) += p.weight * i.value * j.div;
    return m;
  }
  Mat perp_curl() const {
    Mat m = Mat::Zero(n1(), n0());
    for (const auto& p : points_)
      for (const auto& i : p.v1)
        for (const auto& j : p.v0) m(i.index, j.index) += p.weight * (i.vx * j.perp_x + i.vy * j.perp_y);
    return m;
  }
  Vec c1(const Vec& q, const Vec& f) const {
    Vec r = Vec::Zero(n1());
    for (const auto& p : points_) {
      const double qv = s0(p, q);
      const auto fv = s1(p, f);
      for (const auto& i : p.v1) r(i.index) += p.weight * qv * (-fv[1] * i.vx + fv[0] * i.vy);
    }
    return r;
  }
  Vec k2(const Vec& a, const Vec& b) const {
    Vec r = Vec::Zero(n2());
    for (const auto& p : points_) {
      const auto av = s1(p, a), bv = s1(p, b);
      for (const auto& i : p.v2) r(i.index) += p.weight * (av[0] * bv[0] + av[1] * bv[1]) * i.value;
    }
    return r;
  }
  double integral(const std::function<double(const Point&)>& f) const {
    double s = 0;
    for (const auto& p : points_) s += p.weight * f(p);
    return s;
  }

private:
  int nx_, ny_, k_, K_, Nx_ = 0, Ny_ = 0;
  double lx_, ly_;
  std::vector<Point> points_;
};

inline Vec solve(const Mat& a, const Vec& b) { return a.ldlt().solve(b); }

struct Diagnosed {
  Vec q, F, bprime, G, phi_m, t_m, phi_f, t_f;
};

/// Dense versions of the diagnostic solves and both right-hand sides.
struct Model {
  const Dense& d;
  Mat M0, M1, M2, D2, R1;

  explicit Model(const Dense& dense)
      : d(dense), M0(d.mass0()), M1(d.mass1()), M2(d.mass2()), D2(d.div()), R1(d.perp_curl()) {}

  Diagnosed diagnose(const Vec& u, const Vec& h, const Vec* b, const Vec& B, const Vec& f) const {
    Diagnosed x;
    x.q = solve(d.mass0(&h), -R1.transpose() * u + M0 * f);
    x.F = solve(M1, d.mass1(&h) * u);
    x.bprime = solve(d.mass2(&h), M2 * B);
    x.G = solve(d.mass1(&h), -D2.transpose() * x.bprime);
    const Vec ke = 0.5 * d.k2(u, u);
    if (b) {
      x.phi_m = solve(M2, ke + d.mass2(&h) * *b);
      x.t_m = solve(M2, 0.5 * d.mass2(&h) * h);
    }
    x.phi_f = solve(M2, ke) + 0.5 * B;
    x.t_f = 0.5 * h;
    return x;
  }

  // Returns (du, dh, dB).
  std::array<Vec, 3> rhs_coupled(const Vec& u, const Vec& h, const Vec& B, const Vec& f) const {
    const Diagnosed x = diagnose(u, h, nullptr, B, f);
    const Vec& bp = x.bprime;
    const Mat D2t = D2.transpose();
    const Vec a1 = solve(M1, D2t * h), a2 = solve(M1, D2t * bp);
    const Vec ru = -d.c1(x.q, x.F) + D2t * x.phi_f + 0.25 * d.mass1(&bp) * a1 +
                   0.25 * D2t * solve(M2, d.mass2(&bp) * h) - 0.25 * d.mass1(&h) * a2;
    const Vec dh = -solve(M2, D2 * x.F);
    const Vec rB = -0.5 * D2 * solve(M1, d.mass1(&bp) * x.F) + 0.5 * d.mass2(&bp) * dh + 0.5 * d.k2(a2, x.F);
    return {solve(M1, ru), dh, solve(M2, rB)};
  }

  // Returns (du, dh, db, dB).
  std::array<Vec, 4> rhs_mixed(const Vec& u, const Vec& h, const Vec& b, const Vec& B,
                               const Vec& f) const {
    const Diagnosed x = diagnose(u, h, &b, B, f);
    const Mat D2t = D2.transpose();
    const Vec ru = -d.c1(x.q, x.F) + 0.5 * D2t * (x.phi_m + x.phi_f) + 0.5 * d.mass1(&x.t_m) * x.G +
                   0.5 * d.mass1(&b) * solve(M1, D2t * x.t_f);
    return {solve(M1, ru), -solve(M2, D2 * x.F), -solve(M2, d.k2(x.G, x.F)),
            -solve(M2, D2 * solve(M1, d.mass1(&b) * x.F))};
  }
};

}  // namespace oracle
