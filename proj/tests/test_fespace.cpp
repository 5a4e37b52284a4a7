#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "oracle.hpp"
#include "tsw/assembly.hpp"
#include "tsw/fespace.hpp"
#include "tsw/quadrature.hpp"

using namespace tsw;

TEST(FunctionSpace, DofCounts) {
  EXPECT_EQ(FunctionSpace(Mesh(1, 1, 1, 1), Family::V2, 0).ndof(), 1);
  const Mesh m(4, 4, 1, 1);
  EXPECT_EQ(FunctionSpace(m, Family::V2, 2).ndof(), 144);
  for (int k = 0; k <= 4; ++k) {
    const Mesh r(3, 5, 2, 1);
    const int n0 = FunctionSpace(r, Family::V0, k).ndof();
    const int n1 = FunctionSpace(r, Family::V1, k).ndof();
    const int n2 = FunctionSpace(r, Family::V2, k).ndof();
    EXPECT_EQ(n0 - n1 + n2, 0);
    EXPECT_EQ(n0, 15 * (k + 1) * (k + 1));
    // Direct enumeration of distinct global ids.
    for (Family f : {Family::V0, Family::V1, Family::V2}) {
      const FunctionSpace s(r, f, k);
      std::vector<int> seen(s.ndof(), 0);
      for (int c = 0; c < r.num_cells(); ++c)
        for (int g : s.cell_dofs(c)) seen[g] = 1;
      int count = 0;
      for (int v : seen) count += v;
      EXPECT_EQ(count, s.ndof());
    }
  }
}

TEST(FunctionSpace, UnsupportedOrder) {
  const Mesh m(2, 2, 1, 1);
  EXPECT_THROW(FunctionSpace(m, Family::V1, -1), std::invalid_argument);
  EXPECT_THROW(FunctionSpace(m, Family::V0, 5), std::invalid_argument);
  EXPECT_THROW(family_from_string("V3"), std::invalid_argument);
  EXPECT_EQ(family_from_string("V1"), Family::V1);
}

TEST(FunctionSpace, SharedV1DofsCarryOppositeSigns) {
  const Mesh m(3, 3, 1, 1);
  for (int k = 0; k <= 3; ++k) {
    const FunctionSpace v1(m, Family::V1, k);
    std::map<int, std::vector<double>> signs;
    for (int c = 0; c < m.num_cells(); ++c) {
      auto d = v1.cell_dofs(c);
      auto s = v1.cell_signs(c);
      for (int i = 0; i < v1.num_local(); ++i) signs[d[i]].push_back(s[i]);
    }
    for (const auto& [g, s] : signs) {
      if (s.size() == 1) continue;
      ASSERT_EQ(s.size(), 2u);
      EXPECT_EQ(s[0] + s[1], 0.0);
    }
  }
}

TEST(FunctionSpace, BasisExamples) {
  const Mesh m(3, 2, 1, 1);
  const FunctionSpace v2(m, Family::V2, 0);
  EXPECT_DOUBLE_EQ(v2.eval_basis(4, {0.3, -0.7}).value[0], 1.0);

  // Lowest-order x-normal functions on a unit-Jacobian cell have divergence +-1/2.
  const Mesh unit(1, 1, 2, 2);
  const FunctionSpace v1(unit, Family::V1, 0);
  for (Point2 xi : {Point2{0.1, 0.2}, Point2{-0.9, 0.5}}) {
    const auto e = v1.eval_basis(0, xi);
    for (int i = 0; i < v1.num_local(); ++i) EXPECT_NEAR(std::abs(e.div[i]), 0.5, 1e-15);
    // Local functions point outward: positive divergence.
    for (int i = 0; i < v1.num_local(); ++i) EXPECT_GT(e.div[i], 0.0);
  }

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int k = 0; k <= 4; ++k) {
    const FunctionSpace v0(m, Family::V0, k);
    for (int t = 0; t < 10; ++t) {
      const auto e = v0.eval_basis(1, {u(rng), u(rng)});
      double s = 0.0, px = 0.0, py = 0.0;
      for (int i = 0; i < v0.num_local(); ++i) {
        s += e.value[i];
        px += e.perp[2 * i];
        py += e.perp[2 * i + 1];
      }
      EXPECT_NEAR(s, 1.0, 1e-14);
      EXPECT_NEAR(px, 0.0, 1e-12);
      EXPECT_NEAR(py, 0.0, 1e-12);
    }
  }
  EXPECT_THROW(v2.eval_basis(6, {0, 0}), std::out_of_range);
}

TEST(FunctionSpace, BasisMatchesOracle) {
  const Mesh m(2, 2, 3.0, 2.0);
  for (int k = 0; k <= 2; ++k) {
    const oracle::Dense d(2, 2, 3.0, 2.0, k, 2);
    for (Family f : {Family::V0, Family::V1, Family::V2}) {
      const FunctionSpace s(m, f, k);
      for (const auto& p : d.points()) {
        std::vector<double> c(s.ndof());
        std::mt19937 rng(p.cell + 17);
        std::uniform_real_distribution<double> u(-1, 1);
        for (double& v : c) v = u(rng);
        const Field fld(s, c);
        const oracle::Vec cv = Eigen::Map<const oracle::Vec>(c.data(), c.size());
        if (f == Family::V1) {
          const auto a = fld.vector_at({p.x, p.y});
          const auto b = d.s1(p, cv);
          EXPECT_NEAR(a[0], b[0], 1e-13);
          EXPECT_NEAR(a[1], b[1], 1e-13);
          EXPECT_NEAR(fld.div_at({p.x, p.y}), d.div1(p, cv), 1e-12);
        } else {
          const double b = f == Family::V0 ? d.s0(p, cv) : d.s2(p, cv);
          EXPECT_NEAR(fld.value_at({p.x, p.y}), b, 1e-13);
        }
      }
    }
  }
}

TEST(FunctionSpace, PiolaNormalContinuity) {
  const Mesh m(3, 2, 1.5, 1.0);
  for (int k = 0; k <= 4; ++k) {
    const FunctionSpace v1(m, Family::V1, k);
    std::vector<double> c(v1.ndof());
    std::mt19937 rng(k);
    std::uniform_real_distribution<double> u(-1, 1);
    for (double& v : c) v = u(rng);
    const Field f(v1, c);
    const QuadRule g = gauss_rule(k + 2);
    for (int cell = 0; cell < m.num_cells(); ++cell) {
      const int east = m.neighbor(cell, Direction::East);
      const int north = m.neighbor(cell, Direction::North);
      for (double t : g.points) {
        // Evaluate through the basis on each side of the shared face.
        auto side = [&](int cc, Point2 xi, int comp) {
          const auto e = v1.eval_basis(cc, xi);
          auto d = v1.cell_dofs(cc);
          auto s = v1.cell_signs(cc);
          double v = 0.0;
          for (int i = 0; i < v1.num_local(); ++i) v += s[i] * c[d[i]] * e.value[2 * i + comp];
          return v;
        };
        EXPECT_NEAR(side(cell, {1.0, t}, 0), side(east, {-1.0, t}, 0), 1e-13);
        EXPECT_NEAR(side(cell, {t, 1.0}, 1), side(north, {t, -1.0}, 1), 1e-13);
      }
    }
  }
}

TEST(FunctionSpace, ProjectionExamples) {
  const Mesh m(3, 3, 2.0, 1.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0, 2.0), uy(0, 1.0);
  for (int k = 0; k <= 4; ++k) {
    const FunctionSpace v2(m, Family::V2, k);
    const Field one = project(v2, [](Point2) { return 1.0; });
    for (int t = 0; t < 10; ++t) EXPECT_NEAR(one.value_at({ux(rng), uy(rng)}), 1.0, 1e-13);

    // Degree <= k polynomial, reproduced pointwise.
    auto poly = [k](Point2 x) { return std::pow(x[0] - 0.3, k) * (1.0 + (k > 0 ? x[1] : 0.0)) + std::pow(x[1], k); };
    const Field p = project(v2, poly);
    for (int t = 0; t < 10; ++t) {
      const Point2 x{ux(rng), uy(rng)};
      EXPECT_NEAR(p.value_at(x), poly(x), 1e-12 * (1 + std::abs(poly(x))));
    }

    const FunctionSpace v1(m, Family::V1, k);
    const FunctionSpace v0(m, Family::V0, k);
    const Field c = project(v1, [](Point2) { return Point2{0.7, -1.3}; });
    for (int t = 0; t < 10; ++t) {
      const Point2 x{ux(rng), uy(rng)};
      EXPECT_NEAR(c.div_at(x), 0.0, 1e-12);
      EXPECT_NEAR(c.vector_at(x)[0], 0.7, 1e-13);
    }
    const Field q = project(v0, [](Point2 x) { return std::sin(x[0]) + x[1]; });
    const Field q2 = project(v0, [&](Point2 x) { return q.value_at(x); });
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) EXPECT_NEAR(q2.coeffs[i], q.coeffs[i], 1e-10);
  }
}

TEST(FunctionSpace, ProjectionConvergesAtOrderKPlusOne) {
  const double lx = 1.0;
  for (int k = 0; k <= 3; ++k) {
    double prev = 0.0;
    for (int n : {4, 8, 16}) {
      const Mesh m(n, n, lx, lx);
      const FunctionSpace v2(m, Family::V2, k);
      auto f = [](Point2 x) { return std::sin(2 * M_PI * x[0]) * std::cos(2 * M_PI * x[1]); };
      const Field p = project(v2, f);
      const QuadRule2D r = tensor_rule(gauss_rule(k + 4));
      double e = 0.0;
      for (int c = 0; c < m.num_cells(); ++c)
        for (int q = 0; q < r.size(); ++q) {
          const Point2 x = m.map_to_physical(c, r.points[q]);
          const double d = p.value_at(x) - f(x);
          e += r.weights[q] * m.det_jac() * d * d;
        }
      e = std::sqrt(e);
      if (prev > 0) EXPECT_GT(std::log2(prev / e), k + 1 - 0.15) << "k=" << k << " n=" << n;
      prev = e;
    }
  }
}

TEST(Field, SizeMismatchThrows) {
  const FunctionSpace v2(Mesh(2, 2, 1, 1), Family::V2, 1);
  EXPECT_THROW(Field(v2, std::vector<double>(3)), std::invalid_argument);
  const Field f(v2);
  EXPECT_THROW(f.vector_at({0.1, 0.1}), std::invalid_argument);
}
