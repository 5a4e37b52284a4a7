#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "tsw/cases.hpp"
#include "tsw/conservation.hpp"
#include "tsw/errors.hpp"
#include "tsw/tsw_core.hpp"

using namespace tsw;

namespace {

oracle::Vec evec(const std::vector<double>& v) { return Eigen::Map<const oracle::Vec>(v.data(), v.size()); }

double rel(const std::vector<double>& a, const oracle::Vec& b) {
  return (evec(a) - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

CaseConfig small_case(double lx, double ly) {
  CaseConfig c;
  c.lx = lx;
  c.ly = ly;
  return c;
}

DiscretizationConfig disc(int k) {
  DiscretizationConfig d;
  d.order = k;
  return d;
}

class CoreOracle : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(CoreOracle, RightHandSidesMatchDenseReference) {
  const int k = GetParam();
  const double lx = 4.0e6, ly = 3.0e6;
  const TswModel model(Mesh(3, 2, lx, ly), disc(k));
  const oracle::Dense d(3, 2, lx, ly, k);
  const oracle::Model om(d);
  const CaseConfig cc = small_case(lx, ly);
  const double tol = 1e-9;

  {
    const TswState s = random_state(model, Formulation::Coupled, cc, 7);
    RhsTerms terms;
    const Tendency t = model.rhs_coupled(s, &terms);
    const auto x = om.diagnose(evec(s.u.coeffs), evec(s.h.coeffs), nullptr, evec(s.B.coeffs), evec(s.f.coeffs));
    EXPECT_LT(rel(terms.q, x.q), tol);
    EXPECT_LT(rel(terms.F, x.F), tol);
    EXPECT_LT(rel(terms.bprime, x.bprime), tol);
    EXPECT_LT(rel(model.diagnose_q(s).coeffs, x.q), tol);
    EXPECT_LT(rel(model.diagnose_F(s).coeffs, x.F), tol);
    EXPECT_LT(rel(model.diagnose_bprime(s).coeffs, x.bprime), tol);
    const auto r = om.rhs_coupled(evec(s.u.coeffs), evec(s.h.coeffs), evec(s.B.coeffs), evec(s.f.coeffs));
    EXPECT_LT(rel(t.du, r[0]), tol);
    EXPECT_LT(rel(t.dh, r[1]), tol);
    EXPECT_LT(rel(t.dB, r[2]), tol);
    EXPECT_TRUE(t.db.empty());
  }
  {
    const TswState s = random_state(model, Formulation::Mixed, cc, 8);
    RhsTerms terms;
    const Tendency t = model.rhs_mixed(s, &terms);
    const oracle::Vec b = evec(s.b.coeffs);
    const auto xm = om.diagnose(evec(s.u.coeffs), evec(s.h.coeffs), &b, evec(s.B.coeffs), evec(s.f.coeffs));
    EXPECT_LT(rel(terms.G, xm.G), tol);
    EXPECT_LT(rel(terms.phi_m, xm.phi_m), tol);
    EXPECT_LT(rel(terms.phi_f, xm.phi_f), tol);
    EXPECT_LT(rel(terms.t_m, xm.t_m), tol);
    const auto r = om.rhs_mixed(evec(s.u.coeffs), evec(s.h.coeffs), b, evec(s.B.coeffs), evec(s.f.coeffs));
    EXPECT_LT(rel(t.du, r[0]), tol);
    EXPECT_LT(rel(t.dh, r[1]), tol);
    EXPECT_LT(rel(t.db, r[2]), tol);
    EXPECT_LT(rel(t.dB, r[3]), tol);
  }
}

INSTANTIATE_TEST_SUITE_P(Orders, CoreOracle, ::testing::Values(0, 1, 2));

TEST(TswModel, MassInversesAgree) {
  const TswModel model(Mesh(4, 3, 2.0e6, 1.0e6), disc(2));
  DiscretizationConfig cg = disc(2);
  cg.mass_inverse = MassInverse::Cg;
  cg.solver.rtol = 1e-14;
  const TswModel model_cg(Mesh(4, 3, 2.0e6, 1.0e6), cg);
  for (Family f : {Family::V0, Family::V1, Family::V2}) {
    const int n = f == Family::V0 ? model.v0().ndof() : f == Family::V1 ? model.v1().ndof() : model.v2().ndof();
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(1.3 * i) + 0.2;
    const SparseOperator& m = f == Family::V0 ? model.m0() : f == Family::V1 ? model.m1() : model.m2();
    const auto r = m.apply(x);
    const auto y = f == Family::V0 ? model.solve_m0(r) : f == Family::V1 ? model.solve_m1(r) : model.solve_m2(r);
    const auto z = f == Family::V0 ? model_cg.solve_m0(r) : f == Family::V1 ? model_cg.solve_m1(r) : model_cg.solve_m2(r);
    for (int i = 0; i < n; ++i) {
      EXPECT_NEAR(y[i], x[i], 1e-11);
      EXPECT_NEAR(z[i], x[i], 1e-9);
    }
  }
}

TEST(TswModel, WeightedSolvesInvertWeightedMass) {
  const TswModel model(Mesh(4, 4, 1.0e6, 1.0e6), disc(2));
  const CaseConfig cc = small_case(1.0e6, 1.0e6);
  const TswState s = random_state(model, Formulation::Coupled, cc, 3);
  for (auto p : {Preconditioner::Operator, Preconditioner::Diagonal}) {
    DiscretizationConfig dc = disc(2);
    dc.weighted_preconditioner = p;
    const TswModel m(Mesh(4, 4, 1.0e6, 1.0e6), dc);
    for (Family f : {Family::V0, Family::V1, Family::V2}) {
      const FunctionSpace& sp = f == Family::V0 ? m.v0() : f == Family::V1 ? m.v1() : m.v2();
      std::vector<double> x(sp.ndof());
      for (int i = 0; i < sp.ndof(); ++i) x[i] = std::cos(0.7 * i);
      const auto r = m.assembler().weighted_mass_apply(f, s.h.coeffs, x);
      const auto y = f == Family::V0   ? m.solve_weighted_m0(s.h.coeffs, r)
                     : f == Family::V1 ? m.solve_weighted_m1(s.h.coeffs, r)
                                       : m.solve_weighted_m2(s.h.coeffs, r);
      for (int i = 0; i < sp.ndof(); ++i) EXPECT_NEAR(y[i], x[i], 1e-8);
    }
  }
}

TEST(TswModel, StateOfRestIsSteady) {
  const TswModel model(Mesh(4, 4, 1.0e6, 1.0e6), disc(1));
  const CaseConfig cc = small_case(1.0e6, 1.0e6);
  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    const TswState s = init_from_functions(
        cc, model, form, [](Point2) { return Point2{0, 0}; }, [](Point2) { return 1000.0; },
        [](Point2) { return 9.8; });
    const Tendency t = model.rhs(s);
    // Round-off relative to the pressure-gradient scale g h / dx.
    const double acc = 9.8 * 1000.0 / model.mesh().dx();
    for (double v : t.du) EXPECT_NEAR(v, 0.0, 1e-9 * acc);
    for (double v : t.dh) EXPECT_NEAR(v, 0.0, 1e-12);
    for (double v : t.dB) EXPECT_NEAR(v, 0.0, 1e-10);
    for (double v : t.db) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(TswModel, ProductionResidualsVanish) {
  for (int k = 0; k <= 3; ++k) {
    const TswModel model(Mesh(4, 4, 5.0e6, 5.0e6), disc(k));
    const CaseConfig cc;
    for (unsigned seed : {1u, 2u}) {
      const auto c = production_residuals(model, random_state(model, Formulation::Coupled, cc, seed));
      EXPECT_LT(std::abs(c.energy_rate), 1e-11 * c.energy_scale) << "k=" << k;
      EXPECT_LT(std::abs(c.entropy_rate), 1e-11 * c.entropy_scale) << "k=" << k;
      const auto m = production_residuals(model, random_state(model, Formulation::Mixed, cc, seed));
      EXPECT_LT(std::abs(m.energy_rate), 1e-11 * m.energy_scale) << "k=" << k;
      EXPECT_GT(m.entropy_scale, 0.0);
    }
  }
}

TEST(TswModel, VorticityAndCoriolis) {
  // With u = 0 the potential vorticity is f/h.
  const TswModel model(Mesh(3, 3, 1.0e6, 1.0e6), disc(2));
  const CaseConfig cc = small_case(1.0e6, 1.0e6);
  const TswState s = init_from_functions(
      cc, model, Formulation::Coupled, [](Point2) { return Point2{0, 0}; },
      [](Point2) { return 500.0; }, [](Point2) { return 9.8; });
  for (double q : model.diagnose_q(s).coeffs) EXPECT_NEAR(q, cc.f0 / 500.0, 1e-18);
  // Solid-body-like shear u = (U sin(2 pi y / L), 0) has vorticity -dU/dy.
  const TswState t = init_from_functions(
      cc, model, Formulation::Coupled,
      [](Point2 x) { return Point2{std::sin(2 * constants::pi * x[1] / 1.0e6), 0.0}; },
      [](Point2) { return 1.0; }, [](Point2) { return 9.8; });
  const Field q = model.diagnose_q(t);
  for (Point2 x : {Point2{1.0e5, 2.0e5}, Point2{7.0e5, 4.5e5}}) {
    const double zeta = -2 * constants::pi / 1.0e6 * std::cos(2 * constants::pi * x[1] / 1.0e6);
    EXPECT_NEAR(q.value_at(x), zeta + cc.f0, 3e-7);
  }
}

TEST(TswModel, PositivityGuard) {
  const TswModel model(Mesh(2, 2, 1.0e6, 1.0e6), disc(1));
  std::vector<double> h(model.v2().ndof(), 100.0);
  EXPECT_NO_THROW(model.check_positivity(h));
  EXPECT_DOUBLE_EQ(model.min_depth(h), 100.0);
  h[3] = -1.0;
  EXPECT_THROW(model.check_positivity(h), PositivityError);
  h[3] = std::nan("");
  EXPECT_THROW(model.check_positivity(h), PositivityError);
}

TEST(TswModel, ConfigurationErrors) {
  EXPECT_THROW(TswModel(Mesh(2, 2, 1, 1), disc(5)), std::invalid_argument);
  DiscretizationConfig d = disc(1);
  d.quad_points = 1;
  EXPECT_THROW(TswModel(Mesh(2, 2, 1, 1), d), std::invalid_argument);
  EXPECT_THROW(formulation_from_string("hybrid"), std::invalid_argument);
  EXPECT_EQ(formulation_from_string("mixed"), Formulation::Mixed);
  EXPECT_EQ(mass_inverse_from_string(to_string(MassInverse::Cg)), MassInverse::Cg);
  const TswModel model(Mesh(2, 2, 1, 1), disc(1));
  const TswState c = model.make_state(Formulation::Coupled);
  EXPECT_THROW(model.rhs_mixed(c), std::invalid_argument);
  const TswState m = model.make_state(Formulation::Mixed);
  EXPECT_THROW(model.rhs_coupled(m), std::invalid_argument);
  EXPECT_EQ(m.b.coeffs.size(), static_cast<std::size_t>(model.v2().ndof()));
  EXPECT_EQ(c.b.space, nullptr);
}
