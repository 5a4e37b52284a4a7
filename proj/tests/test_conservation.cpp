#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "tsw/cases.hpp"
#include "tsw/conservation.hpp"
#include "tsw/timeint.hpp"

using namespace tsw;

namespace {

DiscretizationConfig disc(int k) {
  DiscretizationConfig d;
  d.order = k;
  return d;
}

TswState shifted(const TswState& s, const Tendency& t, double eps) {
  return euler(s, eps, t);
}

}  // namespace

TEST(Diagnostics, ConstantStateIntegrals) {
  const double L = 2.0e6, h0 = 1500.0, b0 = 9.0;
  const TswModel model(Mesh(3, 3, L, L), disc(2));
  CaseConfig cc;
  cc.lx = cc.ly = L;
  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    const TswState s = init_from_functions(
        cc, model, form, [](Point2) { return Point2{3.0, -4.0}; }, [=](Point2) { return h0; },
        [=](Point2) { return b0; });
    const DiagnosticsRecord r = evaluate_diagnostics(model, s, 7, 42.0, 100.0);
    const double area = L * L;
    EXPECT_EQ(r.step, 7);
    EXPECT_EQ(r.time, 42.0);
    EXPECT_NEAR(r.mass, h0 * area, 1e-9 * h0 * area);
    EXPECT_NEAR(r.buoyancy, h0 * b0 * area, 1e-9 * h0 * b0 * area);
    const double ke = 0.5 * h0 * 25.0 * area;
    EXPECT_NEAR(r.energy_f, ke + 0.5 * h0 * h0 * b0 * area, 1e-9 * r.energy_f);
    EXPECT_NEAR(r.energy_m, ke + 0.5 * h0 * h0 * b0 * area, 1e-9 * r.energy_m);
    EXPECT_NEAR(r.entropy, 0.5 * h0 * b0 * b0 * area, 1e-9 * r.entropy);
    EXPECT_NEAR(r.entropy_alt, 0.5 * h0 * b0 * b0 * area, 1e-9 * r.entropy);
    EXPECT_NEAR(r.vorticity, 0.0, 1e-12 * cc.f0 * area);
    EXPECT_NEAR(r.min_h, h0, 1e-9);
    const double dx = L / 3 / 3;
    EXPECT_NEAR(r.max_cfl, 100.0 * 5.0 / dx, 1e-10);
    EXPECT_NEAR(max_cfl(model, s, 50.0), 50.0 * 5.0 / dx, 1e-10);
    EXPECT_EQ(r.conserved_energy(form), form == Formulation::Mixed ? 0.5 * (r.energy_m + r.energy_f) : r.energy_f);
  }
}

TEST(Diagnostics, RatesMatchDirectionalDerivatives) {
  // The reported production rates are the derivatives of the conserved
  // functionals along the tendency; both must vanish for the energy.
  const TswModel model(Mesh(4, 4, 5.0e6, 5.0e6), disc(2));
  CaseConfig cc;
  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    const TswState s = random_state(model, form, cc, 9);
    const Tendency t = model.rhs(s);
    const double eps = 1.0;
    const DiagnosticsRecord p = evaluate_diagnostics(model, shifted(s, t, eps));
    const DiagnosticsRecord m = evaluate_diagnostics(model, shifted(s, t, -eps));
    const DiagnosticsRecord c = evaluate_diagnostics(model, s);
    const double de = (p.conserved_energy(form) - m.conserved_energy(form)) / (2 * eps);
    // Scale: the kinetic energy turnover rate.
    const ProductionRates r = production_residuals(model, s);
    EXPECT_LT(std::abs(de), 1e-6 * r.energy_scale) << to_string(form);
    EXPECT_LT(std::abs(c.energy_rate), 1e-11 * r.energy_scale);
    if (form == Formulation::Coupled) {
      const double ds = (p.entropy - m.entropy) / (2 * eps);
      EXPECT_LT(std::abs(ds), 1e-6 * r.entropy_scale);
      EXPECT_LT(std::abs(c.entropy_rate), 1e-11 * r.entropy_scale);
    }
  }
}

TEST(Diagnostics, MassAndBuoyancyExactlyConserved) {
  const TswModel model(Mesh(4, 4, 5.0e6, 5.0e6), disc(1));
  CaseConfig cc;
  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    TswState s = random_state(model, form, cc, 2);
    const DiagnosticsRecord r0 = evaluate_diagnostics(model, s);
    for (int i = 0; i < 5; ++i) s = ssprk3_step(model, s, 200.0);
    const DiagnosticsRecord r1 = evaluate_diagnostics(model, s);
    EXPECT_NEAR(r1.mass, r0.mass, 1e-13 * r0.mass);
    EXPECT_NEAR(r1.buoyancy, r0.buoyancy, 1e-13 * r0.buoyancy);
    EXPECT_NEAR(r1.vorticity, r0.vorticity, 1e-13 * cc.f0 * 2.5e13);
  }
}

TEST(Diagnostics, MixedEntropyProductionShrinksWithResolution) {
  CaseConfig cc;
  std::vector<double> rel;
  for (int n : {4, 8, 16}) {
    const TswModel model(Mesh(n, n, cc.lx, cc.ly), disc(1));
    const auto r = production_residuals(model, random_state(model, Formulation::Mixed, cc, 5));
    rel.push_back(std::abs(r.entropy_rate) / r.entropy_scale);
  }
  EXPECT_LT(rel[1], rel[0]);
  EXPECT_LT(rel[2], rel[1]);
}

TEST(Diagnostics, CoupledEntropyForms) {
  // In the coupled form the entropy 1/2 int h b'^2 equals 1/2 b'^T M2 B exactly; the pointwise
  // 1/2 int B^2/h exceeds it by the projection defect 1/2 int h (B/h - b')^2, which vanishes
  // with resolution.
  CaseConfig cc;
  std::vector<double> defect;
  for (int n : {4, 8, 16}) {
    const TswModel model(Mesh(n, n, cc.lx, cc.ly), disc(2));
    const TswState s = random_state(model, Formulation::Coupled, cc, 3);
    const DiagnosticsRecord r = evaluate_diagnostics(model, s);
    const Field bp = model.diagnose_bprime(s);
    const double pairing = 0.5 * pair(model.m2().apply(s.B.coeffs), bp.coeffs);
    EXPECT_NEAR(r.entropy, pairing, 10 * 1e-12 * r.entropy);
    EXPECT_GE(r.entropy_alt, r.entropy * (1 - 1e-14));
    defect.push_back((r.entropy_alt - r.entropy) / r.entropy);
  }
  EXPECT_LT(defect[2], defect[1]);
  EXPECT_LT(defect[1], defect[0]);
}

TEST(Diagnostics, FunctionalsMatchDenseOracle) {
  // entropy_alt has a rational integrand and is left out: its value depends on the rule.
  const double L = 5.0e6;
  CaseConfig cc;
  for (int k = 0; k <= 2; ++k) {
    const TswModel model(Mesh(2, 2, L, L), disc(k));
    const oracle::Dense d(2, 2, L, L, k);
    const oracle::Model om(d);
    for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
      const TswState s = random_state(model, form, cc, 21 + k);
      const DiagnosticsRecord r = evaluate_diagnostics(model, s);
      auto ev = [](const std::vector<double>& v) { return Eigen::Map<const oracle::Vec>(v.data(), v.size()); };
      const oracle::Vec u = ev(s.u.coeffs), h = ev(s.h.coeffs), B = ev(s.B.coeffs), f = ev(s.f.coeffs);
      const auto x = om.diagnose(u, h, nullptr, B, f);
      const oracle::Vec b = form == Formulation::Mixed ? ev(s.b.coeffs) : x.bprime;
      auto ke = [&](const oracle::Point& p) {
        const auto v = d.s1(p, u);
        return 0.5 * d.s2(p, h) * (v[0] * v[0] + v[1] * v[1]);
      };
      const double mass = d.integral([&](const oracle::Point& p) { return d.s2(p, h); });
      const double buoy = d.integral([&](const oracle::Point& p) { return d.s2(p, B); });
      const double vort = d.integral([&](const oracle::Point& p) { return d.s2(p, h) * d.s0(p, x.q) - d.s0(p, f); });
      const double em = d.integral([&](const oracle::Point& p) { return ke(p) + 0.5 * std::pow(d.s2(p, h), 2) * d.s2(p, b); });
      const double ef = d.integral([&](const oracle::Point& p) { return ke(p) + 0.5 * d.s2(p, h) * d.s2(p, B); });
      const double ent = d.integral([&](const oracle::Point& p) { return 0.5 * d.s2(p, h) * std::pow(d.s2(p, b), 2); });
      EXPECT_NEAR(r.mass, mass, 1e-12 * mass);
      EXPECT_NEAR(r.buoyancy, buoy, 1e-12 * buoy);
      EXPECT_NEAR(r.energy_m, em, 1e-12 * em);
      EXPECT_NEAR(r.energy_f, ef, 1e-12 * ef);
      EXPECT_NEAR(r.entropy, ent, 1e-12 * ent);
      EXPECT_NEAR(r.vorticity, vort, 1e-12 * cc.f0 * L * L);
    }
  }
}

TEST(Diagnostics, RestStateRatesVanish) {
  const TswModel model(Mesh(3, 3, 1.0e6, 1.0e6), disc(2));
  CaseConfig cc;
  cc.lx = cc.ly = 1.0e6;
  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    const TswState s = init_from_functions(
        cc, model, form, [](Point2) { return Point2{0, 0}; }, [](Point2) { return 2000.0; },
        [](Point2) { return 9.5; });
    const DiagnosticsRecord r = evaluate_diagnostics(model, s);
    const ProductionRates p = production_residuals(model, s);
    EXPECT_LE(std::abs(r.energy_rate), 1e-13 * r.energy_f);
    EXPECT_LE(std::abs(r.entropy_rate), 1e-13 * r.entropy);
    EXPECT_LE(std::abs(p.energy_rate), 1e-13 * r.energy_f);
  }
}
