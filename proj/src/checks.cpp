#include "tsw/checks.hpp"

#include <algorithm>
#include <cmath>

#include "tsw/cases.hpp"
#include "tsw/conservation.hpp"
#include "tsw/tsw_core.hpp"

namespace tsw {

namespace {

double max_abs_product(const SparseOperator& a, const SparseOperator& b) {
  return multiply(a, b).max_abs();
}

double dense_max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<IdentityCheck> run_identity_checks(int n, int order, unsigned long seed) {
  DiscretizationConfig dc;
  dc.order = order;
  CaseConfig cc;
  const TswModel model(Mesh(n, n, cc.lx, cc.ly), dc);
  std::vector<IdentityCheck> out;

  out.push_back({"div(perp) weak D2*E10", max_abs_product(model.d2(), model.perp()), 1e-13});
  out.push_back({"div(perp) strong E21*E10", max_abs_product(model.divergence(), model.perp()), 1e-13});
  {
    // D2 M1^{-1} R1, column by column through a random V0 vector.
    std::vector<double> psi(model.v0().ndof());
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::sin(0.37 * i + 0.1);
    const auto v = model.d2().apply(model.solve_m1(model.r1().apply(psi)));
    out.push_back({"div(perp) D2*M1^-1*R1 psi", dense_max_abs(v) / dense_max_abs(psi), 1e-12});
  }
  {
    const auto m1e = multiply(model.m1(), model.perp());
    double d = 0.0;
    const auto a = m1e.to_dense(), b = model.r1().to_dense();
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    out.push_back({"R1 - M1*E10", d / model.r1().max_abs(), 1e-12});
  }

  for (Formulation form : {Formulation::Coupled, Formulation::Mixed}) {
    const TswState s = random_state(model, form, cc, seed);
    RhsTerms terms;
    const Tendency t = model.rhs(s, &terms);
    const ProductionRates r = production_residuals(model, s, t, terms);
    const std::string tag = form == Formulation::Coupled ? "coupled " : "mixed ";
    out.push_back({tag + "energy production / term scale", std::abs(r.energy_rate) / r.energy_scale, 1e-11});
    if (form == Formulation::Coupled)
      out.push_back({tag + "entropy production / term scale", std::abs(r.entropy_rate) / r.entropy_scale, 1e-11});
    double mass = 0.0, scale = 0.0;
    for (double v : model.m2().apply(t.dh)) mass += v, scale += std::abs(v);
    out.push_back({tag + "mass production", std::abs(mass) / scale, 1e-12});
    double b = 0.0, bs = 0.0;
    for (double v : model.m2().apply(t.dB)) b += v, bs += std::abs(v);
    out.push_back({tag + "buoyancy production", std::abs(b) / bs, 1e-10});
  }
  return out;
}

}  // namespace tsw
