#include "tsw/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "tsw/linalg.hpp"

namespace tsw {

namespace {

std::vector<double> scaled(std::vector<double> v, double a) {
  for (double& x : v) x *= a;
  return v;
}

std::vector<double> sum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> s(a);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

}  // namespace

ProductionRates production_residuals(const TswModel& model, const TswState& s, const Tendency& t,
                                     const RhsTerms& terms) {
  const Assembler& a = model.assembler();
  const auto m1du = model.m1().apply(t.du);
  const auto m2dh = model.m2().apply(t.dh);
  const auto m2dB = model.m2().apply(t.dB);
  const auto& bp = terms.bprime;
  // Derivatives of S = 1/2 b'^T M2 B with respect to h and B.
  const auto ds_h_f = scaled(a.weighted_mass_apply(Family::V2, bp, bp), -0.5);
  const auto ds_B_f = model.m2().apply(bp);

  ProductionRates r;
  if (s.form == Formulation::Coupled) {
    const double terms_e[] = {pair(m1du, terms.F), pair(m2dh, terms.phi_f), pair(m2dB, terms.t_f)};
    const double terms_s[] = {pair(ds_h_f, t.dh), pair(ds_B_f, t.dB)};
    for (double v : terms_e) r.energy_rate += v, r.energy_scale += std::abs(v);
    for (double v : terms_s) r.entropy_rate += v, r.entropy_scale += std::abs(v);
    return r;
  }

  const auto m2db = model.m2().apply(t.db);
  const auto& b = s.b.coeffs;
  const auto& h = s.h.coeffs;
  const double terms_e[] = {pair(m1du, terms.F), 0.5 * pair(m2dh, sum(terms.phi_m, terms.phi_f)),
                            0.5 * pair(m2db, terms.t_m), 0.5 * pair(m2dB, terms.t_f)};
  // Material entropy 1/2 int h b^2 and the flux-form entropy, averaged.
  const auto ds_h_m = scaled(a.weighted_mass_apply(Family::V2, b, b), 0.5);
  const auto ds_b_m = a.weighted_mass_apply(Family::V2, h, b);
  const double terms_s[] = {0.5 * pair(ds_h_m, t.dh), 0.5 * pair(ds_b_m, t.db),
                            0.5 * pair(ds_h_f, t.dh), 0.5 * pair(ds_B_f, t.dB)};
  for (double v : terms_e) r.energy_rate += v, r.energy_scale += std::abs(v);
  for (double v : terms_s) r.entropy_rate += v, r.entropy_scale += std::abs(v);
  return r;
}

ProductionRates production_residuals(const TswModel& model, const TswState& s) {
  RhsTerms terms;
  const Tendency t = model.rhs(s, &terms);
  return production_residuals(model, s, t, terms);
}

double max_cfl(const TswModel& model, const TswState& s, double dt) {
  const Assembler& a = model.assembler();
  const auto ux = a.values_x(s.u.coeffs), uy = a.values_y(s.u.coeffs);
  double umax = 0.0;
  for (std::size_t i = 0; i < ux.size(); ++i) umax = std::max(umax, std::hypot(ux[i], uy[i]));
  const Mesh& m = model.mesh();
  const double dx = std::min(m.dx(), m.dy()) / (model.order() + 1);
  return dt * umax / dx;
}

DiagnosticsRecord evaluate_diagnostics(const TswModel& model, const TswState& s, long step,
                                       double time, double dt) {
  const Assembler& a = model.assembler();
  const auto hq = a.values(Family::V2, s.h.coeffs);
  const auto Bq = a.values(Family::V2, s.B.coeffs);
  const auto ux = a.values_x(s.u.coeffs), uy = a.values_y(s.u.coeffs);

  RhsTerms terms;
  const Tendency t = model.rhs(s, &terms);
  const ProductionRates rates = production_residuals(model, s, t, terms);
  const auto bq = a.values(Family::V2, s.form == Formulation::Mixed ? s.b.coeffs : terms.bprime);
  const auto qq = a.values(Family::V0, terms.q);
  const auto fq = a.values(Family::V0, s.f.coeffs);

  const std::size_t n = hq.size();
  std::vector<double> mass(n), vort(n), em(n), ef(n), ent(n), alt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ke = 0.5 * hq[i] * (ux[i] * ux[i] + uy[i] * uy[i]);
    vort[i] = hq[i] * qq[i] - fq[i];
    em[i] = ke + 0.5 * hq[i] * hq[i] * bq[i];
    ef[i] = ke + 0.5 * hq[i] * Bq[i];
    ent[i] = 0.5 * hq[i] * bq[i] * bq[i];
    alt[i] = 0.5 * Bq[i] * Bq[i] / hq[i];
  }

  DiagnosticsRecord r;
  r.step = step;
  r.time = time;
  r.mass = a.integrate(hq);
  r.vorticity = a.integrate(vort);
  r.buoyancy = a.integrate(Bq);
  r.energy_m = a.integrate(em);
  r.energy_f = a.integrate(ef);
  r.entropy = a.integrate(ent);
  r.entropy_alt = a.integrate(alt);
  r.energy_rate = rates.energy_rate;
  r.entropy_rate = rates.entropy_rate;
  r.min_h = *std::min_element(hq.begin(), hq.end());
  r.max_cfl = dt > 0.0 ? max_cfl(model, s, dt) : 0.0;
  return r;
}

}  // namespace tsw
