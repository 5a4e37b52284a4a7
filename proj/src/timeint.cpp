#include "tsw/timeint.hpp"

#include <stdexcept>

namespace tsw {

namespace {

void check_dt(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
}

void advance(Field& out, const Field& s, double dt, const std::vector<double>& ds) {
  if (!s.space) return;
  if (ds.size() != s.coeffs.size()) throw std::invalid_argument("tendency size does not match state");
  out = s;
  for (std::size_t i = 0; i < ds.size(); ++i) out.coeffs[i] = euler(s.coeffs[i], dt, ds[i]);
}

void mix(Field& out, double a, const Field& x, double b, const Field& y) {
  if (!x.space) return;
  out = x;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i)
    out.coeffs[i] = blend(a, x.coeffs[i], b, y.coeffs[i]);
}

}  // namespace

TswState euler(const TswState& s, double dt, const Tendency& ds) {
  TswState out;
  out.form = s.form;
  out.f = s.f;
  advance(out.u, s.u, dt, ds.du);
  advance(out.h, s.h, dt, ds.dh);
  advance(out.b, s.b, dt, ds.db);
  advance(out.B, s.B, dt, ds.dB);
  return out;
}

TswState blend(double a, const TswState& x, double b, const TswState& y) {
  TswState out;
  out.form = x.form;
  out.f = x.f;
  mix(out.u, a, x.u, b, y.u);
  mix(out.h, a, x.h, b, y.h);
  mix(out.b, a, x.b, b, y.b);
  mix(out.B, a, x.B, b, y.B);
  return out;
}

TswState ssprk3_step(const TswModel& model, const TswState& s, double dt) {
  check_dt(dt);
  TswState next = ssprk3_step(s, dt, [&model](const TswState& x) { return model.rhs(x); });
  model.check_positivity(next.h.coeffs);
  return next;
}

}  // namespace tsw
