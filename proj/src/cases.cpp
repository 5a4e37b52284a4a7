#include "tsw/cases.hpp"

#include <cmath>
#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

namespace tsw {

std::string to_string(JetProfile p) { return p == JetProfile::Cosine ? "cosine" : "bickley"; }

JetProfile jet_profile_from_string(const std::string& name) {
  if (name == "cosine") return JetProfile::Cosine;
  if (name == "bickley") return JetProfile::Bickley;
  throw std::invalid_argument("unknown jet profile '" + name + "'");
}

namespace {

void validate(const CaseConfig& cfg) {
  if (!(cfg.g > 0.0)) throw std::invalid_argument("case: g must be positive");
  if (!(cfg.h0 > 0.0)) throw std::invalid_argument("case: h0 must be positive");
  if (!(cfg.lx > 0.0) || !(cfg.ly > 0.0)) throw std::invalid_argument("case: domain must be positive");
  if (!(cfg.jet_width > 0.0)) throw std::invalid_argument("case: jet_width must be positive");
}

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

}  // namespace

BalancedProfile::BalancedProfile(const CaseConfig& cfg, int samples) : cfg_(cfg) {
  validate(cfg);
  if (samples < 16) throw std::invalid_argument("BalancedProfile: too few samples");
  dy_ = cfg.ly / samples;
  if (cfg.profile == JetProfile::Bickley) {
    // The mean of sech^2 over the period, so the jet carries no net zonal momentum.
    const double d = cfg.jet_width * cfg.ly;
    jet_mean_ = 2.0 * d * std::tanh(0.5 * cfg.ly / d) / cfg.ly;
  }

  auto integrate = [&](double h_start, std::vector<double>& h) {
    h.assign(samples + 1, 0.0);
    h[0] = h_start;
    for (int i = 0; i < samples; ++i) {
      const double y = i * dy_;
      const double k1 = slope(y, h[i]);
      const double k2 = slope(y + 0.5 * dy_, h[i] + 0.5 * dy_ * k1);
      const double k3 = slope(y + 0.5 * dy_, h[i] + 0.5 * dy_ * k2);
      const double k4 = slope(y + dy_, h[i] + dy_ * k3);
      h[i + 1] = h[i] + dy_ * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      if (!std::isfinite(h[i + 1]) || h[i + 1] <= 0.0)
        throw std::runtime_error("balanced profile: depth integration failed at y = " +
                                 std::to_string(y));
    }
    // Trapezoidal mean over one period.
    double s = 0.5 * (h[0] + h[samples]);
    for (int i = 1; i < samples; ++i) s += h[i];
    return s / samples - cfg.h0;
  };

  // Secant iteration on h(0) so the mean depth is h0.
  double x0 = cfg.h0, x1 = cfg.h0 * 1.01;
  double r0 = integrate(x0, h_), r1 = integrate(x1, h_);
  for (int it = 0; it < 50 && std::abs(r1) > 1e-12 * cfg.h0; ++it) {
    if (r1 == r0) break;
    const double x2 = x1 - r1 * (x1 - x0) / (r1 - r0);
    x0 = x1;
    r0 = r1;
    x1 = x2;
    r1 = integrate(x1, h_);
  }
  mean_residual_ = std::abs(r1);
  if (mean_residual_ > 1e-8 * cfg.h0)
    throw std::runtime_error("balanced profile: shooting for the mean depth did not converge (residual " +
                             std::to_string(mean_residual_) + ")");
  periodicity_residual_ = std::abs(h_[samples] - h_[0]);
  dh_.resize(h_.size());
  for (int i = 0; i <= samples; ++i) dh_[i] = slope(i * dy_, h_[i]);
}

double BalancedProfile::jet(double y) const {
  if (cfg_.profile == JetProfile::Cosine) return cfg_.u0 * std::cos(2.0 * constants::pi * y / cfg_.ly);
  const double d = cfg_.jet_width * cfg_.ly;
  const double yw = y - cfg_.ly * std::floor(y / cfg_.ly);
  return cfg_.u0 * (sech2((yw - 0.5 * cfg_.ly) / d) - jet_mean_);
}

double BalancedProfile::buoyancy_of_depth(double h) const {
  const double r = cfg_.h0 / h;
  return cfg_.g * (1.0 + 0.05 * r * r);
}

// From f U = -(h b)' + (h/2) b' with b = b(h): h' = -f U / (b + (h/2) db/dh).
double BalancedProfile::slope(double y, double h) const {
  const double r = cfg_.h0 / h;
  const double db_dh = -0.1 * cfg_.g * r * r / h;
  return -cfg_.f0 * jet(y) / (buoyancy_of_depth(h) + 0.5 * h * db_dh);
}

double BalancedProfile::depth(double y) const {
  const int n = static_cast<int>(h_.size()) - 1;
  double yw = y - cfg_.ly * std::floor(y / cfg_.ly);
  double s = yw / dy_;
  int i = static_cast<int>(s);
  if (i >= n) i = n - 1;
  if (i < 0) i = 0;
  const double t = s - i;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * h_[i] + h10 * dy_ * dh_[i] + h01 * h_[i + 1] + h11 * dy_ * dh_[i + 1];
}

AnalyticFields balanced_jet_fields(const CaseConfig& cfg) {
  auto prof = std::make_shared<BalancedProfile>(cfg);
  AnalyticFields a;
  a.u = [prof](Point2 x) { return Point2{prof->jet(x[1]), 0.0}; };
  a.h = [prof](Point2 x) { return prof->depth(x[1]); };
  a.b = [prof](Point2 x) { return prof->buoyancy_of_depth(prof->depth(x[1])); };
  return a;
}

TswState init_from_functions(const CaseConfig& cfg, const TswModel& model, Formulation form,
                             const VectorFunction& u, const ScalarFunction& h,
                             const ScalarFunction& b) {
  TswState s = model.make_state(form);
  s.u = model.project(u);
  s.h = model.project(Family::V2, h);
  if (form == Formulation::Mixed) s.b = model.project(Family::V2, b);
  s.B = model.project(Family::V2, [&](Point2 x) { return h(x) * b(x); });
  std::fill(s.f.coeffs.begin(), s.f.coeffs.end(), cfg.f0);
  model.check_positivity(s.h.coeffs);
  return s;
}

TswState init_balanced_jet(const CaseConfig& cfg, const TswModel& model, Formulation form) {
  const AnalyticFields a = balanced_jet_fields(cfg);
  return init_from_functions(cfg, model, form, a.u, a.h, a.b);
}

TswState init_shear_instability(const CaseConfig& cfg, const TswModel& model, Formulation form) {
  CaseConfig c = cfg;
  c.profile = JetProfile::Bickley;
  const AnalyticFields a = balanced_jet_fields(c);
  const double xc = 0.5 * c.lx, yc = 0.5 * c.ly, sx = c.lx / 20.0, sy = c.ly / 20.0;
  auto bump = [=](Point2 x) {
    const double ex = (x[0] - xc) / sx, ey = (x[1] - yc) / sy;
    return std::exp(-ex * ex - ey * ey);
  };
  const double ab = c.b_perturbation, ah = c.h_perturbation * c.h0;
  auto h = [=](Point2 x) { return a.h(x) + ah * bump(x); };
  auto b = [=](Point2 x) { return a.b(x) * (1.0 - ab * bump(x)); };
  return init_from_functions(c, model, form, a.u, h, b);
}

TswState init_case(const CaseConfig& cfg, const TswModel& model, Formulation form) {
  if (cfg.name == "balanced_jet") return init_balanced_jet(cfg, model, form);
  if (cfg.name == "shear_instability") return init_shear_instability(cfg, model, form);
  if (cfg.name == "random") return random_state(model, form, cfg, cfg.seed);
  throw std::invalid_argument("unknown case '" + cfg.name + "'");
}

namespace {

// Smooth periodic field with |r| <= 1: a few random Fourier modes normalised by their amplitude sum.
ScalarFunction random_field(std::mt19937_64& rng, double lx, double ly) {
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * constants::pi);
  std::uniform_int_distribution<int> wave(0, 3);
  struct Mode {
    int kx, ky;
    double a, phi;
  };
  std::vector<Mode> modes(6);
  double total = 0.0;
  for (Mode& m : modes) {
    m.kx = wave(rng);
    m.ky = wave(rng);
    m.a = amp(rng);
    m.phi = phase(rng);
    total += std::abs(m.a);
  }
  for (Mode& m : modes) m.a /= total;
  return [modes, lx, ly](Point2 x) {
    double s = 0.0;
    for (const Mode& m : modes)
      s += m.a * std::cos(2.0 * constants::pi * (m.kx * x[0] / lx + m.ky * x[1] / ly) + m.phi);
    return s;
  };
}

}  // namespace

TswState random_state(const TswModel& model, Formulation form, const CaseConfig& cfg,
                      std::uint64_t seed) {
  validate(cfg);
  std::mt19937_64 rng(seed);
  const double lx = model.mesh().lx(), ly = model.mesh().ly();
  const ScalarFunction r1 = random_field(rng, lx, ly);
  const ScalarFunction r2 = random_field(rng, lx, ly);
  const ScalarFunction r3x = random_field(rng, lx, ly);
  const ScalarFunction r3y = random_field(rng, lx, ly);
  const double h0 = cfg.h0, g = cfg.g, u0 = cfg.u0;
  auto h = [=](Point2 x) { return h0 * (1.0 + 0.1 * r1(x)); };
  auto b = [=](Point2 x) { return g * (1.0 + 0.05 * r2(x)); };
  auto u = [=](Point2 x) { return Point2{u0 * r3x(x), u0 * r3y(x)}; };
  return init_from_functions(cfg, model, form, u, h, b);
}

}  // namespace tsw
