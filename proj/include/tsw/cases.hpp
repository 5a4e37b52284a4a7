#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsw/fespace.hpp"
#include "tsw/tsw_core.hpp"

namespace tsw {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double gravity = 9.80616;
inline constexpr double earth_radius = 6371220.0;
inline constexpr double earth_omega = 7.292e-5;
inline constexpr double day = 86400.0;
}  // namespace constants

enum class JetProfile { Cosine, Bickley };

struct CaseConfig {
  std::string name = "balanced_jet";
  double g = constants::gravity;
  double f0 = 2.0 * constants::earth_omega;
  double h0 = 2.94e4 / constants::gravity;
  double u0 = 2.0 * constants::pi * constants::earth_radius / (12.0 * constants::day);
  double lx = 5.0e6;
  double ly = 5.0e6;
  JetProfile profile = JetProfile::Cosine;
  double jet_width = 0.1;      // Bickley scale as a fraction of Ly
  double b_perturbation = 0.1;
  double h_perturbation = 0.01;  // fraction of h0
  std::uint64_t seed = 12345;
};

std::string to_string(JetProfile p);
JetProfile jet_profile_from_string(const std::string& name);

/// Depth profile h(y) in thermogeostrophic balance with a zonal jet U(y),
/// obtained by RK4 integration of f U = -(h b)' + (h/2) b' with the closure
/// b = g (1 + 0.05 (h0/h)^2), shooting on h(0) for mean depth h0.
class BalancedProfile {
public:
  BalancedProfile(const CaseConfig& cfg, int samples = 10000);

  double jet(double y) const;   // U(y)
  double depth(double y) const; // h(y), cubic Hermite between samples
  double buoyancy_of_depth(double h) const;

  /// |h(Ly) - h(0)| after integration: the periodicity defect of the shooting.
  double periodicity_residual() const noexcept { return periodicity_residual_; }
  double mean_residual() const noexcept { return mean_residual_; }

private:
  double slope(double y, double h) const;

  CaseConfig cfg_;
  double jet_mean_ = 0.0;
  double dy_ = 0.0;
  std::vector<double> h_, dh_;
  double periodicity_residual_ = 0.0;
  double mean_residual_ = 0.0;
};

/// Analytic fields of the balanced jet (used as the exact steady solution).
struct AnalyticFields {
  VectorFunction u;
  ScalarFunction h;
  ScalarFunction b;
};
AnalyticFields balanced_jet_fields(const CaseConfig& cfg);

TswState init_balanced_jet(const CaseConfig& cfg, const TswModel& model, Formulation form);
TswState init_shear_instability(const CaseConfig& cfg, const TswModel& model, Formulation form);
TswState init_from_functions(const CaseConfig& cfg, const TswModel& model, Formulation form,
                             const VectorFunction& u, const ScalarFunction& h,
                             const ScalarFunction& b);
/// Dispatch on cfg.name.
TswState init_case(const CaseConfig& cfg, const TswModel& model, Formulation form);

/// Reproducible smooth random state: h = h0 (1 + 0.1 r1), B = h g (1 + 0.05 r2),
/// u = u0 r3, each r a random trigonometric field in [-1, 1] projected into its space.
TswState random_state(const TswModel& model, Formulation form, const CaseConfig& cfg,
                      std::uint64_t seed);

}  // namespace tsw
