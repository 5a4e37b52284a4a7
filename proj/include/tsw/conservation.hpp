#pragma once

#include "tsw/tsw_core.hpp"

namespace tsw {

/// Conserved functionals and instantaneous production rates for one state.
struct DiagnosticsRecord {
  long step = 0;
  double time = 0.0;
  double mass = 0.0;         // int h
  double vorticity = 0.0;    // int (h q - f)
  double buoyancy = 0.0;     // int B
  double energy_m = 0.0;     // int 1/2 h u.u + 1/2 h^2 b      (b' in coupled form)
  double energy_f = 0.0;     // int 1/2 h u.u + 1/2 h B
  double entropy = 0.0;      // int 1/2 h b^2                 (b' in coupled form)
  double entropy_alt = 0.0;  // int 1/2 B^2 / h
  double energy_rate = 0.0;
  double entropy_rate = 0.0;
  double min_h = 0.0;
  double max_cfl = 0.0;

  /// The energy each formulation conserves: the average for mixed, energy_f for coupled.
  double conserved_energy(Formulation form) const {
    return form == Formulation::Mixed ? 0.5 * (energy_m + energy_f) : energy_f;
  }
};

/// Energy and entropy production of the spatial scheme, pair(grad H, RHS) and
/// pair(grad S, RHS). The *_scale members hold the sum of magnitudes of the
/// individual pairing terms, a natural yardstick for "zero".
struct ProductionRates {
  double energy_rate = 0.0;
  double entropy_rate = 0.0;
  double energy_scale = 0.0;
  double entropy_scale = 0.0;
};

ProductionRates production_residuals(const TswModel& model, const TswState& s);

/// Same, reusing an already evaluated tendency and its intermediate terms.
ProductionRates production_residuals(const TswModel& model, const TswState& s, const Tendency& t,
                                     const RhsTerms& terms);

/// dt * max|u| / dx over quadrature points, with dx the mean nodal spacing.
double max_cfl(const TswModel& model, const TswState& s, double dt);

DiagnosticsRecord evaluate_diagnostics(const TswModel& model, const TswState& s, long step = 0,
                                       double time = 0.0, double dt = 0.0);

}  // namespace tsw
