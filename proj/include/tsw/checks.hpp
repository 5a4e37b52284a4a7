#pragma once

#include <string>
#include <vector>

namespace tsw {

struct IdentityCheck {
  std::string name;
  double value = 0.0;      // measured residual
  double tolerance = 0.0;  // pass when value <= tolerance
  bool passed() const { return value <= tolerance; }
};

/// Operator identities and spatial conservation residuals on an n x n mesh of the
/// given order, evaluated on a seeded random state.
std::vector<IdentityCheck> run_identity_checks(int n = 4, int order = 2, unsigned long seed = 1);

}  // namespace tsw
