#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsw/config.hpp"
#include "tsw/conservation.hpp"

namespace tsw {

enum ExitCode : int { ExitOk = 0, ExitConfig = 1, ExitNumerical = 2 };

struct RunResult {
  int exit_code = ExitOk;
  std::string message;
  std::string output_dir;
  std::vector<DiagnosticsRecord> records;
  std::optional<TswState> final_state;
};

/// Output directory, honouring the TSW_OUTPUT_DIR override.
std::string resolve_output_dir(const RunConfig& cfg);

/// Runs the configured case, writing manifest.yaml, diagnostics.csv and snapshots.
/// Numerical failures are reported through exit_code/message, not thrown.
RunResult run_simulation(const RunConfig& cfg, bool write_files = true);

struct ConvergenceLevel {
  int n = 0;
  double dt = 0.0;
  long steps = 0;
  double err_h = 0.0, err_u = 0.0, err_B = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceLevel> levels;
  // rates[i] between levels i and i+1; NaN when undefined (equal resolutions).
  std::vector<double> rate_h, rate_u, rate_B;
};

/// Balanced-jet L2 errors at convergence.final_time for each (mesh, dt) pair.
ConvergenceTable run_convergence_study(const RunConfig& cfg);

/// log2(e_coarse/e_fine) / log2(n_fine/n_coarse); NaN when n_fine == n_coarse.
double convergence_rate(double e_coarse, double e_fine, int n_coarse, int n_fine);

std::string format_convergence_csv(const ConvergenceTable& t);
std::string format_convergence_table(const ConvergenceTable& t);

/// L2 error of a discrete field against a function, by volume quadrature.
double l2_error(const TswModel& model, const Field& f, const ScalarFunction& exact);
double l2_error(const TswModel& model, const Field& u, const VectorFunction& exact);

}  // namespace tsw
