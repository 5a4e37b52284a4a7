#pragma once

#include <string>
#include <vector>

#include "tsw/cases.hpp"
#include "tsw/timeint.hpp"
#include "tsw/tsw_core.hpp"

namespace tsw {

struct MeshConfig {
  int nx = 16;
  int ny = 16;
  double lx = 5.0e6;
  double ly = 5.0e6;
};

enum class SnapshotEncoding { Text, Binary };

struct OutputConfig {
  std::string directory = "output";
  int diagnostics_every = 1;
  int snapshot_every = 0;  // 0 disables snapshots
  SnapshotEncoding encoding = SnapshotEncoding::Text;
  int sample_grid = 0;  // M > 0 also writes fields sampled on an M x M lattice
};

struct ConvergenceConfig {
  std::vector<int> meshes{8, 16, 32};
  std::vector<double> dts{240.0, 120.0, 60.0};
  double final_time = 86400.0;
};

struct RunConfig {
  MeshConfig mesh;
  Formulation formulation = Formulation::Coupled;
  DiscretizationConfig discretization;
  StepConfig step;
  CaseConfig case_cfg;
  OutputConfig output;
  ConvergenceConfig convergence;
};

/// YAML document with sections mesh, discretization, solver, time, case,
/// output, convergence. Unknown keys and invalid values raise ConfigError
/// naming the field and its line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& cfg);

}  // namespace tsw
