#pragma once

#include <ostream>
#include <string>

#include "tsw/config.hpp"
#include "tsw/conservation.hpp"
#include "tsw/fespace.hpp"

namespace tsw {

/// diagnostics.csv header, in column order.
std::string diagnostics_header();

/// One CSV row; drifts are measured against `initial`.
std::string diagnostics_row(const DiagnosticsRecord& r, const DiagnosticsRecord& initial,
                            Formulation form);

/// Snapshot of one field: text header lines then the coefficients.
///
///   tsw-snapshot 1
///   field <name>
///   space <V0|V1|V2>
///   order <k>
///   nx <nx>
///   ny <ny>
///   lx <Lx>
///   ly <Ly>
///   time <t>
///   ndof <n>
///   encoding <text|binary>
///   data
///
/// followed by n values, one per line in %.17g (text) or n little-endian
/// IEEE-754 doubles (binary).
void write_snapshot(std::ostream& os, const std::string& name, const Field& field, double time,
                    SnapshotEncoding encoding);

struct Snapshot {
  std::string name;
  Family family = Family::V2;
  int order = 0;
  int nx = 0, ny = 0;
  double lx = 0, ly = 0, time = 0;
  SnapshotEncoding encoding = SnapshotEncoding::Text;
  std::vector<double> coeffs;
};
Snapshot read_snapshot(std::istream& is);

/// Field sampled at the centres of an M x M lattice: CSV "x,y,value" or "x,y,vx,vy".
void write_sampled(std::ostream& os, const Field& field, int m);

}  // namespace tsw
