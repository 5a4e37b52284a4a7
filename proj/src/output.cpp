#include "tsw/output.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <stdexcept>

namespace tsw {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double rel(double v, double v0) { return v0 != 0.0 ? (v - v0) / std::abs(v0) : v - v0; }

}  // namespace

std::string diagnostics_header() {
  return "step,time,mass_err_abs,mass_err_rel,vort_err_abs,buoy_err_abs,buoy_err_rel,energy_m,"
         "energy_f,energy_err_rel,entropy,entropy_alt,entropy_err_rel,energy_rate,entropy_rate,"
         "min_h,max_cfl";
}

std::string diagnostics_row(const DiagnosticsRecord& r, const DiagnosticsRecord& initial,
                            Formulation form) {
  const double values[] = {r.time,
                           r.mass - initial.mass,
                           rel(r.mass, initial.mass),
                           r.vorticity - initial.vorticity,
                           r.buoyancy - initial.buoyancy,
                           rel(r.buoyancy, initial.buoyancy),
                           r.energy_m,
                           r.energy_f,
                           rel(r.conserved_energy(form), initial.conserved_energy(form)),
                           r.entropy,
                           r.entropy_alt,
                           rel(r.entropy, initial.entropy),
                           r.energy_rate,
                           r.entropy_rate,
                           r.min_h,
                           r.max_cfl};
  std::string row = std::to_string(r.step);
  for (double v : values) row += "," + num(v);
  return row;
}

void write_snapshot(std::ostream& os, const std::string& name, const Field& field, double time,
                    SnapshotEncoding encoding) {
  if (!field.space) throw std::invalid_argument("write_snapshot: unbound field");
  const FunctionSpace& s = *field.space;
  const Mesh& m = s.mesh();
  os << "tsw-snapshot 1\n"
     << "field " << name << '\n'
     << "space " << to_string(s.family()) << '\n'
     << "order " << s.order() << '\n'
     << "nx " << m.nx() << '\n'
     << "ny " << m.ny() << '\n'
     << "lx " << num(m.lx()) << '\n'
     << "ly " << num(m.ly()) << '\n'
     << "time " << num(time) << '\n'
     << "ndof " << field.coeffs.size() << '\n'
     << "encoding " << (encoding == SnapshotEncoding::Text ? "text" : "binary") << '\n'
     << "data\n";
  if (encoding == SnapshotEncoding::Text) {
    for (double v : field.coeffs) os << num(v) << '\n';
    return;
  }
  for (double v : field.coeffs) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
    os.write(reinterpret_cast<const char*>(bytes), 8);
  }
}

Snapshot read_snapshot(std::istream& is) {
  Snapshot s;
  std::string key, value;
  std::size_t ndof = 0;
  is >> key >> value;
  if (key != "tsw-snapshot" || value != "1") throw std::runtime_error("read_snapshot: bad magic");
  while (is >> key) {
    if (key == "data") break;
    if (!(is >> value)) throw std::runtime_error("read_snapshot: truncated header");
    if (key == "field") s.name = value;
    else if (key == "space") s.family = family_from_string(value);
    else if (key == "order") s.order = std::stoi(value);
    else if (key == "nx") s.nx = std::stoi(value);
    else if (key == "ny") s.ny = std::stoi(value);
    else if (key == "lx") s.lx = std::stod(value);
    else if (key == "ly") s.ly = std::stod(value);
    else if (key == "time") s.time = std::stod(value);
    else if (key == "ndof") ndof = std::stoul(value);
    else if (key == "encoding") s.encoding = value == "binary" ? SnapshotEncoding::Binary : SnapshotEncoding::Text;
    else throw std::runtime_error("read_snapshot: unknown header key '" + key + "'");
  }
  if (key != "data") throw std::runtime_error("read_snapshot: missing data section");
  is.get();  // newline after "data"
  s.coeffs.resize(ndof);
  if (s.encoding == SnapshotEncoding::Text) {
    for (double& v : s.coeffs)
      if (!(is >> value)) throw std::runtime_error("read_snapshot: truncated data");
      else v = std::stod(value);
  } else {
    for (double& v : s.coeffs) {
      unsigned char bytes[8];
      if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("read_snapshot: truncated data");
      std::uint64_t bits = 0;
      for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
      std::memcpy(&v, &bits, sizeof v);
    }
  }
  return s;
}

void write_sampled(std::ostream& os, const Field& field, int m) {
  if (m < 1) throw std::invalid_argument("write_sampled: lattice size must be >= 1");
  const Mesh& mesh = field.space->mesh();
  const bool vec = field.space->family() == Family::V1;
  os << (vec ? "x,y,vx,vy\n" : "x,y,value\n");
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const Point2 x{(i + 0.5) * mesh.lx() / m, (j + 0.5) * mesh.ly() / m};
      os << num(x[0]) << ',' << num(x[1]);
      if (vec) {
        const Point2 v = field.vector_at(x);
        os << ',' << num(v[0]) << ',' << num(v[1]) << '\n';
      } else {
        os << ',' << num(field.value_at(x)) << '\n';
      }
    }
}

}  // namespace tsw
