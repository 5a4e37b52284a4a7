#include "tsw/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "tsw/errors.hpp"

namespace tsw {

namespace {

int line_of(const YAML::Node& n) { return n.Mark().line >= 0 ? n.Mark().line + 1 : 0; }

void check_keys(const YAML::Node& section, const std::string& prefix,
                const std::set<std::string>& allowed) {
  if (!section.IsMap()) throw ConfigError(prefix, line_of(section), "expected a mapping");
  for (const auto& kv : section) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key))
      throw ConfigError(prefix.empty() ? key : prefix + "." + key, line_of(kv.first), "unknown key");
  }
}

template <class T>
void read(const YAML::Node& section, const std::string& prefix, const char* key, T& out) {
  const YAML::Node n = section[key];
  if (!n) return;
  const std::string field = prefix + "." + key;
  try {
    out = n.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, line_of(n), "cannot convert '" + (n.IsScalar() ? n.Scalar() : std::string("<node>")) + "'");
  }
}

template <class Enum, class Parse>
void read_enum(const YAML::Node& section, const std::string& prefix, const char* key, Enum& out,
               Parse parse) {
  const YAML::Node n = section[key];
  if (!n) return;
  const std::string field = prefix.empty() ? std::string(key) : prefix + "." + key;
  try {
    out = parse(n.as<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(field, line_of(n), e.what());
  }
}

void require(bool ok, const YAML::Node& root, const std::string& field, const std::string& msg) {
  if (ok) return;
  // Locate the offending node for a line number when possible.
  YAML::Node n = root;
  std::stringstream ss(field);
  std::string part;
  int line = 0;
  while (std::getline(ss, part, '.')) {
    if (!n.IsMap() || !n[part]) break;
    n = n[part];
    line = line_of(n);
  }
  throw ConfigError(field, line, msg);
}

SnapshotEncoding encoding_from_string(const std::string& s) {
  if (s == "text") return SnapshotEncoding::Text;
  if (s == "binary") return SnapshotEncoding::Binary;
  throw std::invalid_argument("unknown snapshot encoding '" + s + "'");
}

RunConfig parse_node(const YAML::Node& root) {
  RunConfig c;
  if (!root || root.IsNull()) return c;
  check_keys(root, "", {"mesh", "formulation", "discretization", "solver", "time", "case", "output",
                        "convergence"});
  read_enum(root, "", "formulation", c.formulation,
            [](const std::string& s) { return formulation_from_string(s); });

  if (const YAML::Node m = root["mesh"]) {
    check_keys(m, "mesh", {"nx", "ny", "lx", "ly"});
    read(m, "mesh", "nx", c.mesh.nx);
    read(m, "mesh", "ny", c.mesh.ny);
    read(m, "mesh", "lx", c.mesh.lx);
    read(m, "mesh", "ly", c.mesh.ly);
  }
  auto& d = c.discretization;
  if (const YAML::Node n = root["discretization"]) {
    check_keys(n, "discretization",
               {"order", "quad_points", "mass_inverse", "weighted_preconditioner", "positivity_floor"});
    read(n, "discretization", "order", d.order);
    read(n, "discretization", "quad_points", d.quad_points);
    read_enum(n, "discretization", "mass_inverse", d.mass_inverse,
              [](const std::string& s) { return mass_inverse_from_string(s); });
    read_enum(n, "discretization", "weighted_preconditioner", d.weighted_preconditioner,
              [](const std::string& s) { return preconditioner_from_string(s); });
    read(n, "discretization", "positivity_floor", d.positivity_floor);
  }
  if (const YAML::Node n = root["solver"]) {
    check_keys(n, "solver", {"rtol", "max_iter", "preconditioner"});
    read(n, "solver", "rtol", d.solver.rtol);
    read(n, "solver", "max_iter", d.solver.max_iter);
    read_enum(n, "solver", "preconditioner", d.solver.preconditioner,
              [](const std::string& s) { return preconditioner_from_string(s); });
  }
  if (const YAML::Node n = root["time"]) {
    check_keys(n, "time", {"dt", "nsteps"});
    read(n, "time", "dt", c.step.dt);
    read(n, "time", "nsteps", c.step.nsteps);
  }
  auto& k = c.case_cfg;
  if (const YAML::Node n = root["case"]) {
    check_keys(n, "case", {"name", "g", "f0", "h0", "u0", "profile", "jet_width", "b_perturbation",
                           "h_perturbation", "seed"});
    read(n, "case", "name", k.name);
    read(n, "case", "g", k.g);
    read(n, "case", "f0", k.f0);
    read(n, "case", "h0", k.h0);
    read(n, "case", "u0", k.u0);
    read_enum(n, "case", "profile", k.profile, [](const std::string& s) { return jet_profile_from_string(s); });
    read(n, "case", "jet_width", k.jet_width);
    read(n, "case", "b_perturbation", k.b_perturbation);
    read(n, "case", "h_perturbation", k.h_perturbation);
    read(n, "case", "seed", k.seed);
  }
  auto& o = c.output;
  if (const YAML::Node n = root["output"]) {
    check_keys(n, "output", {"directory", "diagnostics_every", "snapshot_every", "encoding", "sample_grid"});
    read(n, "output", "directory", o.directory);
    read(n, "output", "diagnostics_every", o.diagnostics_every);
    read(n, "output", "snapshot_every", o.snapshot_every);
    read_enum(n, "output", "encoding", o.encoding, encoding_from_string);
    read(n, "output", "sample_grid", o.sample_grid);
  }
  auto& v = c.convergence;
  if (const YAML::Node n = root["convergence"]) {
    check_keys(n, "convergence", {"meshes", "dts", "final_time"});
    read(n, "convergence", "meshes", v.meshes);
    read(n, "convergence", "dts", v.dts);
    read(n, "convergence", "final_time", v.final_time);
  }
  k.lx = c.mesh.lx;
  k.ly = c.mesh.ly;

  require(c.mesh.nx >= 1, root, "mesh.nx", "must be >= 1");
  require(c.mesh.ny >= 1, root, "mesh.ny", "must be >= 1");
  require(c.mesh.lx > 0, root, "mesh.lx", "must be positive");
  require(c.mesh.ly > 0, root, "mesh.ly", "must be positive");
  require(d.order >= 0 && d.order <= 4, root, "discretization.order", "must be in [0, 4]");
  require(d.quad_points == 0 || d.quad_points >= 2, root, "discretization.quad_points",
          "must be 0 (default) or >= 2");
  require(d.positivity_floor >= 0, root, "discretization.positivity_floor", "must be >= 0");
  require(d.solver.rtol > 0, root, "solver.rtol", "must be positive");
  require(d.solver.max_iter >= 0, root, "solver.max_iter", "must be >= 0");
  require(c.step.dt > 0, root, "time.dt", "must be positive");
  require(c.step.nsteps >= 0, root, "time.nsteps", "must be >= 0");
  require(k.g > 0, root, "case.g", "must be positive");
  require(k.h0 > 0, root, "case.h0", "must be positive");
  require(k.jet_width > 0, root, "case.jet_width", "must be positive");
  require(k.name == "balanced_jet" || k.name == "shear_instability" || k.name == "random", root,
          "case.name", "unknown case '" + k.name + "' (balanced_jet, shear_instability, random)");
  require(o.diagnostics_every >= 1, root, "output.diagnostics_every", "must be >= 1");
  require(o.snapshot_every >= 0, root, "output.snapshot_every", "must be >= 0 (0 disables)");
  require(o.sample_grid >= 0, root, "output.sample_grid", "must be >= 0");
  require(!o.directory.empty(), root, "output.directory", "must not be empty");
  require(v.meshes.size() == v.dts.size(), root, "convergence.dts", "must have one entry per mesh");
  require(v.meshes.size() >= 2, root, "convergence.meshes", "needs at least two levels");
  for (int n : v.meshes) require(n >= 1, root, "convergence.meshes", "entries must be >= 1");
  for (double t : v.dts) require(t > 0, root, "convergence.dts", "entries must be positive");
  require(v.final_time > 0, root, "convergence.final_time", "must be positive");
  return c;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<document>", e.mark.line >= 0 ? e.mark.line + 1 : 0, e.msg);
  }
  return parse_node(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("<file>", 0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "formulation" << YAML::Value << std::string(to_string(c.formulation));
  e << YAML::Key << "mesh" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "nx" << YAML::Value << c.mesh.nx << YAML::Key << "ny" << YAML::Value << c.mesh.ny;
  e << YAML::Key << "lx" << YAML::Value << c.mesh.lx << YAML::Key << "ly" << YAML::Value << c.mesh.ly;
  e << YAML::EndMap;
  const auto& d = c.discretization;
  e << YAML::Key << "discretization" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "order" << YAML::Value << d.order;
  e << YAML::Key << "quad_points" << YAML::Value << d.quad_points;
  e << YAML::Key << "mass_inverse" << YAML::Value << std::string(to_string(d.mass_inverse));
  e << YAML::Key << "weighted_preconditioner" << YAML::Value
    << std::string(to_string(d.weighted_preconditioner));
  e << YAML::Key << "positivity_floor" << YAML::Value << d.positivity_floor;
  e << YAML::EndMap;
  e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "rtol" << YAML::Value << d.solver.rtol;
  e << YAML::Key << "max_iter" << YAML::Value << d.solver.max_iter;
  e << YAML::Key << "preconditioner" << YAML::Value << std::string(to_string(d.solver.preconditioner));
  e << YAML::EndMap;
  e << YAML::Key << "time" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "dt" << YAML::Value << c.step.dt;
  e << YAML::Key << "nsteps" << YAML::Value << c.step.nsteps;
  e << YAML::EndMap;
  const auto& k = c.case_cfg;
  e << YAML::Key << "case" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << k.name;
  e << YAML::Key << "g" << YAML::Value << k.g;
  e << YAML::Key << "f0" << YAML::Value << k.f0;
  e << YAML::Key << "h0" << YAML::Value << k.h0;
  e << YAML::Key << "u0" << YAML::Value << k.u0;
  e << YAML::Key << "profile" << YAML::Value << to_string(k.profile);
  e << YAML::Key << "jet_width" << YAML::Value << k.jet_width;
  e << YAML::Key << "b_perturbation" << YAML::Value << k.b_perturbation;
  e << YAML::Key << "h_perturbation" << YAML::Value << k.h_perturbation;
  e << YAML::Key << "seed" << YAML::Value << k.seed;
  e << YAML::EndMap;
  const auto& o = c.output;
  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "directory" << YAML::Value << o.directory;
  e << YAML::Key << "diagnostics_every" << YAML::Value << o.diagnostics_every;
  e << YAML::Key << "snapshot_every" << YAML::Value << o.snapshot_every;
  e << YAML::Key << "encoding" << YAML::Value
    << std::string(o.encoding == SnapshotEncoding::Text ? "text" : "binary");
  e << YAML::Key << "sample_grid" << YAML::Value << o.sample_grid;
  e << YAML::EndMap;
  const auto& v = c.convergence;
  e << YAML::Key << "convergence" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "meshes" << YAML::Value << YAML::Flow << v.meshes;
  e << YAML::Key << "dts" << YAML::Value << YAML::Flow << v.dts;
  e << YAML::Key << "final_time" << YAML::Value << v.final_time;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace tsw
