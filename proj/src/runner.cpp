#include "tsw/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include "tsw/errors.hpp"
#include "tsw/output.hpp"
#include "tsw/simd/kernels.hpp"

namespace tsw {

namespace fs = std::filesystem;

std::string resolve_output_dir(const RunConfig& cfg) {
  const char* env = std::getenv("TSW_OUTPUT_DIR");
  if (env && *env) return env;
  return cfg.output.directory;
}

namespace {

bool finite(const DiagnosticsRecord& r) {
  for (double v : {r.mass, r.vorticity, r.buoyancy, r.energy_m, r.energy_f, r.entropy,
                   r.entropy_alt, r.energy_rate, r.entropy_rate, r.min_h, r.max_cfl})
    if (!std::isfinite(v)) return false;
  return true;
}

std::string step_tag(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06ld", step);
  return buf;
}

void write_snapshots(const fs::path& dir, const RunConfig& cfg, const TswState& s, long step,
                     double time) {
  const bool bin = cfg.output.encoding == SnapshotEncoding::Binary;
  const std::pair<const char*, const Field*> fields[] = {
      {"u", &s.u}, {"h", &s.h}, {"b", &s.b}, {"B", &s.B}};
  for (auto [name, f] : fields) {
    if (!f->space) continue;
    const std::string base = std::string(name) + "_" + step_tag(step);
    std::ofstream os(dir / (base + (bin ? ".bin" : ".txt")), std::ios::binary);
    write_snapshot(os, name, *f, time, cfg.output.encoding);
    if (cfg.output.sample_grid > 0) {
      std::ofstream cs(dir / (base + ".csv"));
      write_sampled(cs, *f, cfg.output.sample_grid);
    }
  }
}

}  // namespace

RunResult run_simulation(const RunConfig& cfg, bool write_files) {
  RunResult res;
  res.output_dir = resolve_output_dir(cfg);
  std::unique_ptr<TswModel> model;
  TswState state;
  try {
    const Mesh mesh(cfg.mesh.nx, cfg.mesh.ny, cfg.mesh.lx, cfg.mesh.ly);
    model = std::make_unique<TswModel>(mesh, cfg.discretization);
  } catch (const std::invalid_argument& e) {
    res.exit_code = ExitConfig;
    res.message = std::string("config error: ") + e.what();
    return res;
  }
  std::ofstream csv;
  fs::path dir(res.output_dir);
  long step = 0;
  try {
    CaseConfig cc = cfg.case_cfg;
    cc.lx = cfg.mesh.lx;
    cc.ly = cfg.mesh.ly;
    state = init_case(cc, *model, cfg.formulation);

    if (write_files) {
      fs::create_directories(dir);
      if (cfg.output.snapshot_every > 0) fs::create_directories(dir / "snapshots");
      RunConfig resolved = cfg;
      resolved.output.directory = res.output_dir;
      std::ofstream man(dir / "manifest.yaml");
      man << "# tsw run manifest\n"
          << "version: " << TSW_VERSION << "\n"
          << "simd: " << simd::kernels().name << "\n"
          << emit_config(resolved);
      csv.open(dir / "diagnostics.csv");
      csv << diagnostics_header() << '\n';
    }

    const double dt = cfg.step.dt;
    DiagnosticsRecord initial = evaluate_diagnostics(*model, state, 0, 0.0, dt);
    if (initial.max_cfl > 0.5)
      std::cerr << "warning: CFL number " << initial.max_cfl << " exceeds 0.5\n";
    auto record = [&](const DiagnosticsRecord& r) {
      if (!finite(r)) throw SolverError("non-finite diagnostics", std::nan(""), 0);
      res.records.push_back(r);
      if (csv.is_open()) csv << diagnostics_row(r, initial, cfg.formulation) << '\n';
    };
    record(initial);
    if (write_files && cfg.output.snapshot_every > 0) write_snapshots(dir / "snapshots", cfg, state, 0, 0.0);

    for (step = 1; step <= cfg.step.nsteps; ++step) {
      state = ssprk3_step(*model, state, dt);
      const double t = step * dt;
      if (step % cfg.output.diagnostics_every == 0 || step == cfg.step.nsteps)
        record(evaluate_diagnostics(*model, state, step, t, dt));
      if (write_files && cfg.output.snapshot_every > 0 && step % cfg.output.snapshot_every == 0)
        write_snapshots(dir / "snapshots", cfg, state, step, t);
    }
    res.final_state = state;
    res.message = "completed " + std::to_string(cfg.step.nsteps) + " steps";
  } catch (const ConfigError& e) {
    res.exit_code = ExitConfig;
    res.message = e.what();
  } catch (const PositivityError& e) {
    res.exit_code = ExitNumerical;
    res.message = "numerical failure at step " + std::to_string(step) + ": " + e.what();
  } catch (const SolverError& e) {
    res.exit_code = ExitNumerical;
    std::ostringstream ss;
    ss << "numerical failure at step " << step << ": " << e.what() << " (residual " << e.residual()
       << " after " << e.iterations() << " iterations)";
    res.message = ss.str();
  } catch (const std::invalid_argument& e) {
    res.exit_code = ExitConfig;
    res.message = std::string("config error: ") + e.what();
  } catch (const std::exception& e) {
    res.exit_code = ExitNumerical;
    res.message = "failure at step " + std::to_string(step) + ": " + e.what();
  }
  return res;
}

double l2_error(const TswModel& model, const Field& f, const ScalarFunction& exact) {
  const Assembler& a = model.assembler();
  const auto v = a.values(f.space->family(), f.coeffs);
  const Mesh& m = model.mesh();
  const int nq = a.nq();
  std::vector<double> e(v.size());
  for (int c = 0; c < m.num_cells(); ++c)
    for (int q = 0; q < nq; ++q) {
      const double d = v[c * nq + q] - exact(m.map_to_physical(c, a.rule().points[q]));
      e[c * nq + q] = d * d;
    }
  return std::sqrt(a.integrate(e));
}

double l2_error(const TswModel& model, const Field& u, const VectorFunction& exact) {
  const Assembler& a = model.assembler();
  const auto vx = a.values_x(u.coeffs), vy = a.values_y(u.coeffs);
  const Mesh& m = model.mesh();
  const int nq = a.nq();
  std::vector<double> e(vx.size());
  for (int c = 0; c < m.num_cells(); ++c)
    for (int q = 0; q < nq; ++q) {
      const Point2 w = exact(m.map_to_physical(c, a.rule().points[q]));
      const double dx = vx[c * nq + q] - w[0], dy = vy[c * nq + q] - w[1];
      e[c * nq + q] = dx * dx + dy * dy;
    }
  return std::sqrt(a.integrate(e));
}

double convergence_rate(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  if (n_fine == n_coarse || !(e_fine > 0.0) || !(e_coarse > 0.0))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log2(e_coarse / e_fine) / std::log2(static_cast<double>(n_fine) / n_coarse);
}

ConvergenceTable run_convergence_study(const RunConfig& cfg) {
  const auto& cc = cfg.convergence;
  if (cc.meshes.size() != cc.dts.size() || cc.meshes.size() < 2)
    throw ConfigError("convergence", 0, "meshes and dts must have the same length >= 2");
  CaseConfig kc = cfg.case_cfg;
  kc.lx = cfg.mesh.lx;
  kc.ly = cfg.mesh.ly;
  const AnalyticFields exact = balanced_jet_fields(kc);
  auto exact_B = [&](Point2 x) { return exact.h(x) * exact.b(x); };

  ConvergenceTable t;
  for (std::size_t i = 0; i < cc.meshes.size(); ++i) {
    ConvergenceLevel lv;
    lv.n = cc.meshes[i];
    lv.dt = cc.dts[i];
    lv.steps = std::lround(cc.final_time / lv.dt);
    if (std::abs(lv.steps * lv.dt - cc.final_time) > 1e-9 * cc.final_time)
      throw ConfigError("convergence.dts", 0, "final_time must be a whole number of steps");
    const TswModel model(Mesh(lv.n, lv.n, cfg.mesh.lx, cfg.mesh.ly), cfg.discretization);
    TswState s = init_balanced_jet(kc, model, cfg.formulation);
    for (long k = 0; k < lv.steps; ++k) s = ssprk3_step(model, s, lv.dt);
    lv.err_h = l2_error(model, s.h, exact.h);
    lv.err_u = l2_error(model, s.u, exact.u);
    lv.err_B = l2_error(model, s.B, ScalarFunction(exact_B));
    t.levels.push_back(lv);
  }
  for (std::size_t i = 0; i + 1 < t.levels.size(); ++i) {
    const auto& a = t.levels[i];
    const auto& b = t.levels[i + 1];
    t.rate_h.push_back(convergence_rate(a.err_h, b.err_h, a.n, b.n));
    t.rate_u.push_back(convergence_rate(a.err_u, b.err_u, a.n, b.n));
    t.rate_B.push_back(convergence_rate(a.err_B, b.err_B, a.n, b.n));
  }
  return t;
}

namespace {

std::string fmt_num(double v, const char* spec = "%.17g") {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string format_convergence_csv(const ConvergenceTable& t) {
  std::string s = "n,dt,steps,err_h,err_u,err_B,rate_h,rate_u,rate_B\n";
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    const auto& l = t.levels[i];
    s += std::to_string(l.n) + "," + fmt_num(l.dt) + "," + std::to_string(l.steps) + "," +
         fmt_num(l.err_h) + "," + fmt_num(l.err_u) + "," + fmt_num(l.err_B);
    if (i == 0)
      s += ",,,";
    else
      s += "," + fmt_num(t.rate_h[i - 1]) + "," + fmt_num(t.rate_u[i - 1]) + "," + fmt_num(t.rate_B[i - 1]);
    s += "\n";
  }
  return s;
}

std::string format_convergence_table(const ConvergenceTable& t) {
  std::string s = "   n        dt  steps       err_h       err_u       err_B  rate_h  rate_u  rate_B\n";
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    const auto& l = t.levels[i];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%4d %9.3g %6ld %11.4e %11.4e %11.4e", l.n, l.dt, l.steps, l.err_h,
                  l.err_u, l.err_B);
    s += buf;
    if (i == 0) {
      s += "       -       -       -\n";
    } else {
      s += "  " + fmt_num(t.rate_h[i - 1], "%6.3f") + "  " + fmt_num(t.rate_u[i - 1], "%6.3f") +
           "  " + fmt_num(t.rate_B[i - 1], "%6.3f") + "\n";
    }
  }
  return s;
}

}  // namespace tsw
