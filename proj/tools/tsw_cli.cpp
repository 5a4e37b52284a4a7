#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tsw/checks.hpp"
#include "tsw/errors.hpp"
#include "tsw/runner.hpp"
#include "tsw/simd/kernels.hpp"

namespace {

int load(const std::string& path, tsw::RunConfig& cfg) {
  try {
    cfg = tsw::load_config(path);
    return tsw::ExitOk;
  } catch (const tsw::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return tsw::ExitConfig;
  }
}

int cmd_run(const std::string& path) {
  tsw::RunConfig cfg;
  if (int rc = load(path, cfg)) return rc;
  const tsw::RunResult r = tsw::run_simulation(cfg);
  if (r.exit_code != tsw::ExitOk) {
    std::cerr << r.message << '\n';
    return r.exit_code;
  }
  std::cout << r.message << "; output in " << r.output_dir << '\n';
  return tsw::ExitOk;
}

int cmd_converge(const std::string& path) {
  tsw::RunConfig cfg;
  if (int rc = load(path, cfg)) return rc;
  try {
    const tsw::ConvergenceTable t = tsw::run_convergence_study(cfg);
    const std::filesystem::path dir(tsw::resolve_output_dir(cfg));
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "convergence.csv") << tsw::format_convergence_csv(t);
    std::cout << tsw::format_convergence_table(t);
    return tsw::ExitOk;
  } catch (const tsw::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return tsw::ExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tsw::ExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return tsw::ExitNumerical;
  }
}

int cmd_check(int n, int order) {
  try {
    bool ok = true;
    for (const auto& c : tsw::run_identity_checks(n, order)) {
      std::printf("%-4s %-40s %12.3e  (tol %.0e)\n", c.passed() ? "ok" : "FAIL", c.name.c_str(),
                  c.value, c.tolerance);
      ok = ok && c.passed();
    }
    return ok ? tsw::ExitOk : tsw::ExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return tsw::ExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return tsw::ExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compatible finite element thermal shallow water solver"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "run the configured simulation");
  run->add_option("config", config, "YAML configuration file")->required();
  auto* conv = app.add_subcommand("converge", "balanced-jet convergence study");
  conv->add_option("config", config, "YAML configuration file")->required();
  int n = 4, order = 2;
  auto* check = app.add_subcommand("check", "operator identity and conservation residuals");
  check->add_option("--n", n, "cells per direction")->check(CLI::PositiveNumber);
  check->add_option("--order", order, "order k of V2")->check(CLI::Range(0, 4));
  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tsw::ExitConfig;
  }

  if (*run) return cmd_run(config);
  if (*conv) return cmd_converge(config);
  if (*check) return cmd_check(n, order);
  if (*version) {
    std::cout << "tsw " << TSW_VERSION << " (" << tsw::simd::kernels().name << ")\n";
    return tsw::ExitOk;
  }
  return tsw::ExitConfig;
}
