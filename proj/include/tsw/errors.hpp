#pragma once

#include <stdexcept>
#include <string>

namespace tsw {

/// Iterative solve failed to reach its tolerance.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

private:
  double residual_;
  int iterations_;
};

/// Depth fell below the positivity floor somewhere in the domain.
class PositivityError : public std::runtime_error {
public:
  PositivityError(const std::string& what, double min_h)
      : std::runtime_error(what), min_h_(min_h) {}

  double min_h() const noexcept { return min_h_; }

private:
  double min_h_;
};

/// Bad configuration value; carries the offending field and its source line (0 if unknown).
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, int line, const std::string& message)
      : std::runtime_error(format(field, line, message)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  static std::string format(const std::string& field, int line, const std::string& message) {
    std::string s = "config error in '" + field + "'";
    if (line > 0) s += " (line " + std::to_string(line) + ")";
    return s + ": " + message;
  }

  std::string field_;
  int line_;
};

}  // namespace tsw
