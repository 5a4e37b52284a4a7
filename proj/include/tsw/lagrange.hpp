#pragma once

#include <vector>

namespace tsw {

/// Lagrange interpolating basis on a fixed 1D node set.
class Lagrange1D {
public:
  explicit Lagrange1D(std::vector<double> nodes);

  int size() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }

  double value(int j, double x) const;
  double derivative(int j, double x) const;

  void values(double x, double* out) const;
  void derivatives(double x, double* out) const;

private:
  std::vector<double> nodes_;
  std::vector<double> denom_;
};

}  // namespace tsw
