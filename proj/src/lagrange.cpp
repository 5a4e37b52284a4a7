#include "tsw/lagrange.hpp"

#include <stdexcept>

namespace tsw {

Lagrange1D::Lagrange1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("Lagrange1D: empty node set");
  const int n = size();
  denom_.assign(n, 1.0);
  for (int j = 0; j < n; ++j)
    for (int m = 0; m < n; ++m)
      if (m != j) denom_[j] *= nodes_[j] - nodes_[m];
}

double Lagrange1D::value(int j, double x) const {
  double num = 1.0;
  for (int m = 0; m < size(); ++m)
    if (m != j) num *= x - nodes_[m];
  return num / denom_[j];
}

double Lagrange1D::derivative(int j, double x) const {
  const int n = size();
  double sum = 0.0;
  for (int l = 0; l < n; ++l) {
    if (l == j) continue;
    double prod = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != j && m != l) prod *= x - nodes_[m];
    sum += prod;
  }
  return sum / denom_[j];
}

void Lagrange1D::values(double x, double* out) const {
  for (int j = 0; j < size(); ++j) out[j] = value(j, x);
}

void Lagrange1D::derivatives(double x, double* out) const {
  for (int j = 0; j < size(); ++j) out[j] = derivative(j, x);
}

}  // namespace tsw
