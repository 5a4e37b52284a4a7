#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tsw/lagrange.hpp"
#include "tsw/mesh.hpp"

namespace tsw {

/// Spaces of the 2D complex V0 --perp--> V1 --div--> V2.
enum class Family { V0, V1, V2 };

std::string_view to_string(Family family);
Family family_from_string(std::string_view name);

/// Local basis values at one reference point, mapped to the physical cell.
/// V1 values are stored as (x, y) pairs; `perp` holds (-d/dy, d/dx) pairs for V0.
struct BasisEval {
  std::vector<double> value;
  std::vector<double> perp;
  std::vector<double> div;
};

/// Nodal tensor-product finite element space on a periodic quad mesh.
///
/// With V2 of degree k the 1D factors are Lagrange polynomials on the k+2
/// Gauss-Lobatto points ("closed", degree k+1) and on the k+1 Gauss points
/// ("open", degree k):
///   V0 = closed x closed                       (continuous)
///   V1 = (closed x open, 0) + (0, open x closed) (normal continuity, Piola mapped)
///   V2 = open x open                           (discontinuous)
///
/// V1 local functions on the cell boundary point outward; the global function
/// points in +x / +y, so the west and south face entries carry sign -1.
///
/// Global numbering:
///   V0  g = gx + Nx*gy,           gx in [0, nx(k+1)), gy in [0, ny(k+1)), periodic
///   V1x g = gx + Nx*gy,           gx periodic closed line, gy open line
///   V1y g = nV1x + gy + Ny*gx,    gx open line, gy periodic closed line
///   V2  g = cell*(k+1)^2 + a + (k+1)*b
class FunctionSpace {
public:
  FunctionSpace(const Mesh& mesh, Family family, int order);

  const Mesh& mesh() const noexcept { return mesh_; }
  Family family() const noexcept { return family_; }
  int order() const noexcept { return order_; }
  int ndof() const noexcept { return ndof_; }
  int num_local() const noexcept { return nlocal_; }
  int components() const noexcept { return family_ == Family::V1 ? 2 : 1; }

  /// V1: local functions [0, num_local_x()) are x-directed, the rest y-directed.
  int num_local_x() const noexcept { return nlocal_x_; }

  std::span<const int> cell_dofs(int cell) const;
  std::span<const double> cell_signs(int cell) const;

  const Lagrange1D& closed_basis() const noexcept { return closed_; }
  const Lagrange1D& open_basis() const noexcept { return open_; }

  /// 1D factor indices of local function i: (index along x, index along y).
  std::array<int, 2> local_factors(int i) const;

  BasisEval eval_basis(int cell, Point2 xi) const;

  bool same_mesh(const FunctionSpace& other) const;

private:
  void build_v0();
  void build_v1();
  void build_v2();

  Mesh mesh_;
  Family family_;
  int order_;
  int ndof_ = 0;
  int nlocal_ = 0;
  int nlocal_x_ = 0;
  Lagrange1D closed_;
  Lagrange1D open_;
  std::vector<int> dofs_;
  std::vector<double> signs_;
};

FunctionSpace build_space(const Mesh& mesh, Family family, int order);

enum class FieldKind { Primal, Dual };

/// Coefficient vector bound to a space. Dual fields hold assembled right-hand
/// sides (tested against the basis) and are only ever solved or paired.
struct Field {
  const FunctionSpace* space = nullptr;
  std::vector<double> coeffs;
  FieldKind kind = FieldKind::Primal;

  Field() = default;
  Field(const FunctionSpace& s, FieldKind k = FieldKind::Primal)
      : space(&s), coeffs(static_cast<std::size_t>(s.ndof()), 0.0), kind(k) {}
  Field(const FunctionSpace& s, std::vector<double> c, FieldKind k = FieldKind::Primal);

  /// Scalar value (V0/V2) at a physical point.
  double value_at(Point2 x) const;
  /// Vector value (V1) at a physical point.
  Point2 vector_at(Point2 x) const;
  /// Divergence (V1) at a physical point.
  double div_at(Point2 x) const;
};

using ScalarFunction = std::function<double(Point2)>;
using VectorFunction = std::function<Point2(Point2)>;

}  // namespace tsw
