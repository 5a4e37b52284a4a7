#pragma once

#include <array>
#include <cstddef>

namespace tsw {

using Point2 = std::array<double, 2>;

enum class Direction { West, East, South, North };

/// Doubly periodic structured quadrilateral mesh on [0,Lx]x[0,Ly].
///
/// Cells are numbered c = i + nx*j. Every cell is the affine image of the
/// reference square [-1,1]^2 with the same diagonal Jacobian, so any operator
/// built cell-by-cell is translation invariant.
class Mesh {
public:
  Mesh(int nx, int ny, double lx, double ly);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  int num_cells() const noexcept { return nx_ * ny_; }

  double dx() const noexcept { return lx_ / nx_; }
  double dy() const noexcept { return ly_ / ny_; }

  // Diagonal entries of the reference-to-physical Jacobian.
  double jac_x() const noexcept { return 0.5 * dx(); }
  double jac_y() const noexcept { return 0.5 * dy(); }
  double det_jac() const noexcept { return jac_x() * jac_y(); }
  double cell_area() const noexcept { return dx() * dy(); }

  int cell_index(int i, int j) const;
  std::array<int, 2> cell_ij(int cell) const;
  int neighbor(int cell, Direction dir) const;
  std::array<int, 4> vertices(int cell) const;  // periodic vertex ids, counter-clockwise from SW

  Point2 cell_center(int cell) const;
  Point2 map_to_physical(int cell, Point2 xi) const;
  Point2 map_to_reference(int cell, Point2 x) const;

  /// Cell containing a (periodically wrapped) physical point.
  int locate(Point2 x) const;

private:
  void check_cell(int cell) const;

  int nx_;
  int ny_;
  double lx_;
  double ly_;
};

Mesh build_periodic_quad_mesh(int nx, int ny, double lx, double ly);

}  // namespace tsw
