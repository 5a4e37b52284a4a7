#include "tsw/mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tsw {

Mesh::Mesh(int nx, int ny, double lx, double ly) : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("mesh: cell counts must be >= 1");
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("mesh: extents must be > 0");
}

void Mesh::check_cell(int cell) const {
  if (cell < 0 || cell >= num_cells())
    throw std::out_of_range("mesh: cell index " + std::to_string(cell) + " out of range");
}

int Mesh::cell_index(int i, int j) const {
  i = ((i % nx_) + nx_) % nx_;
  j = ((j % ny_) + ny_) % ny_;
  return i + nx_ * j;
}

std::array<int, 2> Mesh::cell_ij(int cell) const {
  check_cell(cell);
  return {cell % nx_, cell / nx_};
}

int Mesh::neighbor(int cell, Direction dir) const {
  auto [i, j] = cell_ij(cell);
  switch (dir) {
    case Direction::West: return cell_index(i - 1, j);
    case Direction::East: return cell_index(i + 1, j);
    case Direction::South: return cell_index(i, j - 1);
    case Direction::North: return cell_index(i, j + 1);
  }
  return cell;
}

std::array<int, 4> Mesh::vertices(int cell) const {
  auto [i, j] = cell_ij(cell);
  auto vid = [&](int a, int b) { return ((a % nx_) + nx_) % nx_ + nx_ * (((b % ny_) + ny_) % ny_); };
  return {vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)};
}

Point2 Mesh::cell_center(int cell) const {
  auto [i, j] = cell_ij(cell);
  return {(i + 0.5) * dx(), (j + 0.5) * dy()};
}

Point2 Mesh::map_to_physical(int cell, Point2 xi) const {
  const Point2 c = cell_center(cell);
  return {c[0] + jac_x() * xi[0], c[1] + jac_y() * xi[1]};
}

Point2 Mesh::map_to_reference(int cell, Point2 x) const {
  const Point2 c = cell_center(cell);
  return {(x[0] - c[0]) / jac_x(), (x[1] - c[1]) / jac_y()};
}

int Mesh::locate(Point2 x) const {
  const double px = x[0] - lx_ * std::floor(x[0] / lx_);
  const double py = x[1] - ly_ * std::floor(x[1] / ly_);
  int i = std::min(nx_ - 1, static_cast<int>(px / dx()));
  int j = std::min(ny_ - 1, static_cast<int>(py / dy()));
  return i + nx_ * j;
}

Mesh build_periodic_quad_mesh(int nx, int ny, double lx, double ly) { return Mesh(nx, ny, lx, ly); }

}  // namespace tsw
