#include "tsw/fespace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tsw/quadrature.hpp"

namespace tsw {

std::string_view to_string(Family family) {
  switch (family) {
    case Family::V0: return "V0";
    case Family::V1: return "V1";
    case Family::V2: return "V2";
  }
  return "?";
}

Family family_from_string(std::string_view name) {
  if (name == "V0") return Family::V0;
  if (name == "V1") return Family::V1;
  if (name == "V2") return Family::V2;
  throw std::invalid_argument("unknown space family '" + std::string(name) + "'");
}

namespace {

std::vector<double> open_nodes(int order) { return gauss_rule(order + 1).points; }
std::vector<double> closed_nodes(int order) { return gll_rule(order + 2).points; }

}  // namespace

FunctionSpace::FunctionSpace(const Mesh& mesh, Family family, int order)
    : mesh_(mesh),
      family_(family),
      order_(order),
      closed_(order >= 0 ? closed_nodes(order) : std::vector<double>{0.0}),
      open_(order >= 0 ? open_nodes(order) : std::vector<double>{0.0}) {
  if (order < 0 || order > 4)
    throw std::invalid_argument("FunctionSpace: order must be in [0, 4]");
  switch (family) {
    case Family::V0: build_v0(); break;
    case Family::V1: build_v1(); break;
    case Family::V2: build_v2(); break;
  }
}

void FunctionSpace::build_v0() {
  const int k1 = order_ + 1, k2 = order_ + 2;
  const int nxl = mesh_.nx() * k1, nyl = mesh_.ny() * k1;
  nlocal_ = k2 * k2;
  ndof_ = nxl * nyl;
  dofs_.resize(static_cast<std::size_t>(mesh_.num_cells()) * nlocal_);
  signs_.assign(dofs_.size(), 1.0);
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    auto [ci, cj] = mesh_.cell_ij(c);
    for (int b = 0; b < k2; ++b)
      for (int a = 0; a < k2; ++a) {
        const int gx = (ci * k1 + a) % nxl;
        const int gy = (cj * k1 + b) % nyl;
        dofs_[c * nlocal_ + a + k2 * b] = gx + nxl * gy;
      }
  }
}

void FunctionSpace::build_v1() {
  const int k1 = order_ + 1, k2 = order_ + 2;
  const int nxl = mesh_.nx() * k1, nyl = mesh_.ny() * k1;
  nlocal_x_ = k2 * k1;
  nlocal_ = 2 * nlocal_x_;
  const int nx_dofs = nxl * nyl;
  ndof_ = 2 * nx_dofs;
  dofs_.resize(static_cast<std::size_t>(mesh_.num_cells()) * nlocal_);
  signs_.assign(dofs_.size(), 1.0);
  for (int c = 0; c < mesh_.num_cells(); ++c) {
    auto [ci, cj] = mesh_.cell_ij(c);
    const std::size_t base = static_cast<std::size_t>(c) * nlocal_;
    // x-directed: closed in x, open in y
    for (int b = 0; b < k1; ++b)
      for (int a = 0; a < k2; ++a) {
        const int i = a + k2 * b;
        const int gx = (ci * k1 + a) % nxl;
        const int gy = cj * k1 + b;
        dofs_[base + i] = gx + nxl * gy;
        signs_[base + i] = a == 0 ? -1.0 : 1.0;
      }
    // y-directed: open in x, closed in y
    for (int b = 0; b < k2; ++b)
      for (int a = 0; a < k1; ++a) {
        const int i = nlocal_x_ + a + k1 * b;
        const int gx = ci * k1 + a;
        const int gy = (cj * k1 + b) % nyl;
        dofs_[base + i] = nx_dofs + gy + nyl * gx;
        signs_[base + i] = b == 0 ? -1.0 : 1.0;
      }
  }
}

void FunctionSpace::build_v2() {
  const int k1 = order_ + 1;
  nlocal_ = k1 * k1;
  ndof_ = mesh_.num_cells() * nlocal_;
  dofs_.resize(ndof_);
  signs_.assign(dofs_.size(), 1.0);
  for (int g = 0; g < ndof_; ++g) dofs_[g] = g;
}

std::span<const int> FunctionSpace::cell_dofs(int cell) const {
  if (cell < 0 || cell >= mesh_.num_cells()) throw std::out_of_range("cell_dofs: bad cell");
  return {dofs_.data() + static_cast<std::size_t>(cell) * nlocal_, static_cast<std::size_t>(nlocal_)};
}

std::span<const double> FunctionSpace::cell_signs(int cell) const {
  if (cell < 0 || cell >= mesh_.num_cells()) throw std::out_of_range("cell_signs: bad cell");
  return {signs_.data() + static_cast<std::size_t>(cell) * nlocal_, static_cast<std::size_t>(nlocal_)};
}

std::array<int, 2> FunctionSpace::local_factors(int i) const {
  const int k1 = order_ + 1, k2 = order_ + 2;
  switch (family_) {
    case Family::V0: return {i % k2, i / k2};
    case Family::V2: return {i % k1, i / k1};
    case Family::V1:
      if (i < nlocal_x_) return {i % k2, i / k2};
      i -= nlocal_x_;
      return {i % k1, i / k1};
  }
  return {0, 0};
}

bool FunctionSpace::same_mesh(const FunctionSpace& o) const {
  return mesh_.nx() == o.mesh_.nx() && mesh_.ny() == o.mesh_.ny() && mesh_.lx() == o.mesh_.lx() &&
         mesh_.ly() == o.mesh_.ly();
}

BasisEval FunctionSpace::eval_basis(int cell, Point2 xi) const {
  if (cell < 0 || cell >= mesh_.num_cells()) throw std::out_of_range("eval_basis: bad cell");
  const int kc = closed_.size(), ko = open_.size();
  std::vector<double> cx(kc), cy(kc), dcx(kc), dcy(kc), ox(ko), oy(ko);
  closed_.values(xi[0], cx.data());
  closed_.values(xi[1], cy.data());
  closed_.derivatives(xi[0], dcx.data());
  closed_.derivatives(xi[1], dcy.data());
  open_.values(xi[0], ox.data());
  open_.values(xi[1], oy.data());

  const double jx = mesh_.jac_x(), jy = mesh_.jac_y(), det = mesh_.det_jac();
  auto signs = cell_signs(cell);
  BasisEval e;
  switch (family_) {
    case Family::V0:
      e.value.resize(nlocal_);
      e.perp.resize(2 * nlocal_);
      for (int i = 0; i < nlocal_; ++i) {
        auto [a, b] = local_factors(i);
        e.value[i] = cx[a] * cy[b];
        const double ddx = dcx[a] * cy[b] / jx;
        const double ddy = cx[a] * dcy[b] / jy;
        e.perp[2 * i] = -ddy;
        e.perp[2 * i + 1] = ddx;
      }
      break;
    case Family::V1:
      e.value.assign(2 * nlocal_, 0.0);
      e.div.resize(nlocal_);
      for (int i = 0; i < nlocal_; ++i) {
        auto [a, b] = local_factors(i);
        if (i < nlocal_x_) {
          e.value[2 * i] = signs[i] * cx[a] * oy[b] / jy;
          e.div[i] = signs[i] * dcx[a] * oy[b] / det;
        } else {
          e.value[2 * i + 1] = signs[i] * ox[a] * cy[b] / jx;
          e.div[i] = signs[i] * ox[a] * dcy[b] / det;
        }
      }
      break;
    case Family::V2:
      e.value.resize(nlocal_);
      for (int i = 0; i < nlocal_; ++i) {
        auto [a, b] = local_factors(i);
        e.value[i] = ox[a] * oy[b];
      }
      break;
  }
  return e;
}

FunctionSpace build_space(const Mesh& mesh, Family family, int order) {
  return FunctionSpace(mesh, family, order);
}

Field::Field(const FunctionSpace& s, std::vector<double> c, FieldKind k)
    : space(&s), coeffs(std::move(c)), kind(k) {
  if (static_cast<int>(coeffs.size()) != s.ndof())
    throw std::invalid_argument("Field: coefficient count does not match the space");
}

namespace {

struct Located {
  int cell;
  Point2 xi;
};

Located locate(const Mesh& m, Point2 x) {
  const int c = m.locate(x);
  const double px = x[0] - m.lx() * std::floor(x[0] / m.lx());
  const double py = x[1] - m.ly() * std::floor(x[1] / m.ly());
  return {c, m.map_to_reference(c, {px, py})};
}

}  // namespace

double Field::value_at(Point2 x) const {
  if (space->family() == Family::V1) throw std::invalid_argument("value_at: vector field");
  auto [c, xi] = locate(space->mesh(), x);
  const BasisEval e = space->eval_basis(c, xi);
  auto dofs = space->cell_dofs(c);
  auto signs = space->cell_signs(c);
  double v = 0.0;
  for (int i = 0; i < space->num_local(); ++i) v += signs[i] * coeffs[dofs[i]] * e.value[i];
  return v;
}

Point2 Field::vector_at(Point2 x) const {
  if (space->family() != Family::V1) throw std::invalid_argument("vector_at: scalar field");
  auto [c, xi] = locate(space->mesh(), x);
  const BasisEval e = space->eval_basis(c, xi);
  auto dofs = space->cell_dofs(c);
  auto signs = space->cell_signs(c);
  Point2 v{0.0, 0.0};
  for (int i = 0; i < space->num_local(); ++i) {
    const double ci = signs[i] * coeffs[dofs[i]];
    v[0] += ci * e.value[2 * i];
    v[1] += ci * e.value[2 * i + 1];
  }
  return v;
}

double Field::div_at(Point2 x) const {
  if (space->family() != Family::V1) throw std::invalid_argument("div_at: scalar field");
  auto [c, xi] = locate(space->mesh(), x);
  const BasisEval e = space->eval_basis(c, xi);
  auto dofs = space->cell_dofs(c);
  auto signs = space->cell_signs(c);
  double v = 0.0;
  for (int i = 0; i < space->num_local(); ++i) v += signs[i] * coeffs[dofs[i]] * e.div[i];
  return v;
}

}  // namespace tsw
