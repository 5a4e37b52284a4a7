#pragma once

#include <span>
#include <vector>

#include "tsw/fespace.hpp"
#include "tsw/linalg.hpp"
#include "tsw/quadrature.hpp"
#include "tsw/sparse.hpp"

namespace tsw {

/// Basis tabulation for one group of local functions at the volume quadrature points.
/// `t` is nq x nb and `tt` its transpose; values are those of the global
/// basis functions restricted to the cell (Piola and Jacobian factors applied).
struct Channel {
  int offset = 0;  // first local index covered
  int nb = 0;
  std::vector<double> t;
  std::vector<double> tt;
};

/// Quadrature tables for a space. Because all cells share one affine map the
/// tables are cell independent.
class SpaceTables {
public:
  SpaceTables(const FunctionSpace& space, const QuadRule2D& rule);

  const FunctionSpace& space() const noexcept { return *space_; }
  int nq() const noexcept { return nq_; }

  // V0, V2
  const Channel& value() const { return value_; }
  // V0: components of the perp gradient
  const Channel& perp_x() const { return perp_x_; }
  const Channel& perp_y() const { return perp_y_; }
  // V1: x-directed functions (x component), y-directed functions (y component), divergence
  const Channel& value_x() const { return value_x_; }
  const Channel& value_y() const { return value_y_; }
  const Channel& div() const { return div_; }

  /// Values of the channel at every quadrature point of every cell (ncells x nq).
  std::vector<double> evaluate(const Channel& ch, std::span<const double> coeffs) const;
  /// dual[g] += sum_q p[c,q] * basis_i(q) for every cell c and local i in the channel.
  void test_add(const Channel& ch, std::span<const double> p, std::span<double> dual) const;

private:
  void gather(const Channel& ch, std::span<const double> coeffs, std::vector<double>& g) const;

  const FunctionSpace* space_;
  int nq_;
  int ncells_;
  Channel value_, perp_x_, perp_y_, value_x_, value_y_, div_;
};

/// Assembles the operators of the complex and evaluates the trilinear actions.
///
/// Operators map trial coefficients to test-space duals:
///   M0, M1, M2    <basis, basis>
///   D2 (V1->V2')  <div v, phi>
///   R1 (V0->V1')  <perp psi, v>
///   M*(x, w)      <w x, basis>             w in V2
///   C1(q, F)      <q F^perp . v>,  F^perp = (-F_y, F_x)
///   K2(a, b)      <a . b, phi>
class Assembler {
public:
  Assembler(const FunctionSpace& v0, const FunctionSpace& v1, const FunctionSpace& v2,
            const QuadRule& line);

  const FunctionSpace& space(Family family) const;
  const SpaceTables& tables(Family family) const;
  const QuadRule2D& rule() const noexcept { return rule_; }
  /// Physical quadrature weights (reference weight times det J).
  std::span<const double> weights() const noexcept { return weights_; }
  int num_cells() const noexcept { return v2_->mesh().num_cells(); }
  int nq() const noexcept { return rule_.size(); }

  SparseOperator mass(Family family) const;
  SparseOperator weighted_mass(Family family, std::span<const double> w) const;
  SparseOperator div() const;
  SparseOperator perp_curl() const;

  /// M*(x, w): dual of w*x tested against the basis of `family`.
  std::vector<double> weighted_mass_apply(Family family, std::span<const double> w,
                                          std::span<const double> x) const;
  std::vector<double> c1(std::span<const double> q, std::span<const double> flux) const;
  std::vector<double> k2(std::span<const double> a, std::span<const double> b) const;
  /// <p, phi> for given quadrature values p (ncells x nq) of a scalar.
  std::vector<double> test_v2(std::span<const double> p) const;

  /// Quadrature values of a field (ncells x nq).
  std::vector<double> values(Family family, std::span<const double> coeffs) const;  // V0, V2
  std::vector<double> values_x(std::span<const double> u) const;                    // V1
  std::vector<double> values_y(std::span<const double> u) const;                    // V1

  /// Sum of weight * p over all quadrature points.
  double integrate(std::span<const double> p) const;

  /// Dual of a pointwise function tested against the basis.
  std::vector<double> load(Family family, const ScalarFunction& f) const;
  std::vector<double> load(const VectorFunction& f) const;

private:
  SparseOperator gram(Family family, std::span<const double> qp_weight) const;

  const FunctionSpace* v0_;
  const FunctionSpace* v1_;
  const FunctionSpace* v2_;
  QuadRule2D rule_;
  std::vector<double> weights_;
  SpaceTables t0_, t1_, t2_;
};

/// Strong perp gradient as a coefficient map V0 -> V1 (exact interpolation).
SparseOperator strong_perp(const FunctionSpace& v0, const FunctionSpace& v1);
/// Strong divergence as a coefficient map V1 -> V2 (exact interpolation).
SparseOperator strong_div(const FunctionSpace& v1, const FunctionSpace& v2);

// Stand-alone entry points. They build the companion spaces of the complex on
// the same mesh and use the default volume rule for the order.
SparseOperator assemble_mass(const FunctionSpace& space);
SparseOperator assemble_weighted_mass(const FunctionSpace& space, const Field& w);
SparseOperator assemble_div(const FunctionSpace& v1, const FunctionSpace& v2);
SparseOperator assemble_perp_curl(const FunctionSpace& v0, const FunctionSpace& v1);
/// Dual vectors (tested against the V1 and V2 bases respectively).
std::vector<double> apply_C1(const Field& q, const Field& flux);
std::vector<double> apply_K2(const Field& a, const Field& b);

/// L2 projection into the space (mass solve of the tested function).
Field project(const FunctionSpace& space, const ScalarFunction& f, const SolverConfig& cfg = {});
Field project(const FunctionSpace& space, const VectorFunction& f, const SolverConfig& cfg = {});

}  // namespace tsw
