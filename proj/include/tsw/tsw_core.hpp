#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tsw/assembly.hpp"
#include "tsw/fespace.hpp"
#include "tsw/linalg.hpp"
#include "tsw/mesh.hpp"

namespace tsw {

enum class Formulation { Mixed, Coupled };

std::string_view to_string(Formulation f);
Formulation formulation_from_string(std::string_view name);

/// Which Hamiltonian variant the functional derivatives belong to.
enum class Transport { Material, Flux };

/// How the constant M0 / M1 inverses are applied.
enum class MassInverse { Kronecker, Cg };

std::string_view to_string(MassInverse m);
MassInverse mass_inverse_from_string(std::string_view name);

struct DiscretizationConfig {
  int order = 2;
  int quad_points = 0;  // GLL points per direction; 0 selects default_gll_points(order)
  SolverConfig solver{};
  MassInverse mass_inverse = MassInverse::Kronecker;
  // Preconditioner for the h-weighted V0 / V1 solves; Operator uses the constant mass inverse.
  Preconditioner weighted_preconditioner = Preconditioner::Operator;
  // Abort when min h at the quadrature points drops below this fraction of mean h.
  double positivity_floor = 1e-10;
};

/// Prognostic state. `b` is only carried by the mixed formulation; `f` is the
/// fixed Coriolis field.
struct TswState {
  Formulation form = Formulation::Coupled;
  Field u;
  Field h;
  Field b;
  Field B;
  Field f;
};

/// Primal (mass-solved) time derivatives; `db` is empty for the coupled form.
struct Tendency {
  std::vector<double> du;
  std::vector<double> dh;
  std::vector<double> db;
  std::vector<double> dB;
};

/// Intermediate quantities of one right-hand-side evaluation.
struct RhsTerms {
  std::vector<double> q, F, bprime, G;
  std::vector<double> phi_m, phi_f, t_m, t_f;
};

/// The compatible discretisation: spaces, constant operators, and the two
/// semi-discrete right-hand sides. Immutable after construction; all
/// evaluations are const and allocate their own scratch.
class TswModel {
public:
  TswModel(const Mesh& mesh, const DiscretizationConfig& cfg);

  TswModel(const TswModel&) = delete;
  TswModel& operator=(const TswModel&) = delete;

  const Mesh& mesh() const noexcept { return mesh_; }
  const DiscretizationConfig& config() const noexcept { return cfg_; }
  int order() const noexcept { return cfg_.order; }
  const FunctionSpace& v0() const noexcept { return v0_; }
  const FunctionSpace& v1() const noexcept { return v1_; }
  const FunctionSpace& v2() const noexcept { return v2_; }
  const Assembler& assembler() const noexcept { return asm_; }

  const SparseOperator& m0() const noexcept { return m0_; }
  const SparseOperator& m1() const noexcept { return m1_; }
  const SparseOperator& m2() const noexcept { return m2_; }
  const SparseOperator& d2() const noexcept { return d2_; }
  const SparseOperator& d2t() const noexcept { return d2t_; }
  const SparseOperator& r1() const noexcept { return r1_; }
  const SparseOperator& r1t() const noexcept { return r1t_; }
  const SparseOperator& perp() const noexcept { return e10_; }
  const SparseOperator& divergence() const noexcept { return e21_; }

  // Constant mass inverses.
  std::vector<double> solve_m0(std::span<const double> r) const;
  std::vector<double> solve_m1(std::span<const double> r) const;
  std::vector<double> solve_m2(std::span<const double> r) const;
  // State-dependent weighted mass inverses, M*(., w) x = r.
  std::vector<double> solve_weighted_m0(std::span<const double> w, std::span<const double> r) const;
  std::vector<double> solve_weighted_m1(std::span<const double> w, std::span<const double> r) const;
  std::vector<double> solve_weighted_m2(std::span<const double> w, std::span<const double> r) const;

  /// L2 projections of pointwise functions.
  Field project(Family family, const ScalarFunction& f) const;
  Field project(const VectorFunction& f) const;

  /// Minimum of h over all quadrature points.
  double min_depth(std::span<const double> h) const;
  /// Throws PositivityError if h violates the positivity floor.
  void check_positivity(std::span<const double> h) const;

  TswState make_state(Formulation form) const;

  // Diagnostic solves.
  Field diagnose_q(const TswState& s) const;
  Field diagnose_F(const TswState& s) const;
  std::pair<Field, Field> diagnose_functional_derivatives(const TswState& s, Transport variant) const;
  std::pair<Field, Field> diagnose_bprime_G(const TswState& s) const;
  Field diagnose_bprime(const TswState& s) const;

  Tendency rhs_mixed(const TswState& s, RhsTerms* terms = nullptr) const;
  Tendency rhs_coupled(const TswState& s, RhsTerms* terms = nullptr) const;
  Tendency rhs(const TswState& s, RhsTerms* terms = nullptr) const;

private:
  std::vector<double> bprime_of(std::span<const double> h, std::span<const double> B) const;
  std::vector<double> q_of(const TswState& s) const;
  std::vector<double> flux_of(std::span<const double> u, std::span<const double> h) const;

  Mesh mesh_;
  DiscretizationConfig cfg_;
  FunctionSpace v0_, v1_, v2_;
  Assembler asm_;
  SparseOperator m0_, m1_, m2_, d2_, d2t_, r1_, r1t_, e10_, e21_;
  KroneckerSolver m0_kron_, m1x_kron_, m1y_kron_;
  BlockDiagonalSolver m2_solver_;
};

}  // namespace tsw
