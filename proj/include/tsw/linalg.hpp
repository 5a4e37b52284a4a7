#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "tsw/sparse.hpp"

namespace tsw {

enum class Preconditioner {
  None,
  Diagonal,
  // Caller-supplied approximate inverse (the constant mass matrix for weighted masses).
  Operator,
};

std::string_view to_string(Preconditioner p);
Preconditioner preconditioner_from_string(std::string_view name);

struct SolverConfig {
  double rtol = 1e-12;
  int max_iter = 0;  // 0 means 10 * n
  Preconditioner preconditioner = Preconditioner::Diagonal;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // final ||A x - r|| / ||r||
};

using LinearMap = std::function<void(std::span<const double>, std::span<double>)>;

/// Preconditioned conjugate gradients for SPD maps. Throws SolverError when
/// the relative residual does not reach cfg.rtol within the iteration cap.
std::vector<double> conjugate_gradient(const LinearMap& a, std::span<const double> rhs,
                                       const SolverConfig& cfg, const LinearMap& precond = {},
                                       SolveStats* stats = nullptr);

std::vector<double> solve_spd(const SparseOperator& a, std::span<const double> rhs,
                              const SolverConfig& cfg = {}, SolveStats* stats = nullptr);

/// Discrete duality pairing (Euclidean dot product).
double pair(std::span<const double> dual, std::span<const double> primal);

/// Dense Cholesky factorisation of a symmetric positive definite n x n matrix.
class DenseCholesky {
public:
  DenseCholesky() = default;
  DenseCholesky(std::span<const double> a, int n);

  int size() const noexcept { return n_; }
  void solve_in_place(std::span<double> x) const;
  std::vector<double> inverse() const;

private:
  int n_ = 0;
  std::vector<double> l_;
};

/// Independent SPD blocks of equal size along the diagonal (V2 operators).
class BlockDiagonalSolver {
public:
  BlockDiagonalSolver() = default;
  /// `blocks` holds nblocks consecutive row-major bs x bs matrices.
  BlockDiagonalSolver(std::span<const double> blocks, int nblocks, int bs);

  int size() const noexcept { return nblocks_ * bs_; }
  void solve(std::span<const double> rhs, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;

private:
  int nblocks_ = 0;
  int bs_ = 0;
  std::vector<double> inv_;  // explicit block inverses
};

/// Exact inverse of scale * (S kron F), with S (m x m, block diagonal with
/// block size `s_block`) acting on the slow index and F (n x n, dense) on the
/// fast index of g = fast + n*slow.
class KroneckerSolver {
public:
  KroneckerSolver() = default;
  KroneckerSolver(std::span<const double> slow, int m, int s_block, std::span<const double> fast,
                  int n, double scale);

  int size() const noexcept { return m_ * n_; }
  void solve(std::span<const double> rhs, std::span<double> x) const;

private:
  int m_ = 0;
  int n_ = 0;
  int s_block_ = 0;
  double inv_scale_ = 1.0;
  std::vector<double> slow_inv_;  // m/s_block blocks of s_block^2
  std::vector<double> fast_inv_;  // n x n
};

}  // namespace tsw
