#include "tsw/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "tsw/errors.hpp"
#include "tsw/simd/kernels.hpp"

namespace tsw {

std::string_view to_string(Preconditioner p) {
  switch (p) {
    case Preconditioner::None: return "none";
    case Preconditioner::Diagonal: return "diagonal";
    case Preconditioner::Operator: return "operator";
  }
  return "unknown";
}

Preconditioner preconditioner_from_string(std::string_view name) {
  if (name == "none") return Preconditioner::None;
  if (name == "diagonal") return Preconditioner::Diagonal;
  if (name == "operator" || name == "mass") return Preconditioner::Operator;
  throw std::invalid_argument("unknown preconditioner '" + std::string(name) + "'");
}

double pair(std::span<const double> dual, std::span<const double> primal) {
  if (dual.size() != primal.size()) throw std::invalid_argument("pair: size mismatch");
  return simd::kernels().dot(dual.data(), primal.data(), dual.size());
}

std::vector<double> conjugate_gradient(const LinearMap& a, std::span<const double> rhs,
                                       const SolverConfig& cfg, const LinearMap& precond,
                                       SolveStats* stats) {
  const auto& k = simd::kernels();
  const std::size_t n = rhs.size();
  std::vector<double> x(n, 0.0), r(rhs.begin(), rhs.end()), z(n), p(n), ap(n);
  const double rnorm0 = std::sqrt(k.dot(r.data(), r.data(), n));
  if (stats) *stats = {0, 0.0};
  if (rnorm0 == 0.0) return x;
  const int max_iter = cfg.max_iter > 0 ? cfg.max_iter : static_cast<int>(10 * n + 10);
  auto apply_m = [&](const std::vector<double>& in, std::vector<double>& out) {
    if (precond)
      precond(in, out);
    else
      out = in;
  };
  apply_m(r, z);
  p = z;
  double rz = k.dot(r.data(), z.data(), n);
  double rel = 1.0;
  int it = 0;
  while (it < max_iter) {
    a(p, ap);
    const double pap = k.dot(p.data(), ap.data(), n);
    if (!(pap > 0.0) || !std::isfinite(pap))
      throw SolverError("conjugate gradient: operator is not positive definite", rel, it);
    const double alpha = rz / pap;
    k.axpy(alpha, p.data(), x.data(), n);
    k.axpy(-alpha, ap.data(), r.data(), n);
    ++it;
    rel = std::sqrt(k.dot(r.data(), r.data(), n)) / rnorm0;
    if (!std::isfinite(rel)) throw SolverError("conjugate gradient: non-finite residual", rel, it);
    if (rel <= cfg.rtol) break;
    apply_m(r, z);
    const double rz_new = k.dot(r.data(), z.data(), n);
    k.xpby(z.data(), rz_new / rz, p.data(), n);
    rz = rz_new;
  }
  if (stats) *stats = {it, rel};
  if (rel > cfg.rtol)
    throw SolverError("conjugate gradient did not converge", rel, it);
  return x;
}

std::vector<double> solve_spd(const SparseOperator& a, std::span<const double> rhs,
                              const SolverConfig& cfg, SolveStats* stats) {
  if (a.rows() != a.cols() || a.rows() != static_cast<int>(rhs.size()))
    throw std::invalid_argument("solve_spd: size mismatch");
  LinearMap op = [&a](std::span<const double> x, std::span<double> y) { a.apply(x, y); };
  LinearMap pre;
  if (cfg.preconditioner != Preconditioner::None) {
    std::vector<double> d = a.diagonal();
    for (double& v : d) {
      if (!(v > 0.0)) throw SolverError("solve_spd: non-positive diagonal", 0.0, 0);
      v = 1.0 / v;
    }
    pre = [d = std::move(d)](std::span<const double> x, std::span<double> y) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = d[i] * x[i];
    };
  }
  return conjugate_gradient(op, rhs, cfg, pre, stats);
}

DenseCholesky::DenseCholesky(std::span<const double> a, int n) : n_(n), l_(a.begin(), a.end()) {
  if (static_cast<int>(a.size()) != n * n) throw std::invalid_argument("DenseCholesky: size");
  for (int j = 0; j < n; ++j) {
    double d = l_[j * n + j];
    for (int k = 0; k < j; ++k) d -= l_[j * n + k] * l_[j * n + k];
    if (!(d > 0.0)) throw SolverError("Cholesky: matrix is not positive definite", d, j);
    d = std::sqrt(d);
    l_[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double s = l_[i * n + j];
      for (int k = 0; k < j; ++k) s -= l_[i * n + k] * l_[j * n + k];
      l_[i * n + j] = s / d;
    }
    for (int i = 0; i < j; ++i) l_[i * n + j] = 0.0;
  }
}

void DenseCholesky::solve_in_place(std::span<double> x) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    for (int k = 0; k < i; ++k) s -= l_[i * n + k] * x[k];
    x[i] = s / l_[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k) s -= l_[k * n + i] * x[k];
    x[i] = s / l_[i * n + i];
  }
}

std::vector<double> DenseCholesky::inverse() const {
  std::vector<double> inv(static_cast<std::size_t>(n_) * n_, 0.0);
  std::vector<double> col(n_);
  for (int j = 0; j < n_; ++j) {
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    solve_in_place(col);
    for (int i = 0; i < n_; ++i) inv[i * n_ + j] = col[i];
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double s = 0.5 * (inv[i * n_ + j] + inv[j * n_ + i]);
      inv[i * n_ + j] = inv[j * n_ + i] = s;
    }
  return inv;
}

BlockDiagonalSolver::BlockDiagonalSolver(std::span<const double> blocks, int nblocks, int bs)
    : nblocks_(nblocks), bs_(bs), inv_(static_cast<std::size_t>(nblocks) * bs * bs) {
  const std::size_t b2 = static_cast<std::size_t>(bs) * bs;
  if (blocks.size() != nblocks * b2) throw std::invalid_argument("BlockDiagonalSolver: size");
  for (int c = 0; c < nblocks; ++c) {
    DenseCholesky ch(blocks.subspan(c * b2, b2), bs);
    auto inv = ch.inverse();
    std::copy(inv.begin(), inv.end(), inv_.begin() + c * b2);
  }
}

void BlockDiagonalSolver::solve(std::span<const double> rhs, std::span<double> x) const {
  if (static_cast<int>(rhs.size()) != size() || x.size() != rhs.size())
    throw std::invalid_argument("BlockDiagonalSolver::solve: size mismatch");
  const std::size_t b2 = static_cast<std::size_t>(bs_) * bs_;
  for (int c = 0; c < nblocks_; ++c) {
    const double* m = inv_.data() + c * b2;
    const double* r = rhs.data() + c * bs_;
    double* y = x.data() + c * bs_;
    for (int i = 0; i < bs_; ++i) {
      double s = 0.0;
      for (int j = 0; j < bs_; ++j) s += m[i * bs_ + j] * r[j];
      y[i] = s;
    }
  }
}

std::vector<double> BlockDiagonalSolver::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.size());
  solve(rhs, x);
  return x;
}

KroneckerSolver::KroneckerSolver(std::span<const double> slow, int m, int s_block,
                                 std::span<const double> fast, int n, double scale)
    : m_(m), n_(n), s_block_(s_block), inv_scale_(1.0 / scale) {
  if (static_cast<int>(slow.size()) != m * m || static_cast<int>(fast.size()) != n * n ||
      s_block <= 0 || m % s_block != 0)
    throw std::invalid_argument("KroneckerSolver: inconsistent sizes");
  const int nb = m / s_block;
  const std::size_t b2 = static_cast<std::size_t>(s_block) * s_block;
  slow_inv_.resize(nb * b2);
  std::vector<double> blk(b2);
  for (int c = 0; c < nb; ++c) {
    for (int i = 0; i < s_block; ++i)
      for (int j = 0; j < s_block; ++j)
        blk[i * s_block + j] = slow[(c * s_block + i) * m + c * s_block + j];
    auto inv = DenseCholesky(blk, s_block).inverse();
    std::copy(inv.begin(), inv.end(), slow_inv_.begin() + c * b2);
  }
  fast_inv_ = DenseCholesky(fast, n).inverse();
}

void KroneckerSolver::solve(std::span<const double> rhs, std::span<double> x) const {
  if (static_cast<int>(rhs.size()) != size() || x.size() != rhs.size())
    throw std::invalid_argument("KroneckerSolver::solve: size mismatch");
  const auto& k = simd::kernels();
  // Y is m x n (row = slow index). Z = Y F^{-1} (F symmetric), then X = S^{-1} Z.
  std::vector<double> z(rhs.size());
  k.matmul(m_, n_, n_, rhs.data(), fast_inv_.data(), z.data());
  const int nb = m_ / s_block_;
  const std::size_t b2 = static_cast<std::size_t>(s_block_) * s_block_;
  for (int c = 0; c < nb; ++c) {
    k.matmul(s_block_, s_block_, n_, slow_inv_.data() + c * b2,
             z.data() + static_cast<std::size_t>(c) * s_block_ * n_,
             x.data() + static_cast<std::size_t>(c) * s_block_ * n_);
  }
  for (double& v : x) v *= inv_scale_;
}

}  // namespace tsw
