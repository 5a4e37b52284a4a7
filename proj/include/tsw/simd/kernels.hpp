#pragma once

#include <cstddef>
#include <string_view>

namespace tsw::simd {

/// Data-parallel inner loops. Every entry has a scalar reference version and,
/// where the CPU supports it, a vectorised variant selected once at runtime.
struct KernelTable {
  const char* name;

  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha*x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = x + beta*y
  void (*xpby)(const double* x, double beta, double* y, std::size_t n);
  // y = A x for CSR A
  void (*spmv)(int nrows, const int* row_ptr, const int* cols, const double* vals,
               const double* x, double* y);
  // C = A B, row-major A (m x k), B (k x n), C (m x n)
  void (*matmul)(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
                 double* c);
  // out[i] = a[i]*b[i]*w[i]
  void (*mul3)(const double* a, const double* b, const double* w, double* out, std::size_t n);
};

enum class Isa { Scalar, Avx2 };

const KernelTable& scalar_kernels();
/// nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels();

/// Active table. Chosen on first use: the best supported variant, unless the
/// environment variable TSW_SIMD=scalar forces the reference kernels.
const KernelTable& kernels();

/// Override the active table (tests, benchmarking). Returns false if unavailable.
bool select(Isa isa);
Isa active_isa();
std::string_view isa_name(Isa isa);

}  // namespace tsw::simd
