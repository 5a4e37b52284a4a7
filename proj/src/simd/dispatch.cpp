#include <atomic>
#include <cstdlib>
#include <cstring>

#include "tsw/simd/kernels.hpp"

namespace tsw::simd {
namespace {

const KernelTable* initial() {
  const char* env = std::getenv("TSW_SIMD");
  if (env && std::strcmp(env, "scalar") == 0) return &scalar_kernels();
  if (const KernelTable* t = avx2_kernels()) return t;
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> a{initial()};
  return a;
}

}  // namespace

const KernelTable& kernels() { return *active().load(std::memory_order_relaxed); }

bool select(Isa isa) {
  const KernelTable* t = isa == Isa::Scalar ? &scalar_kernels() : avx2_kernels();
  if (!t) return false;
  active().store(t);
  return true;
}

Isa active_isa() { return &kernels() == &scalar_kernels() ? Isa::Scalar : Isa::Avx2; }

std::string_view isa_name(Isa isa) { return isa == Isa::Scalar ? "scalar" : "avx2"; }

}  // namespace tsw::simd
