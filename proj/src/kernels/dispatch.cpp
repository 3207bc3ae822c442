#include <atomic>
#include <cstdlib>
#include <string>

#include "tables.hpp"

namespace mimocap::kernels {
namespace {

bool cpu_has_avx2() {
#if MIMOCAP_WITH_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("MIMOCAP_ISA"); env != nullptr && *env != '\0')
    return &table(parse_isa(env));
  return &table(detect());
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{initial_table()};
  return ptr;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa parse_isa(std::string_view text) {
  if (text == "scalar") return Isa::scalar;
  if (text == "avx2") return Isa::avx2;
  throw std::invalid_argument("unknown ISA '" + std::string(text) + "' (expected scalar or avx2)");
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
  }
  return false;
}

Isa detect() { return available(Isa::avx2) ? Isa::avx2 : Isa::scalar; }

const KernelTable& table(Isa isa) {
  if (!available(isa))
    throw std::invalid_argument("ISA " + std::string(name(isa)) + " not available on this CPU/build");
  switch (isa) {
    case Isa::scalar: return scalar_table();
#if MIMOCAP_WITH_AVX2
    case Isa::avx2: return avx2_table();
#else
    case Isa::avx2: break;
#endif
  }
  return scalar_table();
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace mimocap::kernels
