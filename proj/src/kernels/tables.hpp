#pragma once

#include "mimocap/kernels.hpp"

namespace mimocap::kernels {

const KernelTable& scalar_table();
#if MIMOCAP_WITH_AVX2
const KernelTable& avx2_table();
#endif

// Largest exponent that takes the binary-powering path. Both tables must use
// the same threshold so they stay bit-identical.
inline constexpr double kMaxIntegerExponent = 64.0;

inline bool small_integer_exponent(double e) {
  return e >= 0.0 && e <= kMaxIntegerExponent && e == static_cast<double>(static_cast<int>(e));
}

}  // namespace mimocap::kernels
