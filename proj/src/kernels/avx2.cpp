// Compiled with -mavx2 -mfma; only reached through avx2_table() after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

namespace mimocap::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lanes 0 and 2 minus lanes 1 and 3.
inline double even_minus_odd(__m256d v) {
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  return hsum(_mm256_mul_pd(v, sign));
}

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline __m256d ipow4(__m256d base, unsigned e) {
  __m256d result = _mm256_set1_pd(1.0);
  while (e != 0) {
    if (e & 1u) result = _mm256_mul_pd(result, base);
    e >>= 1;
    if (e != 0) base = _mm256_mul_pd(base, base);
  }
  return result;
}

void ratio_pow(const double* num, const double* den, std::size_t n,
               double exponent, double* out) {
  if (!small_integer_exponent(exponent)) {
    scalar_table().ratio_pow(num, den, n, exponent, out);
    return;
  }
  const auto e = static_cast<unsigned>(exponent);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_div_pd(_mm256_loadu_pd(num + i), _mm256_loadu_pd(den + i));
    _mm256_storeu_pd(out + i, ipow4(r, e));
  }
  if (i < n) scalar_table().ratio_pow(num + i, den + i, n - i, exponent, out + i);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Two complex values per register, interleaved (re, im, re, im).
// direct = a * b lane-wise, crossed = a * swap(b) lane-wise.
inline void complex_products(const cplx* a, const cplx* b, std::size_t n,
                             __m256d& direct, __m256d& crossed, std::size_t& done) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  __m256d d0 = _mm256_setzero_pd(), d1 = _mm256_setzero_pd();
  __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    const __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    const __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    d0 = _mm256_fmadd_pd(va0, vb0, d0);
    d1 = _mm256_fmadd_pd(va1, vb1, d1);
    c0 = _mm256_fmadd_pd(va0, swap_pairs(vb0), c0);
    c1 = _mm256_fmadd_pd(va1, swap_pairs(vb1), c1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    d0 = _mm256_fmadd_pd(va, vb, d0);
    c0 = _mm256_fmadd_pd(va, swap_pairs(vb), c0);
  }
  direct = _mm256_add_pd(d0, d1);
  crossed = _mm256_add_pd(c0, c1);
  done = i;
}

cplx cdotc(const cplx* a, const cplx* b, std::size_t n) {
  __m256d direct, crossed;
  std::size_t i;
  complex_products(a, b, n, direct, crossed, i);
  // re = ar*br + ai*bi, im = ar*bi - ai*br
  double re = hsum(direct);
  double im = even_minus_odd(crossed);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx cdotu(const cplx* a, const cplx* b, std::size_t n) {
  __m256d direct, crossed;
  std::size_t i;
  complex_products(a, b, n, direct, crossed, i);
  // re = ar*br - ai*bi, im = ar*bi + ai*br
  double re = even_minus_odd(direct);
  double im = hsum(crossed);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

template <bool Conjugate>
void caxpy_impl(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d p = _mm256_set1_pd(alpha.real());
  const __m256d q = _mm256_set1_pd(alpha.imag());
  const __m256d conj_mask = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  const auto* px = reinterpret_cast<const double*>(x);
  auto* py = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    if constexpr (Conjugate) vx = _mm256_xor_pd(vx, conj_mask);
    const __m256d t = _mm256_mul_pd(vx, p);
    const __m256d u = _mm256_mul_pd(swap_pairs(vx), q);
    // (p*xr - q*xi, p*xi + q*xr)
    const __m256d prod = _mm256_addsub_pd(t, u);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(_mm256_loadu_pd(py + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = Conjugate ? -x[i].imag() : x[i].imag();
    y[i] = {y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
            y[i].imag() + (alpha.real() * xi + alpha.imag() * xr)};
  }
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  caxpy_impl<false>(alpha, x, y, n);
}

void caxpy_conj(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  caxpy_impl<true>(alpha, x, y, n);
}

double cnorm2(const cplx* x, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  return dot(p, p, 2 * n);
}

const KernelTable kTable{Isa::avx2, ratio_pow, dot,       cdotc, cdotu,
                         caxpy,     caxpy_conj, cnorm2};

}  // namespace

const KernelTable& avx2_table() { return kTable; }

}  // namespace mimocap::kernels
