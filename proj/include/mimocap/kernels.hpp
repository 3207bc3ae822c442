#pragma once

// Inner-loop kernels with a scalar reference implementation and an AVX2/FMA
// variant selected at runtime. The scalar table is always present; any other
// table must agree with it (bit-for-bit for ratio_pow with integer exponents,
// to rounding for reductions).

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>

namespace mimocap::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  /// out[i] = (num[i] / den[i]) ^ exponent, exponent >= 0.
  void (*ratio_pow)(const double* num, const double* den, std::size_t n,
                    double exponent, double* out);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum conj(a[i]) * b[i]
  cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
  /// sum a[i] * b[i]
  cplx (*cdotu)(const cplx* a, const cplx* b, std::size_t n);
  /// y += alpha * x
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  /// y += alpha * conj(x)
  void (*caxpy_conj)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  double (*cnorm2)(const cplx* x, std::size_t n);
};

std::string_view name(Isa isa);
Isa parse_isa(std::string_view text);

/// Best ISA supported by the running CPU and compiled in.
Isa detect();
bool available(Isa isa);

/// Table for a specific ISA; throws std::invalid_argument if unavailable.
const KernelTable& table(Isa isa);

/// Process-wide table. First use honours MIMOCAP_ISA=scalar|avx2, otherwise
/// detect().
const KernelTable& active();
void force(Isa isa);

// Span front-ends over the active table.

inline void ratio_pow(std::span<const double> num, std::span<const double> den,
                      double exponent, std::span<double> out) {
  if (num.size() != den.size() || out.size() != num.size())
    throw std::invalid_argument("ratio_pow: length mismatch");
  active().ratio_pow(num.data(), den.data(), num.size(), exponent, out.data());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

inline cplx cdotc(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cdotc: length mismatch");
  return active().cdotc(a.data(), b.data(), a.size());
}

inline cplx cdotu(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw std::invalid_argument("cdotu: length mismatch");
  return active().cdotu(a.data(), b.data(), a.size());
}

inline void caxpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size()) throw std::invalid_argument("caxpy: length mismatch");
  active().caxpy(alpha, x.data(), y.data(), x.size());
}

inline void caxpy_conj(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("caxpy_conj: length mismatch");
  active().caxpy_conj(alpha, x.data(), y.data(), x.size());
}

inline double cnorm2(std::span<const cplx> x) {
  return active().cnorm2(x.data(), x.size());
}

}  // namespace mimocap::kernels
