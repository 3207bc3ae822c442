#include <cmath>

#include "tables.hpp"

namespace mimocap::kernels {
namespace {

inline double ipow(double base, unsigned e) {
  double result = 1.0;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

void ratio_pow(const double* num, const double* den, std::size_t n,
               double exponent, double* out) {
  if (small_integer_exponent(exponent)) {
    const auto e = static_cast<unsigned>(exponent);
    for (std::size_t i = 0; i < n; ++i) out[i] = ipow(num[i] / den[i], e);
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::pow(num[i] / den[i], exponent);
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

cplx cdotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx cdotu(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
  }
  return {re, im};
}

void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double p = alpha.real(), q = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + (p * xr - q * xi), y[i].imag() + (p * xi + q * xr)};
  }
}

void caxpy_conj(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double p = alpha.real(), q = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = -x[i].imag();
    y[i] = {y[i].real() + (p * xr - q * xi), y[i].imag() + (p * xi + q * xr)};
  }
}

double cnorm2(const cplx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(x[i]);
  return s;
}

const KernelTable kTable{Isa::scalar, ratio_pow, dot,       cdotc, cdotu,
                         caxpy,       caxpy_conj, cnorm2};

}  // namespace

const KernelTable& scalar_table() { return kTable; }

}  // namespace mimocap::kernels
