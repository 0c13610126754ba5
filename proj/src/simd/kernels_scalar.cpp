#include "lsw/simd/kernels.hpp"

namespace lsw::simd {
namespace {

void cmul_acc_s(const Complex* w, const Complex* x, Complex* y,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += w[i] * x[i];
}

void cmul_s(const Complex* x, const Complex* y, Complex* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) z[i] = x[i] * y[i];
}

void axpy_s(Complex a, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_s(Complex a, Complex* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

Complex dotc_s(const Complex* x, const Complex* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2sq_s(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void rdiag_axpy_s(Complex a, const double* d, const Complex* x, Complex* y,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * (d[i] * x[i]);
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {"scalar",  cmul_acc_s, cmul_s,       axpy_s,
                            scale_s,   dotc_s,     norm2sq_s,    rdiag_axpy_s};
  return k;
}

}  // namespace lsw::simd
