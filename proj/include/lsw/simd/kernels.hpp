#pragma once

#include <complex>
#include <cstddef>

namespace lsw::simd {

using Complex = std::complex<double>;

// Vector kernels for the hot loops: 9-point stencil application, the FFT
// operator's pointwise stages, and the Krylov solver's BLAS-1 work.  Every
// entry has a portable scalar definition; on x86 an AVX2+FMA variant is
// selected at runtime when the CPU supports it.  The two implementations are
// kept interchangeable (equivalence-tested to rounding) so either can serve
// any call site.
struct Kernels {
  const char* name;

  // y[i] += w[i] * x[i]
  void (*cmul_acc)(const Complex* w, const Complex* x, Complex* y,
                   std::size_t n);
  // z[i] = x[i] * y[i]
  void (*cmul)(const Complex* x, const Complex* y, Complex* z, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(Complex a, const Complex* x, Complex* y, std::size_t n);
  // x[i] *= a
  void (*scale)(Complex a, Complex* x, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  Complex (*dotc)(const Complex* x, const Complex* y, std::size_t n);
  // sum_i |x[i]|^2
  double (*norm2sq)(const Complex* x, std::size_t n);
  // y[i] += a * d[i] * x[i] with a real diagonal d
  void (*rdiag_axpy)(Complex a, const double* d, const Complex* x, Complex* y,
                     std::size_t n);
};

// Portable reference implementation (always available).
const Kernels& scalar_kernels();

// AVX2+FMA implementation, or nullptr when the binary or the CPU lacks it.
const Kernels* avx2_kernels();

// The implementation used by the library.  Defaults to the best available;
// the environment variable LSW_KERNELS=scalar|avx2 forces a choice (an
// unsatisfiable forced choice fails loudly).
const Kernels& active_kernels();

}  // namespace lsw::simd
