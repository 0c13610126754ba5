// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma and only entered after a runtime CPU feature check.
//
// Complex layout: two std::complex<double> per __m256d as [r0 i0 r1 i1].
// Multiplication uses the movedup/permute + fmaddsub recipe:
//   even lanes: ar*br - ai*bi,  odd lanes: ar*bi + ai*br.

#include "lsw/simd/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace lsw::simd {
namespace {

inline __m256d cmul256(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

void cmul_acc_v(const Complex* w, const Complex* x, Complex* y,
                std::size_t n) {
  std::size_t i = 0;
  const double* wp = reinterpret_cast<const double*>(w);
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    const __m256d wv = _mm256_loadu_pd(wp + 2 * i);
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul256(wv, xv)));
  }
  for (; i < n; ++i) y[i] += w[i] * x[i];
}

void cmul_v(const Complex* x, const Complex* y, Complex* z, std::size_t n) {
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  double* zp = reinterpret_cast<double*>(z);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(zp + 2 * i, cmul256(xv, yv));
  }
  for (; i < n; ++i) z[i] = x[i] * y[i];
}

void axpy_v(Complex a, const Complex* x, Complex* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    const __m256d t = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, t));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_v(Complex a, Complex* x, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  double* xp = reinterpret_cast<double*>(x);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    _mm256_storeu_pd(xp + 2 * i,
                     _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs)));
  }
  for (; i < n; ++i) x[i] *= a;
}

Complex dotc_v(const Complex* x, const Complex* y, std::size_t n) {
  // acc_re lanes hold xr*yr and xi*yi terms; acc_im holds xi*yr (even) and
  // xr*yi (odd), combined as im = sum(odd) - sum(even).
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    const __m256d xs = _mm256_permute_pd(xv, 0x5);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xs, yv, acc_im);
  }
  alignas(32) double re4[4], im4[4];
  _mm256_store_pd(re4, acc_re);
  _mm256_store_pd(im4, acc_im);
  double re = re4[0] + re4[1] + re4[2] + re4[3];
  double im = (im4[1] + im4[3]) - (im4[0] + im4[2]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double norm2sq_v(const Complex* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  alignas(32) double s4[4];
  _mm256_store_pd(s4, acc);
  double s = s4[0] + s4[1] + s4[2] + s4[3];
  for (; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void rdiag_axpy_v(Complex a, const double* d, const Complex* x, Complex* y,
                  std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  for (; i + 2 <= n; i += 2) {
    // Broadcast [d0 d0 d1 d1] and fold into x before the complex scale by a.
    const __m128d dv = _mm_loadu_pd(d + i);
    const __m256d dd =
        _mm256_permute4x64_pd(_mm256_castpd128_pd256(dv), 0x50);
    const __m256d dx = _mm256_mul_pd(dd, _mm256_loadu_pd(xp + 2 * i));
    const __m256d dxs = _mm256_permute_pd(dx, 0x5);
    const __m256d t = _mm256_fmaddsub_pd(ar, dx, _mm256_mul_pd(ai, dxs));
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, t));
  }
  for (; i < n; ++i) y[i] += a * (d[i] * x[i]);
}

}  // namespace

const Kernels* avx2_kernels() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const Kernels k = {"avx2",   cmul_acc_v, cmul_v,      axpy_v,
                            scale_v,  dotc_v,     norm2sq_v,   rdiag_axpy_v};
  return &k;
}

}  // namespace lsw::simd

#else

namespace lsw::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace lsw::simd

#endif
