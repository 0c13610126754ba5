#include "lsw/kernel_op.hpp"

#include <fftw3.h>

#include <cmath>

#include "lsw/simd/kernels.hpp"
#include "lsw/special.hpp"

namespace lsw {

int next_smooth_size(int k) {
  for (int p = (k < 1 ? 1 : k);; ++p) {
    int r = p;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return p;
  }
}

KernelTable::KernelTable(const GridSpec& g, int radius) : radius_(radius) {
  Require(radius >= 1, "KernelTable: radius must be >= 1");
  Require(g.omega * g.h() < M_PI, "KernelTable: requires omega*h < pi");
  const int w = 2 * radius + 1;
  values_.assign(static_cast<std::size_t>(w) * w, Complex(0.0, 0.0));
  const double h = g.h();
  const double h2 = h * h;
  auto put = [&](int d1, int d2, Complex v) {
    values_[static_cast<std::size_t>(d1 + radius) * w + (d2 + radius)] = v;
  };
  for (int d1 = 0; d1 <= radius; ++d1) {
    for (int d2 = 0; d2 <= d1; ++d2) {
      Complex v;
      if (d1 == 0 && d2 == 0) {
        v = central_weight(g.omega, h);
      } else {
        v = green2d(g.omega, h * std::hypot(double(d1), double(d2))) * h2;
      }
      // All eight images of (d1, d2) share the value.
      put(d1, d2, v);
      put(d1, -d2, v);
      put(-d1, d2, v);
      put(-d1, -d2, v);
      put(d2, d1, v);
      put(d2, -d1, v);
      put(-d2, d1, v);
      put(-d2, -d1, v);
    }
  }
}

DenseOperator::DenseOperator(const GridSpec& g, const KernelTable& k,
                             RealVector m)
    : grid_(g), m_(std::move(m)) {
  const int n = g.n;
  Require(k.radius() >= n - 1, "DenseOperator: kernel table radius too small");
  Require(m_.size() == static_cast<std::size_t>(n) * n,
          "DenseOperator: m must have n^2 entries");
  pad_ = next_smooth_size(2 * n - 1);
  const std::size_t p2 = static_cast<std::size_t>(pad_) * pad_;

  work_ = reinterpret_cast<Complex*>(fftw_alloc_complex(p2));
  Require(work_ != nullptr, "DenseOperator: allocation failed");
  fwd_ = fftw_plan_dft_2d(pad_, pad_, reinterpret_cast<fftw_complex*>(work_),
                          reinterpret_cast<fftw_complex*>(work_),
                          FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_2d(pad_, pad_, reinterpret_cast<fftw_complex*>(work_),
                          reinterpret_cast<fftw_complex*>(work_),
                          FFTW_BACKWARD, FFTW_ESTIMATE);

  // Kernel transform, with the inverse-FFT normalization folded in.
  for (std::size_t i = 0; i < p2; ++i) work_[i] = Complex(0.0, 0.0);
  for (int d1 = -(n - 1); d1 <= n - 1; ++d1)
    for (int d2 = -(n - 1); d2 <= n - 1; ++d2)
      work_[static_cast<std::size_t>((d1 + pad_) % pad_) * pad_ +
            (d2 + pad_) % pad_] = k.at(d1, d2);
  fftw_execute(fwd_);
  kernel_hat_.assign(work_, work_ + p2);
  const double inv = 1.0 / static_cast<double>(p2);
  simd::active_kernels().scale(Complex(inv, 0.0), kernel_hat_.data(), p2);
}

DenseOperator::~DenseOperator() {
  if (fwd_) fftw_destroy_plan(fwd_);
  if (bwd_) fftw_destroy_plan(bwd_);
  if (work_) fftw_free(reinterpret_cast<fftw_complex*>(work_));
}

ComplexVector DenseOperator::apply_K(const ComplexVector& v) const {
  const int n = grid_.n;
  Require(v.size() == static_cast<std::size_t>(n) * n,
          "apply_K: field must have n^2 entries");
  const std::size_t p2 = static_cast<std::size_t>(pad_) * pad_;
  const auto& kr = simd::active_kernels();

  std::lock_guard<std::mutex> lock(mu_);
  for (std::size_t i = 0; i < p2; ++i) work_[i] = Complex(0.0, 0.0);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      work_[static_cast<std::size_t>(i1) * pad_ + i2] =
          v[static_cast<std::size_t>(i1) * n + i2];
  fftw_execute(fwd_);
  kr.cmul(kernel_hat_.data(), work_, work_, p2);
  fftw_execute(bwd_);

  ComplexVector out(static_cast<std::size_t>(n) * n);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2)
      out[static_cast<std::size_t>(i1) * n + i2] =
          work_[static_cast<std::size_t>(i1) * pad_ + i2];
  return out;
}

ComplexVector DenseOperator::apply(const ComplexVector& v) const {
  const std::size_t nn = v.size();
  ComplexVector mv(nn);
  for (std::size_t i = 0; i < nn; ++i) mv[i] = m_[i] * v[i];
  ComplexVector out = apply_K(mv);
  const double w2 = grid_.omega * grid_.omega;
  // out = v + omega^2 * (K mv)
  const auto& kr = simd::active_kernels();
  kr.scale(Complex(w2, 0.0), out.data(), nn);
  for (std::size_t i = 0; i < nn; ++i) out[i] += v[i];
  return out;
}

ComplexVector DenseOperator::build_rhs(const ComplexVector& u_inc) const {
  const std::size_t nn = u_inc.size();
  Require(nn == m_.size(), "build_rhs: incident field size mismatch");
  ComplexVector mv(nn);
  for (std::size_t i = 0; i < nn; ++i) mv[i] = m_[i] * u_inc[i];
  ComplexVector g = apply_K(mv);
  const double w2 = grid_.omega * grid_.omega;
  simd::active_kernels().scale(Complex(-w2, 0.0), g.data(), nn);
  return g;
}

}  // namespace lsw
