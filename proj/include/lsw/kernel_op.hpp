#pragma once

#include <memory>
#include <mutex>

#include "lsw/grid.hpp"
#include "lsw/types.hpp"

struct fftw_plan_s;

namespace lsw {

// Translation-invariant kernel samples k_d = G(|d| h) h^2 for lattice offsets
// |d|_inf <= radius, with the singular d = 0 entry replaced by the exact
// integral of the kernel over one cell.  Values depend on |d| only; the
// builder exploits that by evaluating one octant.
class KernelTable {
 public:
  KernelTable(const GridSpec& g, int radius);

  int radius() const { return radius_; }
  Complex at(int d1, int d2) const {
    return values_[static_cast<std::size_t>(d1 + radius_) * (2 * radius_ + 1) +
                   (d2 + radius_)];
  }
  Complex center() const { return at(0, 0); }

  // Test hook: corrupt the central entry (proves the self-test suite trips).
  void corrupt_for_test() {
    values_[static_cast<std::size_t>(radius_) * (2 * radius_ + 1) + radius_] +=
        Complex(1e-3, 0.0);
  }

 private:
  int radius_;
  ComplexVector values_;
};

// The discretized integral operator applied through padded FFTs.
//
// Fields live on the interior lattice {1..n}^2 flattened row-major.  The
// convolution uses a square FFT of size pad >= 2n-1 with pad restricted to
// products of 2, 3, 5, 7; the kernel transform is precomputed.  Plans are
// created once with deterministic (estimate-mode) planning; applications
// reuse an internal workspace under a lock, so concurrent calls are safe.
class DenseOperator {
 public:
  // `m` is the scattering profile on {1..n}^2 (zero outside), length n^2.
  DenseOperator(const GridSpec& g, const KernelTable& k, RealVector m);
  ~DenseOperator();
  DenseOperator(const DenseOperator&) = delete;
  DenseOperator& operator=(const DenseOperator&) = delete;

  const GridSpec& grid() const { return grid_; }
  const RealVector& m() const { return m_; }
  int pad() const { return pad_; }

  // y = K v  (pure convolution with the kernel table).
  ComplexVector apply_K(const ComplexVector& v) const;

  // y = v + omega^2 K (m . v)  -- the full integral-equation operator.
  ComplexVector apply(const ComplexVector& v) const;

  // g = -omega^2 K (m . u_inc) for an incident field sampled on {1..n}^2.
  ComplexVector build_rhs(const ComplexVector& u_inc) const;

 private:
  GridSpec grid_;
  RealVector m_;
  int pad_;
  ComplexVector kernel_hat_;  // forward transform of the embedded kernel / pad^2
  mutable std::mutex mu_;
  mutable Complex* work_ = nullptr;  // fftw-aligned pad^2 buffer
  fftw_plan_s* fwd_ = nullptr;
  fftw_plan_s* bwd_ = nullptr;
};

// Smallest integer >= k whose prime factors are all in {2, 3, 5, 7}.
int next_smooth_size(int k);

}  // namespace lsw
