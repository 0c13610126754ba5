#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <cmath>

#include "lsw/linalg.hpp"

namespace lsw {

namespace {
lapack_complex_double* lp(ComplexVector& v) {
  return reinterpret_cast<lapack_complex_double*>(v.data());
}
}  // namespace

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
  Require(n >= 1 && kl >= 0 && ku >= 0, "BandedLU: bad dimensions");
  ab_.assign(static_cast<std::size_t>(ldab_) * n_, Complex(0.0, 0.0));
  ipiv_.assign(n_, 0);
}

void BandedLU::factor(const std::string& context) {
  const lapack_int info =
      LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, lp(ab_), ldab_,
                     ipiv_.data());
  if (info != 0)
    throw NumericalError("banded factorization failed (" + context +
                         "): info=" + std::to_string(info));
  // U's diagonal sits at band row kl+ku after pivoting; flag near-breakdown.
  double dmax = 0.0, dmin = 0.0;
  for (int j = 0; j < n_; ++j) {
    const double d =
        std::abs(ab_[static_cast<std::size_t>(j) * ldab_ + kl_ + ku_]);
    dmax = std::max(dmax, d);
    dmin = (j == 0) ? d : std::min(dmin, d);
  }
  if (dmin < 1e-14 * dmax)
    throw NumericalError("banded factor numerically singular (" + context +
                         ")");
  factored_ = true;
}

void BandedLU::solve(ComplexVector& rhs) const {
  Require(factored_, "BandedLU::solve before factor");
  Require(rhs.size() == static_cast<std::size_t>(n_),
          "BandedLU::solve: rhs size mismatch");
  auto* ab = reinterpret_cast<lapack_complex_double*>(
      const_cast<Complex*>(ab_.data()));
  const lapack_int info =
      LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, 1, ab, ldab_,
                     ipiv_.data(), lp(rhs), n_);
  if (info != 0)
    throw NumericalError("banded solve failed: info=" + std::to_string(info));
}

void hermitian_eig(int n, const ComplexVector& a, RealVector& values,
                   ComplexVector& vectors) {
  Require(a.size() == static_cast<std::size_t>(n) * n,
          "hermitian_eig: size mismatch");
  vectors = a;
  values.assign(n, 0.0);
  const lapack_int info = LAPACKE_zheev(LAPACK_ROW_MAJOR, 'V', 'L', n,
                                        lp(vectors), n, values.data());
  if (info != 0)
    throw NumericalError("zheev failed: info=" + std::to_string(info));
}

RealVector singular_values(int m, int n, ComplexVector a) {
  Require(a.size() == static_cast<std::size_t>(m) * n,
          "singular_values: size mismatch");
  const int k = std::min(m, n);
  RealVector s(k);
  RealVector superb(k > 1 ? k - 1 : 1);
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_ROW_MAJOR, 'N', 'N', m, n, lp(a), n, s.data(),
                     nullptr, 1, nullptr, 1, superb.data());
  if (info != 0)
    throw NumericalError("zgesvd failed: info=" + std::to_string(info));
  return s;
}

void dense_solve(int n, ComplexVector a, ComplexVector& rhs) {
  Require(a.size() == static_cast<std::size_t>(n) * n &&
              rhs.size() == static_cast<std::size_t>(n),
          "dense_solve: size mismatch");
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, 1, lp(a), n,
                                        ipiv.data(), lp(rhs), 1);
  if (info != 0)
    throw NumericalError("zgesv failed: info=" + std::to_string(info));
}

}  // namespace lsw
