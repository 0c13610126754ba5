#pragma once

#include <string>

#include "lsw/types.hpp"

namespace lsw {

// Complex banded LU with partial pivoting (LAPACK zgbtrf/zgbtrs behind the
// scenes).  Column-major band storage with the usual extra kl rows of fill.
class BandedLU {
 public:
  BandedLU(int n, int kl, int ku);

  int order() const { return n_; }
  int ldab() const { return ldab_; }
  std::size_t stored_entries() const { return ab_.size(); }

  // Stage entry A(i, j); |i - j| must lie within the band.
  void set(int i, int j, Complex v) { ab_[slot(i, j)] = v; }
  void add(int i, int j, Complex v) { ab_[slot(i, j)] += v; }

  // Factor in place.  `context` tags error messages (e.g. a slab index).
  // Rejects exactly singular matrices and pivots below 1e-14 of the largest.
  void factor(const std::string& context);

  // Solve A x = rhs in place (one right-hand side).  Requires factor().
  void solve(ComplexVector& rhs) const;

 private:
  std::size_t slot(int i, int j) const {
    Require(i >= 0 && i < n_ && j >= 0 && j < n_ && i - j <= kl_ &&
                j - i <= ku_,
            "BandedLU: entry outside band");
    return static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j);
  }

  int n_, kl_, ku_, ldab_;
  bool factored_ = false;
  ComplexVector ab_;
  std::vector<int> ipiv_;
};

// Eigen-decomposition of a Hermitian matrix given in row-major order.
// Returns eigenvalues ascending; `vectors` receives orthonormal eigenvectors
// as columns (vectors[i*n + k] = component i of eigenvector k).
void hermitian_eig(int n, const ComplexVector& a, RealVector& values,
                   ComplexVector& vectors);

// Singular values (descending) of a general m x n row-major matrix.
RealVector singular_values(int m, int n, ComplexVector a);

// Dense LU solve (row-major), one right-hand side.  Test-oracle use only.
void dense_solve(int n, ComplexVector a, ComplexVector& rhs);

}  // namespace lsw
