#include "lsw/gmres.hpp"

#include <cmath>

#include "lsw/simd/kernels.hpp"

namespace lsw {

ComplexVector gmres(const LinearOp& apply_A, const LinearOp& apply_M,
                    const ComplexVector& b, const SolverConfig& cfg,
                    SolveReport& report) {
  Require(cfg.tol > 0.0 && cfg.restart >= 1 && cfg.max_outer >= 1,
          "gmres: bad configuration");
  const std::size_t N = b.size();
  const int m = cfg.restart;
  const auto& kr = simd::active_kernels();

  report = SolveReport{};
  ComplexVector x(N, Complex(0.0, 0.0));

  const ComplexVector r0 = apply_M(b);
  const double beta0 = std::sqrt(kr.norm2sq(r0.data(), N));
  if (beta0 == 0.0) {
    report.converged = true;
    return x;
  }

  std::vector<ComplexVector> V(m + 1);
  ComplexVector hess(static_cast<std::size_t>(m + 1) * m);  // col-major
  RealVector cs(m);      // Givens cosines (real)
  ComplexVector sn(m);   // Givens sines
  ComplexVector g(m + 1);
  auto H = [&](int i, int j) -> Complex& {
    return hess[static_cast<std::size_t>(j) * (m + 1) + i];
  };

  double rel = 1.0;
  for (int outer = 0; outer < cfg.max_outer; ++outer) {
    ComplexVector r;
    if (outer == 0) {
      r = r0;
    } else {
      const ComplexVector Ax = apply_A(x);
      ComplexVector d(N);
      for (std::size_t i = 0; i < N; ++i) d[i] = b[i] - Ax[i];
      r = apply_M(d);
      ++report.restarts;
    }
    const double beta = std::sqrt(kr.norm2sq(r.data(), N));
    if (beta / beta0 <= cfg.tol) {
      report.converged = true;
      report.rel_residual = beta / beta0;
      return x;
    }

    V[0] = std::move(r);
    kr.scale(Complex(1.0 / beta, 0.0), V[0].data(), N);
    std::fill(g.begin(), g.end(), Complex(0.0, 0.0));
    g[0] = beta;

    int k = 0;
    bool stop = false;
    while (k < m && !stop) {
      ComplexVector w = apply_M(apply_A(V[k]));
      // Modified Gram-Schmidt with one reorthogonalization pass.
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= k; ++j) {
          const Complex hjk = kr.dotc(V[j].data(), w.data(), N);
          kr.axpy(-hjk, V[j].data(), w.data(), N);
          if (pass == 0)
            H(j, k) = hjk;
          else
            H(j, k) += hjk;
        }
      }
      const double wn = std::sqrt(kr.norm2sq(w.data(), N));
      if (wn > 0.0) {
        V[k + 1] = std::move(w);
        kr.scale(Complex(1.0 / wn, 0.0), V[k + 1].data(), N);
      }

      // Rotate the new column by the accumulated Givens rotations.
      for (int j = 0; j < k; ++j) {
        const Complex t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
        H(j + 1, k) = -std::conj(sn[j]) * H(j, k) + cs[j] * H(j + 1, k);
        H(j, k) = t;
      }

      // New rotation zeroing the (real, nonnegative) subdiagonal wn against
      // the rotated diagonal entry a.
      const Complex a = H(k, k);
      const double amag = std::abs(a);
      const double rho = std::sqrt(amag * amag + wn * wn);
      if (rho == 0.0) {
        // The subspace already contains the solution exactly.
        ++report.iterations;
        report.history.push_back(rel);
        stop = true;
        break;
      }
      const Complex phase = (amag > 0.0) ? a / amag : Complex(1.0, 0.0);
      cs[k] = amag / rho;
      sn[k] = phase * (wn / rho);
      H(k, k) = phase * rho;
      g[k + 1] = -std::conj(sn[k]) * g[k];
      g[k] = cs[k] * g[k];

      ++report.iterations;
      rel = std::abs(g[k + 1]) / beta0;
      report.history.push_back(rel);
      ++k;
      if (rel <= cfg.tol || wn == 0.0) stop = true;
    }

    // x += V y with y from the triangular system.
    ComplexVector y(k);
    for (int i = k - 1; i >= 0; --i) {
      Complex s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
      y[i] = s / H(i, i);
    }
    for (int j = 0; j < k; ++j) kr.axpy(y[j], V[j].data(), x.data(), N);

    report.rel_residual = rel;
    if (rel <= cfg.tol) {
      report.converged = true;
      return x;
    }
  }
  return x;
}

}  // namespace lsw
