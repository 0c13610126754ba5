#include "lsw/selftest.hpp"

#include <cmath>
#include <numbers>

#include "lsw/kernel_op.hpp"
#include "lsw/linalg.hpp"
#include "lsw/pml_table.hpp"
#include "lsw/sparse_system.hpp"
#include "lsw/special.hpp"
#include "lsw/stencil.hpp"
#include "lsw/sweep.hpp"
#include "lsw/velocity.hpp"

namespace lsw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double rel_diff(const ComplexVector& a, const ComplexVector& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Check 1: the padded-FFT operator against a direct double sum whose kernel
// values come straight from the Hankel kernel and the central cell integral
// (independent of the operator's internal table).
SelftestCheck check_fft_vs_direct(FaultInjection fault) {
  SelftestCheck c{"operator-fft-vs-direct", false, 0.0, 1e-12};
  double worst = 0.0;
  for (int n : {5, 9, 14}) {
    GridSpec g{kTwoPi, n, 2, 10.0};
    const double h = g.h();

    KernelTable table(g, n + 1);
    if (fault == FaultInjection::kKernelTable) table.corrupt_for_test();

    SeededRng rng(1234 + static_cast<std::uint64_t>(n));
    RealVector m(static_cast<std::size_t>(n) * n);
    ComplexVector v(m.size());
    for (auto& x : m) x = 0.4 * (rng.uniform() - 0.5);
    for (auto& x : v) x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);

    DenseOperator op(g, table, m);
    const ComplexVector fast = op.apply(v);

    const Complex k0 = central_weight(g.omega, h);
    ComplexVector slow(v.size());
    for (int i1 = 1; i1 <= n; ++i1)
      for (int i2 = 1; i2 <= n; ++i2) {
        Complex acc(0.0, 0.0);
        for (int j1 = 1; j1 <= n; ++j1)
          for (int j2 = 1; j2 <= n; ++j2) {
            const std::size_t j =
                static_cast<std::size_t>(j1 - 1) * n + (j2 - 1);
            const Complex mv = m[j] * v[j];
            if (i1 == j1 && i2 == j2) {
              acc += k0 * mv;
            } else {
              const double r = std::hypot((i1 - j1) * h, (i2 - j2) * h);
              acc += green2d(g.omega, r) * (h * h) * mv;
            }
          }
        slow[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] =
            v[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] +
            g.omega * g.omega * acc;
      }
    worst = std::max(worst, rel_diff(fast, slow));
  }
  c.observed = worst;
  c.passed = worst <= c.threshold;
  return c;
}

// Check 2: the streamed-Gram route for the interior fit against an explicit
// singular value decomposition of the 9 x M far-field block.
SelftestCheck check_gram_vs_svd() {
  SelftestCheck c{"interior-fit-vs-svd", false, 0.0, 1e-8};
  const int n = 16;
  GridSpec g{kTwoPi * 2.0, n, 4, 10.0};
  KernelTable table(g, n + 1);
  const InteriorStencil fit = compute_interior_stencil(g, table);

  const int cols = (2 * n + 1) * (2 * n + 1) - 9;
  ComplexVector a(static_cast<std::size_t>(9) * cols);
  int col = 0;
  for (int j1 = -n; j1 <= n; ++j1)
    for (int j2 = -n; j2 <= n; ++j2) {
      if (std::abs(j1) <= 1 && std::abs(j2) <= 1) continue;
      for (int r = 0; r < 9; ++r)
        a[static_cast<std::size_t>(r) * cols + col] =
            table.at(kNbr[r][0] - j1, kNbr[r][1] - j2);
      ++col;
    }
  const RealVector sv = singular_values(9, cols, std::move(a));
  c.observed = std::abs(sv.back() - fit.residual) / sv.front();
  c.passed = c.observed <= c.threshold;
  return c;
}

// Check 3: the sweep with exact cumulative subproblems must reproduce a
// dense LU solve of the full sparse system to rounding.
SelftestCheck check_sweep_vs_dense() {
  SelftestCheck c{"sweep-exact-vs-dense", false, 0.0, 1e-8};
  const int n = 20, b = 4;
  GridSpec g{kTwoPi * 2.0, n, b, 10.0};

  const PerturbationField field =
      gaussian_velocity(g, {{0.45, 0.6}}, {-0.2}, {0.15});
  KernelTable table(g, n + 1);
  const InteriorStencil interior = compute_interior_stencil(g, table);
  const BoundaryStencilTable collar(g);
  const StencilMatrix H = assemble_sparse_system(g, field, interior, collar);

  const int side = H.side;
  const std::size_t dof = H.dof();
  ComplexVector dense(dof * dof, Complex(0.0, 0.0));
  for (std::size_t e = 0; e < dof; ++e) {
    const int s1 = static_cast<int>(e) / side;
    const int s2 = static_cast<int>(e) % side;
    for (int k = 0; k < 9; ++k) {
      const int t1 = s1 + kNbr[k][0];
      const int t2 = s2 + kNbr[k][1];
      if (t1 < 0 || t1 >= side || t2 < 0 || t2 >= side) continue;
      dense[e * dof + (static_cast<std::size_t>(t1) * side + t2)] +=
          H.plane[static_cast<std::size_t>(k)][e];
    }
  }

  SeededRng rng(99);
  ComplexVector f(dof);
  for (auto& x : f) x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);

  ComplexVector ref = f;
  dense_solve(static_cast<int>(dof), std::move(dense), ref);

  SweepPreconditioner::Options opt;
  opt.exact_subblocks = true;
  SweepPreconditioner sweep(g, field, H, partition_slices(g), opt);
  const ComplexVector got = sweep.apply_extended(f);

  c.observed = rel_diff(got, ref);
  c.passed = c.observed <= c.threshold;
  return c;
}

// Check 4: every fitted absorbing stencil (global collar table and moving
// ramp table) annihilates its normalized wave basis to near rounding.
SelftestCheck check_ramp_residuals() {
  SelftestCheck c{"ramp-stencil-residuals", false, 0.0, 1e-10};
  const int n = 20, b = 4;
  GridSpec g{kTwoPi * 2.0, n, b, 10.0};

  double worst = 0.0;
  const BoundaryStencilTable collar(g);
  for (int c1 = 0; c1 <= 2 * b; ++c1)
    for (int c2 = 0; c2 <= 2 * b; ++c2) {
      if (c1 == 0 && c2 == 0) continue;
      worst = std::max(worst, collar.at_class(c1, c2).residual);
    }

  const PerturbationField field =
      gaussian_velocity(g, {{0.45, 0.6}}, {-0.2}, {0.15});
  const MovingRampTable ramps(g, field, ramp_depths_for(g, partition_slices(g)));
  ramps.for_each(
      [&](const PmlStencil& s) { worst = std::max(worst, s.residual); });

  c.observed = worst;
  c.passed = worst <= c.threshold;
  return c;
}

}  // namespace

SelftestResult run_selftest(FaultInjection fault, std::ostream* log) {
  SelftestResult result;
  result.checks.push_back(check_fft_vs_direct(fault));
  result.checks.push_back(check_gram_vs_svd());
  result.checks.push_back(check_sweep_vs_dense());
  result.checks.push_back(check_ramp_residuals());
  for (const auto& c : result.checks) {
    result.ok = result.ok && c.passed;
    if (log)
      (*log) << (c.passed ? "PASS" : "FAIL") << "  " << c.name
             << "  observed=" << c.observed << "  bound=" << c.threshold
             << "\n";
  }
  return result;
}

}  // namespace lsw
