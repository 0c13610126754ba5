#include "lsw/stencil_eval.hpp"

#include <algorithm>
#include <cmath>

#include "lsw/kernel_op.hpp"
#include "lsw/linalg.hpp"
#include "lsw/pml_table.hpp"
#include "lsw/special.hpp"
#include "lsw/stencil.hpp"

namespace lsw {

SymmetricNinePoint reference_nine_point(double kappa) {
  Require(kappa > 0.0 && kappa < M_PI,
          "reference_nine_point: kappa must lie in (0, pi)");
  // Annihilation conditions at the fit angles th: with c = cos(kappa cos th)
  // and s = cos(kappa sin th),
  //   center + 2 edge (c + s) + 4 corner c s = 0.
  const double c1 = std::cos(kappa * std::cos(M_PI / 16.0));
  const double s1 = std::cos(kappa * std::sin(M_PI / 16.0));
  const double c2 = std::cos(kappa * std::cos(3.0 * M_PI / 16.0));
  const double s2 = std::cos(kappa * std::sin(3.0 * M_PI / 16.0));
  const double det = c2 * s2 * (c1 + s1) - c1 * s1 * (c2 + s2);
  if (std::abs(det) < 1e-300)
    throw NumericalError("reference_nine_point: degenerate fit angles");
  SymmetricNinePoint w;
  w.center = 4.0;
  w.edge = 2.0 * (c1 * s1 - c2 * s2) / det;
  w.corner = (c2 + s2 - c1 - s1) / det;
  return w;
}

double plane_wave_residual(const SymmetricNinePoint& s, double kappa,
                           double theta) {
  const double cx = std::cos(kappa * std::cos(theta));
  const double cy = std::cos(kappa * std::sin(theta));
  // Real by symmetry: center + 2 edge (cx + cy) + 4 corner cx cy.
  return std::abs(s.center + 2.0 * s.edge * (cx + cy) +
                  4.0 * s.corner * cx * cy);
}

int source_cell(const GridSpec& g) { return (g.n + 1) / 2; }

ComplexVector solve_homogeneous(const GridSpec& g, HomogeneousScheme scheme,
                                bool exact_green, int collar_scale) {
  Require(collar_scale >= 1, "solve_homogeneous: collar_scale must be >= 1");
  const int n = g.n;
  const int c = source_cell(g);
  const double h = g.h();

  if (exact_green) {
    ComplexVector u(static_cast<std::size_t>(n) * n);
    for (int i1 = 1; i1 <= n; ++i1)
      for (int i2 = 1; i2 <= n; ++i2) {
        const double r = h * std::hypot(double(i1 - c), double(i2 - c));
        u[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] =
            (r > 0.0) ? green2d(g.omega, r) : Complex(0.0, 0.0);
      }
    return u;
  }

  // Scaled collar width and strength (doubled for the accuracy study).
  GridSpec ge = g;
  ge.b = collar_scale * g.b;
  ge.c_pml = collar_scale * g.c_pml;
  const int be = ge.b;
  const int Se = ge.side();

  // Interior weights.
  std::array<Complex, 9> row{};
  std::array<Complex, 9> rhs_w{};
  if (scheme == HomogeneousScheme::kFitted) {
    KernelTable kt(g, n + 1);
    const InteriorStencil is = compute_interior_stencil(g, kt);
    for (int k = 0; k < 9; ++k) {
      row[k] = std::conj(is.u_w[k]);
      // Source column through the near-field weights: the unit point source
      // has density 1/h^2 over its cell.
      rhs_w[k] = std::conj(is.mu_w[k]) / (h * h);
    }
  } else {
    const SymmetricNinePoint q = reference_nine_point(g.omega * h);
    for (int k = 0; k < 9; ++k)
      row[k] = Complex(q.weight(kNbr[k][0], kNbr[k][1]), 0.0);
    rhs_w[kCenterSlot] = Complex(1.0, 0.0);
  }

  const BoundaryStencilTable collar(ge);

  const int kd = Se + 1;
  BandedLU lu(Se * Se, kd, kd);
  ComplexVector rhs(static_cast<std::size_t>(Se) * Se, Complex(0.0, 0.0));
  auto idx = [&](int t1, int t2) { return (t1 + be) * Se + (t2 + be); };

  for (int t1 = -be; t1 <= n + 1 + be; ++t1) {
    const bool in1 = (t1 >= 0 && t1 <= n + 1);
    for (int t2 = -be; t2 <= n + 1 + be; ++t2) {
      const bool interior_row = in1 && (t2 >= 0 && t2 <= n + 1);
      const std::array<Complex, 9>* w = &row;
      std::array<Complex, 9> cw;
      if (!interior_row) {
        const PmlStencil& ps = collar.at(t1, t2);
        for (int k = 0; k < 9; ++k) cw[k] = std::conj(ps.w[k]);
        w = &cw;
      }
      const int r = idx(t1, t2);
      for (int k = 0; k < 9; ++k) {
        const int u1 = t1 + kNbr[k][0], u2 = t2 + kNbr[k][1];
        if (u1 < -be || u1 > n + 1 + be || u2 < -be || u2 > n + 1 + be)
          continue;
        lu.set(r, idx(u1, u2), (*w)[k]);
      }
      if (interior_row && std::abs(t1 - c) <= 1 && std::abs(t2 - c) <= 1)
        rhs[r] = rhs_w[nbr_slot(c - t1, c - t2)];
    }
  }
  lu.factor("homogeneous stencil study");
  lu.solve(rhs);

  ComplexVector u(static_cast<std::size_t>(n) * n);
  for (int i1 = 1; i1 <= n; ++i1)
    for (int i2 = 1; i2 <= n; ++i2)
      u[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] = rhs[idx(i1, i2)];
  return u;
}

PhaseErrorMap phase_error(const GridSpec& g, const ComplexVector& u) {
  const int n = g.n;
  Require(u.size() == static_cast<std::size_t>(n) * n,
          "phase_error: field must have n^2 entries");
  const int c = source_cell(g);
  const double h = g.h();

  PhaseErrorMap map;
  map.n = n;
  map.delta.assign(u.size(), 0.0);
  map.valid.assign(u.size(), 0);

  RealVector vals;
  vals.reserve(u.size());
  for (int i1 = 1; i1 <= n; ++i1) {
    for (int i2 = 1; i2 <= n; ++i2) {
      if (std::abs(i1 - c) <= 1 && std::abs(i2 - c) <= 1) continue;
      const std::size_t e = static_cast<std::size_t>(i1 - 1) * n + (i2 - 1);
      const Complex ref =
          green2d(g.omega, h * std::hypot(double(i1 - c), double(i2 - c)));
      const Complex z = u[e] * std::conj(ref);
      if (std::abs(z) == 0.0) continue;  // dead point; leave invalid
      map.delta[e] = std::arg(z) / (2.0 * M_PI);
      map.valid[e] = 1;
      vals.push_back(map.delta[e]);
    }
  }
  Require(!vals.empty(), "phase_error: no valid points");

  // Remove the free phase gauge: median over valid points (lower median,
  // which is deterministic).
  RealVector sorted = vals;
  std::nth_element(sorted.begin(), sorted.begin() + (sorted.size() - 1) / 2,
                   sorted.end());
  const double gauge = sorted[(sorted.size() - 1) / 2];

  map.max_abs = 0.0;
  map.unsafe_count = 0;
  for (std::size_t e = 0; e < map.delta.size(); ++e) {
    if (!map.valid[e]) continue;
    map.delta[e] -= gauge;
    const double a = std::abs(map.delta[e]);
    map.max_abs = std::max(map.max_abs, a);
    if (a >= 0.45) ++map.unsafe_count;
  }
  map.rel_phase_error = map.max_abs / (g.omega / (2.0 * M_PI));
  return map;
}

}  // namespace lsw
