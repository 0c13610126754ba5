#pragma once

#include <array>

#include "lsw/grid.hpp"
#include "lsw/types.hpp"

namespace lsw {

// Rotationally-fitted 9-point Helmholtz scheme used as the accuracy
// reference: with kappa = omega h, the weights annihilate discrete plane
// waves at the two fit angles pi/16 and 3pi/16 (and, by the stencil's
// square symmetry, at all their reflections -- 16 directions total).
// Stencil layout: `center` at (0,0), `edge` on the four axis neighbors,
// `corner` on the four diagonal neighbors, normalized to center = 4.
struct SymmetricNinePoint {
  double center = 0.0;
  double edge = 0.0;
  double corner = 0.0;

  double weight(int d1, int d2) const {
    const int a = std::abs(d1) + std::abs(d2);
    return a == 0 ? center : (a == 1 ? edge : corner);
  }
};

// Requires 0 < kappa < pi.
SymmetricNinePoint reference_nine_point(double kappa);

// Residual of the scheme on the discrete plane wave of direction angle
// `theta`: |sum_d w_d exp(i kappa (cos theta d1 + sin theta d2))|.
double plane_wave_residual(const SymmetricNinePoint& s, double kappa,
                           double theta);

enum class HomogeneousScheme { kFitted, kReference };

// Free-space point-source solve used by the accuracy study: the chosen
// interior scheme on {0..n+1}^2, fitted absorbing rows on a collar of
// DOUBLED width (2b) and doubled strength, a unit source at the central
// cell, solved by one banded factorization.  Returns the field on {1..n}^2.
//
// For the fitted scheme the right-hand side carries the near-field weights
// divided by h^2, which reproduces the kernel's physical amplitude; the
// reference scheme takes a bare unit source (its scale is irrelevant to
// phase comparisons).
//
// Test hook: `exact_green` skips the solve and returns the sampled kernel
// itself (the comparison map must then vanish identically).
//
// `collar_scale` multiplies both the collar width and the absorption
// strength; the default 2 isolates interior-scheme error, while 1 probes the
// production collar itself (used by the absorption calibration).
ComplexVector solve_homogeneous(const GridSpec& g, HomogeneousScheme scheme,
                                bool exact_green = false,
                                int collar_scale = 2);

// Cell index (one axis) of the source used by solve_homogeneous.
int source_cell(const GridSpec& g);

// Phase discrepancy of a field against the outgoing kernel centered at the
// source cell: delta_i = arg(u_i conj(G(p_i - p_src))) / 2pi cycles, with
// the 3x3 block around the source excluded, the median over valid points
// removed (phase gauge), and points with |delta| >= 0.45 flagged as too
// close to the branch cut for safe unwrapping.
struct PhaseErrorMap {
  int n = 0;
  RealVector delta;             // n^2, zero at invalid points
  std::vector<uint8_t> valid;   // n^2
  double max_abs = 0.0;
  double rel_phase_error = 0.0;  // max_abs / (omega / 2pi)
  int unsafe_count = 0;
};

PhaseErrorMap phase_error(const GridSpec& g, const ComplexVector& u);

}  // namespace lsw
