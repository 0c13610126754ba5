#pragma once

#include <array>

#include "lsw/grid.hpp"
#include "lsw/kernel_op.hpp"
#include "lsw/types.hpp"

namespace lsw {

// Row-major enumeration of the 3x3 neighborhood offsets; slot 4 is (0,0).
inline constexpr int kNbr[9][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0},
                                   {0, 1},   {1, -1}, {1, 0},  {1, 1}};
inline constexpr int kCenterSlot = 4;

inline int nbr_slot(int d1, int d2) { return (d1 + 1) * 3 + (d2 + 1); }

// Rotate v by a unit scalar so that its largest-magnitude entry (first such
// entry in slot order on ties) becomes real and positive.  Fixes the free
// phase of fitted null vectors deterministically.
void normalize_phase(std::array<Complex, 9>& v);

// Compact scheme for the interior: weights u_w (applied to the field) and
// mu_w (applied to m .* field) such that rows
//   sum_d conj(u_w[d]) u(i+d) + omega^2 sum_d conj(mu_w[d]) m(i+d) u(i+d)
// approximately reproduce the integral equation after elimination of the
// far-field kernel columns.  `residual` is the annihilation quality
// sqrt(lambda_min) of the streamed Gram matrix.
struct InteriorStencil {
  std::array<Complex, 9> u_w;
  std::array<Complex, 9> mu_w;
  double residual = 0.0;
};

// u_w is the smallest-eigenvalue eigenvector of the 9x9 Gram matrix
//   G[a][b] = sum_{j in [-n,n]^2 minus the neighborhood} k(mu_a - j)
//             conj(k(mu_b - j)),
// accumulated by streaming over j (the dense kernel block never materializes:
// the needed matrix has 9 x O(n^2) entries but G is all we use).  Requires a
// kernel table of radius n+1.  Rejects a degenerate fit where the two lowest
// eigenvalues coincide to rounding.
InteriorStencil compute_interior_stencil(const GridSpec& g,
                                         const KernelTable& k);

// One-axis complex coordinate stretch x -> x + i sigma(x) with quadratic
// ramps: sigma = -amplitude ((ramp_lo - x)/eta_lo)^2 below ramp_lo, zero on
// [ramp_lo, ramp_hi], +amplitude ((x - ramp_hi)/eta_hi)^2 above ramp_hi.
// A nonpositive eta disables that side.
struct StretchProfile {
  double amplitude = 0.0;
  double ramp_lo = 0.0;
  double ramp_hi = 1.0;
  double eta_lo = 0.0;
  double eta_hi = 0.0;

  double sigma(double x) const {
    if (eta_lo > 0.0 && x < ramp_lo) {
      const double t = (ramp_lo - x) / eta_lo;
      return -amplitude * t * t;
    }
    if (eta_hi > 0.0 && x > ramp_hi) {
      const double t = (x - ramp_hi) / eta_hi;
      return amplitude * t * t;
    }
    return 0.0;
  }
  Complex stretched(double x) const { return {x, sigma(x)}; }
};

// The absorbing collar of the extended lattice: ramps of width eta = b*h
// starting one cell outside the unit box on both sides.
StretchProfile global_stretch(const GridSpec& g);

// Identity stretch (sigma = 0).
StretchProfile no_stretch();

// Left-facing ramp used by the sweep: sigma vanishes at lattice layer
// `zero_layer` and reaches -amplitude at `zero_layer - depth_layers`.
StretchProfile moving_stretch(const GridSpec& g, int zero_layer,
                              int depth_layers);

// The eight compass directions (axis and diagonal unit vectors) used as the
// local wave basis.
const std::array<std::array<double, 2>, 8>& compass_directions();

// 9x8 row-major matrix F[a][r] = exp(i omega_local (dir_r . x^sigma_a)) of
// modified plane waves sampled at the nine stretched neighborhood points.
ComplexVector modified_plane_wave_matrix(
    const std::array<std::array<Complex, 2>, 9>& pts, double omega_local,
    const std::array<std::array<double, 2>, 8>& dirs);

// A fitted absorbing-layer stencil: the unit null vector of the wave matrix
// (applied conjugated in assembly, like the interior weights).
struct PmlStencil {
  std::array<Complex, 9> w;
  double residual = 0.0;  // |w^H F| with unit-normalized columns of F
};

// Left null vector of F after column normalization.  Column normalization
// only rescales the fitted waves, so the null direction is unchanged, but it
// keeps the computation well-conditioned deep in the absorbing region where
// raw wave samples span many orders of magnitude.  Rejects wave matrices
// whose columns are numerically dependent (sigma_8 <= 1e-8 sigma_1).
PmlStencil compute_pml_stencil(
    const std::array<std::array<Complex, 2>, 9>& pts, double omega_local,
    const std::array<std::array<double, 2>, 8>& dirs);

// Stretched neighborhood of lattice point (i1, i2) under per-axis profiles.
std::array<std::array<Complex, 2>, 9> stretched_neighborhood(
    const GridSpec& g, int i1, int i2, const StretchProfile& ax1,
    const StretchProfile& ax2);

}  // namespace lsw
