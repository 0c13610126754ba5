#include "lsw/stencil.hpp"

#include <cmath>

#include "lsw/linalg.hpp"

namespace lsw {

void normalize_phase(std::array<Complex, 9>& v) {
  int best = 0;
  double mag = -1.0;
  for (int a = 0; a < 9; ++a) {
    const double m = std::abs(v[a]);
    if (m > mag) {
      mag = m;
      best = a;
    }
  }
  if (mag <= 0.0) throw NumericalError("normalize_phase: zero vector");
  const Complex rot = std::conj(v[best]) / mag;
  for (auto& x : v) x *= rot;
  v[best] = Complex(v[best].real(), 0.0);  // clear rounding dust
}

InteriorStencil compute_interior_stencil(const GridSpec& g,
                                         const KernelTable& k) {
  const int n = g.n;
  Require(k.radius() >= n + 1,
          "compute_interior_stencil: kernel table radius must be >= n+1");

  // Stream the 9x9 Gram matrix over all far-field columns.
  std::array<Complex, 81> gram{};
  std::array<Complex, 9> v;
  for (int j1 = -n; j1 <= n; ++j1) {
    for (int j2 = -n; j2 <= n; ++j2) {
      if (std::abs(j1) <= 1 && std::abs(j2) <= 1) continue;
      for (int a = 0; a < 9; ++a)
        v[a] = k.at(kNbr[a][0] - j1, kNbr[a][1] - j2);
      for (int a = 0; a < 9; ++a) {
        const Complex va = v[a];
        for (int c = 0; c < 9; ++c) gram[a * 9 + c] += va * std::conj(v[c]);
      }
    }
  }

  RealVector lambda;
  ComplexVector vecs;
  hermitian_eig(9, ComplexVector(gram.begin(), gram.end()), lambda, vecs);

  const double lmax = std::max(lambda[8], 0.0);
  if (lambda[1] - lambda[0] <= 1e-14 * lmax)
    throw NumericalError(
        "compute_interior_stencil: near-degenerate fit (two annihilating "
        "directions)");

  InteriorStencil s;
  for (int a = 0; a < 9; ++a) s.u_w[a] = vecs[a * 9 + 0];
  normalize_phase(s.u_w);
  s.residual = std::sqrt(std::max(lambda[0], 0.0));

  // mu_w from the near-field block: conj(mu_w[e]) = sum_a conj(u_w[a])
  // k(mu_a - mu_e).
  for (int e = 0; e < 9; ++e) {
    Complex acc(0.0, 0.0);
    for (int a = 0; a < 9; ++a)
      acc += std::conj(s.u_w[a]) *
             k.at(kNbr[a][0] - kNbr[e][0], kNbr[a][1] - kNbr[e][1]);
    s.mu_w[e] = std::conj(acc);
  }
  return s;
}

StretchProfile global_stretch(const GridSpec& g) {
  StretchProfile p;
  p.amplitude = g.c_pml / g.omega;
  p.ramp_lo = -g.h();
  p.ramp_hi = 1.0 + g.h();
  p.eta_lo = g.eta();
  p.eta_hi = g.eta();
  return p;
}

StretchProfile no_stretch() { return StretchProfile{}; }

StretchProfile moving_stretch(const GridSpec& g, int zero_layer,
                              int depth_layers) {
  Require(depth_layers >= 1, "moving_stretch: depth must be >= 1");
  StretchProfile p;
  p.amplitude = g.c_pml / g.omega;
  p.ramp_lo = zero_layer * g.h();
  p.eta_lo = depth_layers * g.h();
  p.ramp_hi = 1e300;  // no upper ramp
  p.eta_hi = 0.0;
  return p;
}

const std::array<std::array<double, 2>, 8>& compass_directions() {
  static const double s = 1.0 / std::sqrt(2.0);
  static const std::array<std::array<double, 2>, 8> dirs = {{
      {0.0, 1.0},    // N
      {0.0, -1.0},   // S
      {-1.0, 0.0},   // W
      {1.0, 0.0},    // E
      {-s, s},       // NW
      {s, s},        // NE
      {-s, -s},      // SW
      {s, -s},       // SE
  }};
  return dirs;
}

std::array<std::array<Complex, 2>, 9> stretched_neighborhood(
    const GridSpec& g, int i1, int i2, const StretchProfile& ax1,
    const StretchProfile& ax2) {
  std::array<std::array<Complex, 2>, 9> pts;
  const double h = g.h();
  for (int a = 0; a < 9; ++a) {
    pts[a][0] = ax1.stretched((i1 + kNbr[a][0]) * h);
    pts[a][1] = ax2.stretched((i2 + kNbr[a][1]) * h);
  }
  return pts;
}

ComplexVector modified_plane_wave_matrix(
    const std::array<std::array<Complex, 2>, 9>& pts, double omega_local,
    const std::array<std::array<double, 2>, 8>& dirs) {
  Require(omega_local > 0.0,
          "modified_plane_wave_matrix: omega_local must be positive");
  ComplexVector f(9 * 8);
  for (int a = 0; a < 9; ++a) {
    for (int r = 0; r < 8; ++r) {
      const Complex phase =
          Complex(0.0, omega_local) *
          (dirs[r][0] * pts[a][0] + dirs[r][1] * pts[a][1]);
      f[a * 8 + r] = std::exp(phase);
    }
  }
  return f;
}

PmlStencil compute_pml_stencil(
    const std::array<std::array<Complex, 2>, 9>& pts, double omega_local,
    const std::array<std::array<double, 2>, 8>& dirs) {
  ComplexVector f = modified_plane_wave_matrix(pts, omega_local, dirs);

  // Unit-normalize columns (pure rescaling of the fitted waves).
  for (int r = 0; r < 8; ++r) {
    double s = 0.0;
    for (int a = 0; a < 9; ++a) s += std::norm(f[a * 8 + r]);
    s = std::sqrt(s);
    if (!(s > 0.0) || !std::isfinite(s))
      throw NumericalError("compute_pml_stencil: wave column under/overflow");
    for (int a = 0; a < 9; ++a) f[a * 8 + r] /= s;
  }

  // Orthonormalize the columns (two-pass MGS), then project the best
  // coordinate direction out of their span; the double projection pushes the
  // residual to rounding regardless of the columns' conditioning.  Numerical
  // dependence among the wave directions surfaces as a vanishing MGS norm
  // (or, failing that, as a lost null direction below).
  std::array<std::array<Complex, 9>, 8> q;
  for (int r = 0; r < 8; ++r) {
    for (int a = 0; a < 9; ++a) q[r][a] = f[a * 8 + r];
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < r; ++p) {
        Complex dot(0.0, 0.0);
        for (int a = 0; a < 9; ++a) dot += std::conj(q[p][a]) * q[r][a];
        for (int a = 0; a < 9; ++a) q[r][a] -= dot * q[p][a];
      }
    double nrm = 0.0;
    for (int a = 0; a < 9; ++a) nrm += std::norm(q[r][a]);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12)
      throw NumericalError(
          "compute_pml_stencil: wave directions numerically dependent");
    for (int a = 0; a < 9; ++a) q[r][a] /= nrm;
  }

  int best = 0;
  double best_out = -1.0;
  for (int a = 0; a < 9; ++a) {
    double in = 0.0;
    for (int r = 0; r < 8; ++r) in += std::norm(q[r][a]);
    const double out = 1.0 - in;
    if (out > best_out) {
      best_out = out;
      best = a;
    }
  }

  std::array<Complex, 9> w{};
  w[best] = Complex(1.0, 0.0);
  for (int pass = 0; pass < 2; ++pass)
    for (int r = 0; r < 8; ++r) {
      Complex dot(0.0, 0.0);
      for (int a = 0; a < 9; ++a) dot += std::conj(q[r][a]) * w[a];
      for (int a = 0; a < 9; ++a) w[a] -= dot * q[r][a];
    }
  double nrm = 0.0;
  for (int a = 0; a < 9; ++a) nrm += std::norm(w[a]);
  nrm = std::sqrt(nrm);
  if (nrm < 1e-8)
    throw NumericalError("compute_pml_stencil: null direction lost");
  for (auto& x : w) x /= nrm;
  normalize_phase(w);

  PmlStencil out;
  out.w = w;
  double res = 0.0;
  for (int r = 0; r < 8; ++r) {
    Complex acc(0.0, 0.0);
    for (int a = 0; a < 9; ++a) acc += std::conj(w[a]) * f[a * 8 + r];
    res += std::norm(acc);
  }
  out.residual = std::sqrt(res);
  return out;
}

}  // namespace lsw
