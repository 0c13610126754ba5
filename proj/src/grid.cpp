#include "lsw/grid.hpp"

#include <cmath>

namespace lsw {

GridSpec make_grid(double omega, double ppw, int b, double c_pml) {
  Require(omega > 0.0, "make_grid: omega must be positive");
  Require(ppw > 0.0, "make_grid: points-per-wavelength must be positive");
  Require(b >= 2, "make_grid: need at least two absorbing layers");
  Require(c_pml > 0.0, "make_grid: absorption strength must be positive");

  const double target = ppw * omega / (2.0 * M_PI);
  // n+1 >= target, forgiving ~1 ulp of slack on exact integers.
  const int np1 = static_cast<int>(std::ceil(target * (1.0 - 1e-12)));
  const int n = np1 - 1;
  Require(n >= 2 * b + 2,
          "make_grid: grid too coarse for the requested absorbing width "
          "(need n >= 2b+2)");
  GridSpec g;
  g.omega = omega;
  g.n = n;
  g.b = b;
  g.c_pml = c_pml;
  return g;
}

ComplexField plane_wave(const GridSpec& g, double dir1, double dir2) {
  ComplexField u(1, g.n);
  const double h = g.h();
  for (int i1 = 1; i1 <= g.n; ++i1) {
    for (int i2 = 1; i2 <= g.n; ++i2) {
      const double phase = g.omega * (dir1 * i1 * h + dir2 * i2 * h);
      u.at(i1, i2) = Complex(std::cos(phase), std::sin(phase));
    }
  }
  return u;
}

}  // namespace lsw
