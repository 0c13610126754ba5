#pragma once

#include "lsw/types.hpp"

namespace lsw {

// Cylinder functions of order zero (thin wrappers over a vetted library
// implementation; unit tests pin them against frozen multiprecision values).
double bessel_j0(double x);
double bessel_y0(double x);

// Outgoing free-space kernel of the 2D Helmholtz operator at frequency
// omega, evaluated at distance r = |x| > 0:  (i/4) * H0^(1)(omega r).
Complex green2d(double omega, double r);

// Nodes and weights of the q-point Gauss-Legendre rule on [-1, 1],
// ascending nodes.  Computed by Newton iteration on the Legendre recurrence;
// results are cached per order.
struct GaussRule {
  RealVector node;
  RealVector weight;
};
const GaussRule& gauss_legendre(int q);

// Integral of the kernel over the singular central cell [-h/2, h/2]^2.
//
// The integrand splits as G(r) = -(1/2pi) ln(r) J0(omega r) + E(r) with E
// analytic in r^2.  The log part integrates in closed form (for the leading
// term) and by a rapidly convergent power series in polar coordinates (for
// the J0-1 remainder); E is handled by tensor Gauss quadrature.  The result
// is checked internally by doubling both quadrature orders; disagreement
// above 1e-10 relative is an error.  Requires 0 < omega*h < pi.
Complex central_weight(double omega, double h);

}  // namespace lsw
