#include "lsw/special.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <map>
#include <mutex>

namespace lsw {

double bessel_j0(double x) { return boost::math::cyl_bessel_j(0, x); }
double bessel_y0(double x) { return boost::math::cyl_neumann(0, x); }

Complex green2d(double omega, double r) {
  Require(omega > 0.0, "green2d: omega must be positive");
  Require(r > 0.0, "green2d: kernel is singular at r = 0");
  const double z = omega * r;
  // (i/4) (J0 + i Y0)
  return Complex(-0.25 * bessel_y0(z), 0.25 * bessel_j0(z));
}

const GaussRule& gauss_legendre(int q) {
  Require(q >= 1, "gauss_legendre: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;

  GaussRule rule;
  rule.node.resize(q);
  rule.weight.resize(q);
  for (int k = 0; k < q; ++k) {
    // Chebyshev-like initial guess for the k-th root of P_q, then Newton.
    double x = std::cos(M_PI * (k + 0.75) / (q + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= q; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.node[q - 1 - k] = x;  // ascending order
    rule.weight[q - 1 - k] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return cache.emplace(q, std::move(rule)).first->second;
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209;

// B(z) := (pi/2) * [Y0(z) - (2/pi)(ln(z/2) + gamma) J0(z)]
//       = sum_{k>=1} (-1)^{k+1} H_k (z^2/4)^k / (k!)^2, entire in z^2.
double analytic_y0_remainder(double z2_over_4) {
  double term = 1.0;  // (z^2/4)^k / (k!)^2 running factor
  double hk = 0.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 24; ++k) {
    term *= z2_over_4 / (static_cast<double>(k) * k);
    hk += 1.0 / k;
    sum += sign * hk * term;
    sign = -sign;
  }
  return sum;
}

// Smooth companion E with G(r) = -(1/2pi) ln(r) J0(omega r) + E(r).
Complex smooth_green_part(double omega, double r) {
  const double z = omega * r;
  const double j0 = bessel_j0(z);
  const Complex c0(-(std::log(0.5 * omega) + kEulerGamma) / (2.0 * M_PI),
                   0.25);
  return c0 * j0 - analytic_y0_remainder(0.25 * z * z) / (2.0 * M_PI);
}

// W(R) = int_0^R (J0(omega r) - 1) ln(r) r dr via the J0 power series;
// each term integrates in closed form.
double log_weighted_bessel_tail(double omega, double R) {
  const double logR = std::log(R);
  double ck = 1.0;  // (-1)^k (omega/2)^{2k} / (k!)^2 running factor
  double r2k = R * R;
  double sum = 0.0;
  for (int k = 1; k <= 28; ++k) {
    ck *= -(0.25 * omega * omega) / (static_cast<double>(k) * k);
    r2k *= R * R;  // R^{2k+2}
    const double p = 2.0 * k + 2.0;
    sum += ck * r2k * (logR / p - 1.0 / (p * p));
  }
  return sum;
}

Complex central_weight_at_orders(double omega, double h, int q_theta,
                                 int q_cell) {
  const double a = 0.5 * h;

  // Closed form: int_cell ln|y| dy.
  const double log_part =
      4.0 * a * a * (std::log(a) + 0.5 * std::log(2.0) + 0.25 * M_PI - 1.5);

  // int_cell (J0(omega|y|) - 1) ln|y| dy over eight congruent triangles,
  // each theta in [0, pi/4]: the [-1, 1] Gauss rule carries total weight 2,
  // so the jacobian per triangle is (pi/4)/2 = pi/8.
  const GaussRule& gt = gauss_legendre(q_theta);
  double tail = 0.0;
  for (int k = 0; k < q_theta; ++k) {
    const double theta = 0.125 * M_PI * (gt.node[k] + 1.0);
    const double R = a / std::cos(theta);
    tail += gt.weight[k] * log_weighted_bessel_tail(omega, R);
  }
  tail *= 8.0 * 0.125 * M_PI;

  // Smooth part by tensor quadrature on one quadrant (E is even per axis).
  const GaussRule& gc = gauss_legendre(q_cell);
  Complex smooth(0.0, 0.0);
  for (int k1 = 0; k1 < q_cell; ++k1) {
    const double y1 = 0.5 * a * (gc.node[k1] + 1.0);
    for (int k2 = 0; k2 < q_cell; ++k2) {
      const double y2 = 0.5 * a * (gc.node[k2] + 1.0);
      const double w = gc.weight[k1] * gc.weight[k2];
      smooth += w * smooth_green_part(omega, std::hypot(y1, y2));
    }
  }
  smooth *= 4.0 * (0.5 * a) * (0.5 * a);

  return -(log_part + tail) / (2.0 * M_PI) + smooth;
}

}  // namespace

Complex central_weight(double omega, double h) {
  Require(omega > 0.0 && h > 0.0, "central_weight: omega, h must be positive");
  Require(omega * h < M_PI,
          "central_weight: requires omega*h < pi (at least two points per "
          "wavelength)");
  const Complex coarse = central_weight_at_orders(omega, h, 24, 16);
  const Complex fine = central_weight_at_orders(omega, h, 48, 32);
  if (std::abs(fine - coarse) > 1e-10 * std::abs(fine))
    throw NumericalError("central_weight: quadrature failed to converge");
  return fine;
}

}  // namespace lsw
