#include "lsw/velocity.hpp"

#include <cmath>

namespace lsw {

double SeededRng::uniform() {
  const std::uint64_t x = engine_();
  return (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
}

double SeededRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

namespace {

PerturbationField from_velocity(const GridSpec& g, const RealVector& c) {
  PerturbationField f;
  f.n = g.n;
  f.m.resize(c.size());
  f.m_min = f.m_max = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    Require(c[i] > 0.0, "velocity: c(x) must be positive everywhere");
    double m = 1.0 - 1.0 / (c[i] * c[i]);
    if (std::abs(m) < 1e-12) m = 0.0;
    f.m[i] = m;
    f.m_min = std::min(f.m_min, m);
    f.m_max = std::max(f.m_max, m);
  }
  return f;
}

}  // namespace

PerturbationField homogeneous_medium(const GridSpec& g) {
  PerturbationField f;
  f.n = g.n;
  f.m.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);
  return f;
}

PerturbationField gaussian_velocity(
    const GridSpec& g, const std::vector<std::array<double, 2>>& centers,
    const RealVector& amplitudes, const RealVector& widths) {
  Require(centers.size() == amplitudes.size() &&
              centers.size() == widths.size(),
          "gaussian_velocity: centers/amplitudes/widths size mismatch");
  for (double w : widths)
    Require(w > 0.0, "gaussian_velocity: widths must be positive");
  const int n = g.n;
  const double h = g.h();
  RealVector c(static_cast<std::size_t>(n) * n, 1.0);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const double inv2w2 = 1.0 / (2.0 * widths[k] * widths[k]);
    for (int i1 = 1; i1 <= n; ++i1) {
      const double dx1 = i1 * h - centers[k][0];
      for (int i2 = 1; i2 <= n; ++i2) {
        const double dx2 = i2 * h - centers[k][1];
        c[static_cast<std::size_t>(i1 - 1) * n + (i2 - 1)] +=
            amplitudes[k] * std::exp(-(dx1 * dx1 + dx2 * dx2) * inv2w2);
      }
    }
  }
  return from_velocity(g, c);
}

PerturbationField random_gaussian_velocity(const GridSpec& g, int count,
                                           std::uint64_t seed,
                                           double amplitude, double width) {
  Require(count >= 1, "random_gaussian_velocity: count must be >= 1");
  SeededRng rng(seed);
  std::vector<std::array<double, 2>> centers(count);
  // Keep bumps well inside the box so the profile decays below truncation
  // level before the boundary.
  const double lo = 0.2, hi = 0.8;
  for (auto& ctr : centers) {
    ctr[0] = lo + (hi - lo) * rng.uniform();
    ctr[1] = lo + (hi - lo) * rng.uniform();
  }
  return gaussian_velocity(g, centers, RealVector(count, amplitude),
                           RealVector(count, width));
}

PerturbationField random_velocity(const GridSpec& g, std::uint64_t seed,
                                  double contrast,
                                  double correlation_length) {
  Require(contrast > 0.0 && contrast < 1.0,
          "random_velocity: contrast must lie in (0, 1)");
  Require(correlation_length > 0.0,
          "random_velocity: correlation length must be positive");
  const int n = g.n;
  const double h = g.h();
  const std::size_t nn = static_cast<std::size_t>(n) * n;

  SeededRng rng(seed);
  RealVector noise(nn);
  for (auto& v : noise) v = rng.normal();

  // Separable Gaussian low-pass.  Zero padding at the edges is fine: the
  // window below forces the field to one near the boundary anyway.
  const int rad =
      std::min(n - 1, static_cast<int>(std::ceil(4.0 * correlation_length / h)));
  RealVector w(2 * rad + 1);
  double wsum = 0.0;
  for (int k = -rad; k <= rad; ++k) {
    w[k + rad] = std::exp(-0.5 * (k * h) * (k * h) /
                          (correlation_length * correlation_length));
    wsum += w[k + rad];
  }
  for (auto& x : w) x /= wsum;

  RealVector tmp(nn, 0.0), smooth(nn, 0.0);
  for (int i1 = 0; i1 < n; ++i1)
    for (int i2 = 0; i2 < n; ++i2) {
      double s = 0.0;
      for (int k = std::max(-rad, -i2); k <= std::min(rad, n - 1 - i2); ++k)
        s += w[k + rad] * noise[static_cast<std::size_t>(i1) * n + (i2 + k)];
      tmp[static_cast<std::size_t>(i1) * n + i2] = s;
    }
  for (int i2 = 0; i2 < n; ++i2)
    for (int i1 = 0; i1 < n; ++i1) {
      double s = 0.0;
      for (int k = std::max(-rad, -i1); k <= std::min(rad, n - 1 - i1); ++k)
        s += w[k + rad] * tmp[static_cast<std::size_t>(i1 + k) * n + i2];
      smooth[static_cast<std::size_t>(i1) * n + i2] = s;
    }

  // Cubic ramp from 0 at the boundary to 1 at distance 0.1.
  const double margin = 0.1;
  auto window1d = [&](double x) {
    const double d = std::min(x, 1.0 - x) / margin;
    if (d >= 1.0) return 1.0;
    if (d <= 0.0) return 0.0;
    return d * d * (3.0 - 2.0 * d);
  };

  double peak = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    const double w1 = window1d((i1 + 1) * h);
    for (int i2 = 0; i2 < n; ++i2) {
      double& v = smooth[static_cast<std::size_t>(i1) * n + i2];
      v *= w1 * window1d((i2 + 1) * h);
      peak = std::max(peak, std::abs(v));
    }
  }
  Require(peak > 0.0, "random_velocity: degenerate noise field");

  RealVector c(nn);
  for (std::size_t i = 0; i < nn; ++i)
    c[i] = 1.0 + contrast * smooth[i] / peak;
  return from_velocity(g, c);
}

}  // namespace lsw
