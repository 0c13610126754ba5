#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "lsw/grid.hpp"
#include "lsw/types.hpp"

namespace lsw {

// Scattering profile m = 1 - 1/c(x)^2 sampled on the interior lattice
// {1..n}^2 (m vanishes identically outside the unit box by construction).
// Entries with |m| < 1e-12 are truncated to exactly zero so that "no
// perturbation" is representable exactly.
struct PerturbationField {
  int n = 0;
  RealVector m;       // n^2 entries, row-major
  double m_min = 0.0; // pointwise bounds over the lattice (0 included,
  double m_max = 0.0; // since m = 0 outside the support)

  double max_abs() const { return std::max(std::abs(m_min), std::abs(m_max)); }
};

PerturbationField homogeneous_medium(const GridSpec& g);

// c(x) = 1 + sum_k amp[k] * exp(-|x - center[k]|^2 / (2 width[k]^2)).
// Rejects any profile with c <= 0 somewhere on the lattice.
PerturbationField gaussian_velocity(const GridSpec& g,
                                    const std::vector<std::array<double, 2>>& centers,
                                    const RealVector& amplitudes,
                                    const RealVector& widths);

// `count` identical bumps with centers drawn uniformly from [0.2, 0.8]^2
// using the seeded generator below.
PerturbationField random_gaussian_velocity(const GridSpec& g, int count,
                                           std::uint64_t seed, double amplitude,
                                           double width);

// Smooth random medium: white noise filtered by a separable Gaussian of the
// given correlation length, windowed to one at the boundary of the box, and
// scaled so that max |c - 1| = contrast.
PerturbationField random_velocity(const GridSpec& g, std::uint64_t seed,
                                  double contrast, double correlation_length);

// Uniform draws in (0,1) with a fully pinned-down mapping from the 64-bit
// mt19937_64 stream: u = ((x >> 11) + 0.5) * 2^-53.  Normals come from the
// Box-Muller map.  (Library distributions are avoided on purpose: their
// streams are implementation-defined, and seeds here must mean the same
// field everywhere.)
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace lsw
