#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lsw/gmres.hpp"
#include "lsw/grid.hpp"
#include "lsw/velocity.hpp"

namespace lsw {

// Description of the squared-slowness perturbation, either analytic or
// pseudo-randomly generated from a fixed seed.
struct VelocityConfig {
  enum class Kind { kFree, kGaussian, kRandomGaussians, kRandom };
  Kind kind = Kind::kFree;

  // kGaussian
  std::vector<std::array<double, 2>> centers;
  std::vector<double> amplitudes;
  std::vector<double> widths;

  // kRandomGaussians
  int count = 0;
  double amplitude = 0.0;
  double width = 0.0;

  // kRandom
  double contrast = 0.0;
  double correlation_length = 0.0;

  // shared by the random kinds
  std::uint64_t seed = 0;
};

struct RunConfig {
  double omega_over_2pi = 16.0;
  double ppw = 8.0;
  int b = 8;
  double c_pml = 10.0;
  int threads = 1;
  std::array<double, 2> incident_direction = {0.0, -1.0};  // downward
  VelocityConfig velocity;
  SolverConfig solver;
};

// Parses a JSON document; every key must be recognized, otherwise an
// InvalidArgument describing the offending key is thrown.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Named medium presets used by the examples and the acceptance runs.
//   "focusing-gaussian"    one Gaussian bump, amplitude -0.25, width 0.1
//   "defocusing-gaussian"  one Gaussian bump, amplitude +0.25, width 0.1
//   "random-gaussians"     32 random bumps, amplitude -0.30, width 0.02
//   "random-smooth"        filtered noise, contrast 0.4, corr. length 0.05
VelocityConfig velocity_preset(const std::string& name);

PerturbationField build_velocity(const GridSpec& g, const VelocityConfig& vc);

GridSpec grid_from_config(const RunConfig& rc);

}  // namespace lsw
