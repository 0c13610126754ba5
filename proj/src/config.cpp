#include "lsw/config.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

namespace lsw {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  Require(obj.is_object(), where + " must be a JSON object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key()))
      throw InvalidArgument("unknown key \"" + it.key() + "\" in " + where);
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  Require(v.is_number(), std::string(key) + " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  Require(v.is_number_integer(), std::string(key) + " must be an integer");
  return v.get<int>();
}

std::uint64_t get_seed(const json& obj, const char* key,
                       std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  Require(v.is_number_integer() && v.get<std::int64_t>() >= 0,
          std::string(key) + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

VelocityConfig parse_velocity(const json& obj) {
  check_keys(obj, "velocity",
             {"kind", "centers", "amplitudes", "widths", "count", "seed",
              "amplitude", "width", "contrast", "correlation_length"});
  Require(obj.contains("kind"), "velocity.kind is required");
  const std::string kind = obj.at("kind").get<std::string>();

  VelocityConfig vc;
  if (kind == "free") {
    vc.kind = VelocityConfig::Kind::kFree;
    check_keys(obj, "velocity (kind=free)", {"kind"});
  } else if (kind == "gaussian") {
    vc.kind = VelocityConfig::Kind::kGaussian;
    check_keys(obj, "velocity (kind=gaussian)",
               {"kind", "centers", "amplitudes", "widths"});
    Require(obj.contains("centers") && obj.contains("amplitudes") &&
                obj.contains("widths"),
            "gaussian velocity needs centers, amplitudes, widths");
    for (const auto& c : obj.at("centers")) {
      Require(c.is_array() && c.size() == 2, "each center must be [x1, x2]");
      vc.centers.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    vc.amplitudes = obj.at("amplitudes").get<std::vector<double>>();
    vc.widths = obj.at("widths").get<std::vector<double>>();
    Require(vc.centers.size() == vc.amplitudes.size() &&
                vc.centers.size() == vc.widths.size() && !vc.centers.empty(),
            "centers, amplitudes, widths must have equal nonzero length");
  } else if (kind == "random_gaussians") {
    vc.kind = VelocityConfig::Kind::kRandomGaussians;
    check_keys(obj, "velocity (kind=random_gaussians)",
               {"kind", "count", "seed", "amplitude", "width"});
    vc.count = get_int(obj, "count", 32);
    vc.seed = get_seed(obj, "seed", 7);
    vc.amplitude = get_number(obj, "amplitude", -0.30);
    vc.width = get_number(obj, "width", 0.02);
    Require(vc.count > 0 && vc.width > 0, "count and width must be positive");
  } else if (kind == "random") {
    vc.kind = VelocityConfig::Kind::kRandom;
    check_keys(obj, "velocity (kind=random)",
               {"kind", "seed", "contrast", "correlation_length"});
    vc.seed = get_seed(obj, "seed", 7);
    vc.contrast = get_number(obj, "contrast", 0.4);
    vc.correlation_length = get_number(obj, "correlation_length", 0.05);
  } else {
    throw InvalidArgument("unknown velocity kind \"" + kind + "\"");
  }
  return vc;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") +
                          e.what());
  }
  check_keys(root, "config",
             {"omega_over_2pi", "ppw", "b", "c_pml", "threads",
              "incident_direction", "velocity", "solver"});

  RunConfig rc;
  rc.omega_over_2pi = get_number(root, "omega_over_2pi", rc.omega_over_2pi);
  rc.ppw = get_number(root, "ppw", rc.ppw);
  rc.b = get_int(root, "b", rc.b);
  rc.c_pml = get_number(root, "c_pml", rc.c_pml);
  rc.threads = get_int(root, "threads", rc.threads);
  Require(rc.omega_over_2pi > 0, "omega_over_2pi must be positive");
  Require(rc.ppw > 0, "ppw must be positive");
  Require(rc.threads >= 1, "threads must be >= 1");

  if (root.contains("incident_direction")) {
    const json& d = root.at("incident_direction");
    Require(d.is_array() && d.size() == 2,
            "incident_direction must be [d1, d2]");
    rc.incident_direction = {d[0].get<double>(), d[1].get<double>()};
    const double len = std::hypot(rc.incident_direction[0],
                                  rc.incident_direction[1]);
    Require(len > 0, "incident_direction must be nonzero");
    rc.incident_direction[0] /= len;
    rc.incident_direction[1] /= len;
  }

  if (root.contains("velocity")) rc.velocity = parse_velocity(root.at("velocity"));

  if (root.contains("solver")) {
    const json& s = root.at("solver");
    check_keys(s, "solver", {"tol", "restart", "max_outer"});
    rc.solver.tol = get_number(s, "tol", rc.solver.tol);
    rc.solver.restart = get_int(s, "restart", rc.solver.restart);
    rc.solver.max_outer = get_int(s, "max_outer", rc.solver.max_outer);
    Require(rc.solver.tol > 0 && rc.solver.restart >= 1 &&
                rc.solver.max_outer >= 1,
            "solver parameters out of range");
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

VelocityConfig velocity_preset(const std::string& name) {
  VelocityConfig vc;
  if (name == "free") {
    vc.kind = VelocityConfig::Kind::kFree;
  } else if (name == "focusing-gaussian" || name == "defocusing-gaussian") {
    vc.kind = VelocityConfig::Kind::kGaussian;
    vc.centers = {{0.5, 0.5}};
    vc.amplitudes = {name == "focusing-gaussian" ? -0.25 : 0.25};
    vc.widths = {0.1};
  } else if (name == "random-gaussians") {
    // Amplitude chosen so the overlapping bumps produce strong multiple
    // scattering (the hardest of the four stock media).
    vc.kind = VelocityConfig::Kind::kRandomGaussians;
    vc.count = 32;
    vc.seed = 7;
    vc.amplitude = -0.30;
    vc.width = 0.02;
  } else if (name == "random-smooth") {
    vc.kind = VelocityConfig::Kind::kRandom;
    vc.seed = 7;
    vc.contrast = 0.4;
    vc.correlation_length = 0.05;
  } else {
    throw InvalidArgument("unknown velocity preset \"" + name + "\"");
  }
  return vc;
}

PerturbationField build_velocity(const GridSpec& g, const VelocityConfig& vc) {
  switch (vc.kind) {
    case VelocityConfig::Kind::kFree:
      return homogeneous_medium(g);
    case VelocityConfig::Kind::kGaussian:
      return gaussian_velocity(g, vc.centers, vc.amplitudes, vc.widths);
    case VelocityConfig::Kind::kRandomGaussians:
      return random_gaussian_velocity(g, vc.count, vc.seed, vc.amplitude,
                                      vc.width);
    case VelocityConfig::Kind::kRandom:
      return random_velocity(g, vc.seed, vc.contrast, vc.correlation_length);
  }
  throw InvalidArgument("unhandled velocity kind");
}

GridSpec grid_from_config(const RunConfig& rc) {
  return make_grid(2.0 * std::numbers::pi * rc.omega_over_2pi, rc.ppw, rc.b,
                   rc.c_pml);
}

}  // namespace lsw
