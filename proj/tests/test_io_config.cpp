#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <json.hpp>

#include "lsw/config.hpp"
#include "lsw/field_io.hpp"
#include "lsw/velocity.hpp"

using namespace lsw;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("lsw_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("field files round-trip bit for bit") {
  TempDir tmp;
  const int nx = 13, ny = 7;
  SeededRng rng(2);
  ComplexVector data(std::size_t(nx) * ny);
  for (auto& z : data) z = Complex(rng.normal(), rng.normal());

  FieldMeta meta;
  meta.nx = nx;
  meta.ny = ny;
  meta.index_set = "interior";
  meta.omega = 2.0 * std::numbers::pi * 4;
  meta.h = 1.0 / 32;

  const std::string path = tmp.file("u.lsf");
  write_field(path, meta, data);

  FieldMeta back;
  ComplexVector read = read_field(path, back);
  CHECK(read == data);  // exact: doubles pass through untouched
  CHECK(back.nx == nx);
  CHECK(back.ny == ny);
  CHECK(back.index_set == "interior");
  CHECK(back.omega == meta.omega);
  CHECK(back.h == meta.h);

  // the header is honest about the layout
  std::ifstream in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  CHECK(std::string(magic, 4) == "LSF1");
}

TEST_CASE("malformed field files are rejected") {
  TempDir tmp;
  FieldMeta meta;
  meta.nx = meta.ny = 2;
  ComplexVector data(4, Complex(1, -1));
  const std::string path = tmp.file("u.lsf");
  write_field(path, meta, data);

  // wrong magic
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXX", 4);
  }
  FieldMeta m2;
  CHECK_THROWS_AS(read_field(path, m2), NumericalError);

  // truncated payload
  write_field(path, meta, data);
  fs::resize_file(path, fs::file_size(path) - 8);
  CHECK_THROWS_AS(read_field(path, m2), NumericalError);

  CHECK_THROWS_AS(read_field(tmp.file("missing.lsf"), m2), NumericalError);
  CHECK_THROWS_AS(write_field(path, meta, ComplexVector(3)), InvalidArgument);
}

TEST_CASE("image dumps carry their scale in a sidecar") {
  TempDir tmp;
  const int nx = 3, ny = 2;
  RealVector values{0.0, 1.0, 2.0, 3.0, 4.0, 10.0};
  const std::string path = tmp.file("m.pgm");
  write_pgm(path, nx, ny, values);

  std::ifstream in(path, std::ios::binary);
  std::string magic, dims;
  std::getline(in, magic);
  CHECK(magic == "P5");

  nlohmann::json side;
  std::ifstream(path + ".json") >> side;
  CHECK(side.at("min").get<double>() == 0.0);
  CHECK(side.at("max").get<double>() == 10.0);
  CHECK(side.at("nx").get<int>() == nx);
  CHECK(side.at("ny").get<int>() == ny);
}

TEST_CASE("run configuration parsing") {
  RunConfig rc = parse_run_config(R"({
    "omega_over_2pi": 32,
    "ppw": 6,
    "b": 10,
    "c_pml": 12.5,
    "threads": 2,
    "incident_direction": [1.0, 0.0],
    "solver": {"tol": 1e-8, "restart": 30, "max_outer": 10},
    "velocity": {"kind": "gaussian",
                 "centers": [[0.4, 0.6]],
                 "amplitudes": [-0.2],
                 "widths": [0.1]}
  })");
  CHECK(rc.omega_over_2pi == 32.0);
  CHECK(rc.ppw == 6.0);
  CHECK(rc.b == 10);
  CHECK(rc.c_pml == 12.5);
  CHECK(rc.threads == 2);
  CHECK(rc.incident_direction[0] == 1.0);
  CHECK(rc.solver.tol == 1e-8);
  CHECK(rc.solver.restart == 30);
  CHECK(rc.solver.max_outer == 10);
  CHECK(rc.velocity.kind == VelocityConfig::Kind::kGaussian);
  REQUIRE(rc.velocity.centers.size() == 1);
  CHECK(rc.velocity.amplitudes[0] == -0.2);

  // defaults hold when keys are omitted
  RunConfig d = parse_run_config(R"({"velocity": {"kind": "free"}})");
  CHECK(d.omega_over_2pi == 16.0);
  CHECK(d.ppw == 8.0);
  CHECK(d.b == 8);
  CHECK(d.threads == 1);
  CHECK(d.incident_direction[1] == -1.0);
  CHECK(d.velocity.kind == VelocityConfig::Kind::kFree);
}

TEST_CASE("unknown configuration keys are rejected by name") {
  // top level
  try {
    parse_run_config(R"({"omega": 3})");
    FAIL("expected a rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("omega") != std::string::npos);
  }
  // inside velocity blocks (per-kind whitelists)
  CHECK_THROWS_AS(
      parse_run_config(
          R"({"velocity": {"kind": "random", "seed": 1, "contrast": 0.2,
              "correlation_length": 0.05, "width": 0.3}})"),
      InvalidArgument);
  CHECK_THROWS_AS(
      parse_run_config(R"({"solver": {"tolerance": 1e-6}})"), InvalidArgument);
  // malformed json
  CHECK_THROWS_AS(parse_run_config("{"), InvalidArgument);
  // bad values
  CHECK_THROWS_AS(parse_run_config(R"({"ppw": -1})"), InvalidArgument);
  CHECK_THROWS_AS(
      parse_run_config(R"({"velocity": {"kind": "nonsense"}})"),
      InvalidArgument);
}

TEST_CASE("config file loading") {
  TempDir tmp;
  const std::string path = tmp.file("run.json");
  {
    std::ofstream out(path);
    out << R"({"omega_over_2pi": 4, "velocity": {"kind": "free"}})";
  }
  RunConfig rc = load_run_config(path);
  CHECK(rc.omega_over_2pi == 4.0);
  CHECK_THROWS_AS(load_run_config(tmp.file("nope.json")), InvalidArgument);
}

TEST_CASE("medium presets are pinned") {
  VelocityConfig f = velocity_preset("focusing-gaussian");
  CHECK(f.kind == VelocityConfig::Kind::kGaussian);
  REQUIRE(f.centers.size() == 1);
  CHECK(f.centers[0][0] == 0.5);
  CHECK(f.centers[0][1] == 0.5);
  CHECK(f.amplitudes[0] == -0.25);
  CHECK(f.widths[0] == 0.1);

  VelocityConfig d = velocity_preset("defocusing-gaussian");
  CHECK(d.amplitudes[0] == 0.25);

  VelocityConfig rg = velocity_preset("random-gaussians");
  CHECK(rg.kind == VelocityConfig::Kind::kRandomGaussians);
  CHECK(rg.count == 32);
  CHECK(rg.seed == 7);
  CHECK(rg.amplitude == -0.30);
  CHECK(rg.width == 0.02);

  VelocityConfig rs = velocity_preset("random-smooth");
  CHECK(rs.kind == VelocityConfig::Kind::kRandom);
  CHECK(rs.seed == 7);
  CHECK(rs.contrast == 0.4);
  CHECK(rs.correlation_length == 0.05);

  VelocityConfig fr = velocity_preset("free");
  CHECK(fr.kind == VelocityConfig::Kind::kFree);

  CHECK_THROWS_AS(velocity_preset("warp-drive"), InvalidArgument);
}

TEST_CASE("grids derive from the run configuration") {
  RunConfig rc;
  rc.omega_over_2pi = 16.0;
  rc.ppw = 8.0;
  rc.b = 8;
  rc.c_pml = 10.0;
  GridSpec g = grid_from_config(rc);
  CHECK(g.n == 127);
  CHECK(g.b == 8);
  CHECK(g.omega == doctest::Approx(2.0 * std::numbers::pi * 16).epsilon(1e-15));

  // the built medium honors the preset
  auto field = build_velocity(g, velocity_preset("free"));
  CHECK(field.max_abs() == 0.0);
}
